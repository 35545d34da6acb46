#ifndef SUPERLENS_SWEEP_HPP
#define SUPERLENS_SWEEP_HPP

#include <optional>
#include <vector>

#include "superlens/objective.hpp"
#include "superlens/solver.hpp"

namespace superlens
{

enum class SweepMode
{
  forward,               // state solves only (objective value)
  forward_and_adjoint,   // plus adjoint solves and per-cell gradient densities
};

struct AlphaResult
{
  FloquetSolution forward;
  std::optional<FloquetSolution> adjoint;
  ModalTrace residual;
  double mismatch = 0.0;               // 1/2 ||F - q||^2
  std::vector<Complex> density;        // omega^2 int_cell u conj(w), empty in forward mode
};

struct SweepResult
{
  std::vector<AlphaResult> per_alpha;
  double objective = 0.0;
  std::vector<Complex> gradient;  // sum_k folded_weight(k) density_k, empty in forward mode
};

// Work for one quadrature point: assemble, factor, solve, and (in adjoint mode)
// reuse the factorization for the adjoint solve.
AlphaResult solve_alpha(const DesignField &design, const ProblemSetup &setup, int k,
                        SweepMode mode);

// Fixed-order compensated reduction over alpha; independent of how the per-alpha
// results were produced.
void reduce_sweep(SweepResult &result, const ProblemSetup &setup, SweepMode mode);

namespace kernels
{

// Reference implementation: plain loop over alpha.
SweepResult sweep_serial(const DesignField &design, const ProblemSetup &setup, SweepMode mode);

// OpenMP fan-out over alpha with `jobs` threads; results are bit-identical to
// sweep_serial because each alpha owns its workspace and the reduction order is fixed.
SweepResult sweep_parallel(const DesignField &design, const ProblemSetup &setup, SweepMode mode,
                           int jobs);

}  // namespace kernels

SweepResult sweep(const DesignField &design, const ProblemSetup &setup, SweepMode mode,
                  const ExecutionPolicy &policy = {});

}  // namespace superlens

#endif  // SUPERLENS_SWEEP_HPP
