#ifndef SUPERLENS_ADJOINT_HPP
#define SUPERLENS_ADJOINT_HPP

#include <vector>

#include "superlens/objective.hpp"
#include "superlens/solver.hpp"

namespace superlens
{

// L2 gradient G of J with respect to the per-cell permittivity:
//   DJ(rho)(d rho) = Re sum_cells d rho(c) G(c).
struct GradientField
{
  Grid grid{4, 2, 1.0};
  std::vector<Complex> values;
  std::vector<double> alphas;

  double max_abs() const;
  double norm() const;
  double asymmetry() const;
};

//
// Discrete adjoint: solves A^H w = psi_load where psi_load(k) = 2pi sum_n psi_n conj(E(n,k))
// on the lower boundary nodes. With this load, <dF, psi>_{L2(y=-b)} = omega^2 int d rho u conj(w).
//
FloquetSolution solve_adjoint(const FactoredSystem &factored, const ModalTrace &psi);
FloquetSolution solve_adjoint(const AssembledSystem &system, const ModalTrace &psi);

// omega^2 int_cell u conj(w) for every cell, in cell order.
std::vector<Complex> gradient_density(const FloquetSolution &forward,
                                      const FloquetSolution &adjoint);

// G = sum_k folded_weight(k) omega^2 int u_k conj(w_k). This is the exact derivative of
// the folded discrete objective for any design.
GradientField gradient(const DesignField &design, const std::vector<FloquetSolution> &forward,
                       const std::vector<FloquetSolution> &adjoint,
                       const AlphaQuadrature &quadrature);

// Mirror average of G. For an x-symmetric design this is the gradient of the
// objective integrated over the full Brillouin zone.
GradientField symmetrize_gradient(GradientField g);

// J, raw folded gradient, and the symmetrized gradient in one sweep.
struct ObjectiveAndGradient
{
  double value = 0.0;
  GradientField raw;
  GradientField symmetric;
  std::vector<ModalTrace> residuals;
};

ObjectiveAndGradient evaluate_with_gradient(const DesignField &design, const ProblemSetup &setup,
                                            const ExecutionPolicy &policy = {});

// Re sum_c direction(c) G(c).
double directional_derivative(const GradientField &g, const std::vector<Complex> &direction);

struct FdRow
{
  double step = 0.0;
  double finite_difference = 0.0;
  double adjoint = 0.0;
  double relative_error = 0.0;
};

struct FdReport
{
  std::vector<FdRow> rows;

  // Smallest relative error over all rows.
  double best_error() const;
  // True if some consecutive pair of rows above `floor` shows an error ratio
  // consistent with (step ratio)^2 within [ratio_lo, ratio_hi] times.
  bool second_order(double floor, double ratio_lo = 0.25, double ratio_hi = 4.0) const;
};

// Central differences (J(rho + t d) - J(rho - t d)) / 2t against the adjoint
// directional derivative of the raw folded gradient. No projection is applied.
FdReport fd_gradient_check(const DesignField &design, const std::vector<Complex> &direction,
                           const std::vector<double> &steps, const ProblemSetup &setup,
                           const ExecutionPolicy &policy = {});

}  // namespace superlens

#endif  // SUPERLENS_ADJOINT_HPP
