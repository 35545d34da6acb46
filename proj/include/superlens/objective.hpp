#ifndef SUPERLENS_OBJECTIVE_HPP
#define SUPERLENS_OBJECTIVE_HPP

#include <vector>

#include "superlens/domain.hpp"
#include "superlens/dtn.hpp"
#include "superlens/parallel.hpp"
#include "superlens/source.hpp"

namespace superlens
{

//
// Midpoint rule on (0, 1/2]. Negative alpha is folded in through the x-mirror
// symmetry of the source and of the design, hence symmetry_factor = 2.
//
struct AlphaQuadrature
{
  std::vector<double> points;
  std::vector<double> weights;
  double symmetry_factor = 2.0;

  int size() const { return static_cast<int>(points.size()); }
  double total_measure() const;
  // Weight of point k in the full integral over [-1/2, 1/2].
  double folded_weight(int k) const { return symmetry_factor * weights[k]; }
};

// alpha_k = (k - 1/2) / (2 count), weight 1 / (2 count). A point closer than the
// Wood guard to some (n + alpha)^2 = omega^2, |n| <= n_trunc, is nudged away.
AlphaQuadrature make_quadrature(int count, double omega, int n_trunc);

struct PhysicalParameters
{
  double omega = 1.0;
  double h = 2.5;   // source height above the slab
  double h1 = 2.5;  // image depth below the slab
};

// Immutable per-alpha data shared by every solve on one grid.
struct AlphaProblem
{
  double alpha = 0.0;
  double weight = 0.0;  // folded weight
  DtnMatrix dtn;
  ModalTrace incident;  // f_alpha
  ModalTrace incident_normal;  // g_alpha
  ModalTrace target;    // q_alpha
};

class ProblemSetup
{
public:
  ProblemSetup(const Grid &grid, PhysicalParameters physics, AlphaQuadrature quadrature,
               int n_trunc);

  const Grid &grid() const { return grid_; }
  const PhysicalParameters &physics() const { return physics_; }
  double omega() const { return physics_.omega; }
  const AlphaQuadrature &quadrature() const { return quadrature_; }
  int n_trunc() const { return n_trunc_; }
  const std::vector<AlphaProblem> &alphas() const { return alphas_; }

  // Rebuild the DtN blocks with reversed mode exponents (fault injection).
  void corrupt_beta_sign();

private:
  Grid grid_;
  PhysicalParameters physics_;
  AlphaQuadrature quadrature_;
  int n_trunc_;
  std::vector<AlphaProblem> alphas_;
};

struct ObjectiveValue
{
  double value = 0.0;
  std::vector<double> per_alpha;      // 1/2 ||F - q||^2, unweighted
  std::vector<ModalTrace> residuals;  // F(rho, alpha) - q_alpha
};

// J = 1/2 sum_k folded_weight(k) ||F(rho, alpha_k) - q_alpha_k||^2_{L2(y=-b)}.
ObjectiveValue evaluate_J(const DesignField &design, const ProblemSetup &setup,
                          const ExecutionPolicy &policy = {});

// Same reduction from precomputed residual traces.
double objective_from_residuals(const std::vector<ModalTrace> &residuals,
                                const AlphaQuadrature &quadrature);

}  // namespace superlens

#endif  // SUPERLENS_OBJECTIVE_HPP
