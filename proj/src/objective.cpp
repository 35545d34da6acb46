#include "superlens/objective.hpp"

#include <cmath>
#include <numeric>

#include "superlens/sweep.hpp"

namespace superlens
{

namespace
{

bool clear_of_wood(double alpha, double omega, int n_trunc)
{
  for (int n = -n_trunc; n <= n_trunc; n++)
  {
    if (wood_distance(n + alpha, omega) < kWoodGuard)
    {
      return false;
    }
  }
  return true;
}

}  // namespace

double AlphaQuadrature::total_measure() const
{
  return symmetry_factor * std::accumulate(weights.begin(), weights.end(), 0.0);
}

AlphaQuadrature make_quadrature(int count, double omega, int n_trunc)
{
  if (count < 1)
  {
    throw ConfigError("alpha quadrature needs at least one point");
  }
  AlphaQuadrature q;
  const double w = 1.0 / (2.0 * count);
  for (int k = 1; k <= count; k++)
  {
    const double a0 = (k - 0.5) / (2.0 * count);
    double a = a0;
    // Smallest symmetric nudge that clears every anomaly; the guard is relative
    // in (n + alpha)^2 so a step of 1e-8 omega always suffices after a few tries.
    for (int s = 1; !clear_of_wood(a, omega, n_trunc); s++)
    {
      const double delta = ((s + 1) / 2) * 1e-8 * omega;
      a = (s % 2 == 1) ? a0 + delta : a0 - delta;
    }
    q.points.push_back(a);
    q.weights.push_back(w);
  }
  return q;
}

ProblemSetup::ProblemSetup(const Grid &grid, PhysicalParameters physics,
                           AlphaQuadrature quadrature, int n_trunc)
  : grid_(grid), physics_(physics), quadrature_(std::move(quadrature)), n_trunc_(n_trunc)
{
  if (!(physics_.omega > 0.0) || !(physics_.h > 0.0) || !(physics_.h1 > 0.0))
  {
    throw ConfigError("omega, h and h1 must all be positive");
  }
  check_truncation(grid_, physics_.omega, n_trunc_);
  alphas_.reserve(quadrature_.size());
  for (int k = 0; k < quadrature_.size(); k++)
  {
    const double a = quadrature_.points[k];
    AlphaProblem p;
    p.alpha = a;
    p.weight = quadrature_.folded_weight(k);
    p.dtn = build_dtn(a, physics_.omega, grid_, n_trunc_, DtnFlavor::forward);
    p.incident = incident_dirichlet_trace(a, physics_.omega, physics_.h, n_trunc_);
    p.incident_normal = incident_neumann_trace(a, physics_.omega, physics_.h, n_trunc_);
    p.target = target_dirichlet_trace(a, physics_.omega, physics_.h1, n_trunc_);
    alphas_.push_back(std::move(p));
  }
}

void ProblemSetup::corrupt_beta_sign()
{
  for (auto &p : alphas_)
  {
    p.dtn = build_dtn(p.alpha, physics_.omega, grid_, n_trunc_, DtnFlavor::forward, true);
  }
}

double objective_from_residuals(const std::vector<ModalTrace> &residuals,
                                const AlphaQuadrature &quadrature)
{
  CompensatedSum<double> sum;
  for (int k = 0; k < quadrature.size(); k++)
  {
    sum.add(quadrature.folded_weight(k) * 0.5 * residuals[k].l2_norm_squared());
  }
  return sum.value();
}

ObjectiveValue evaluate_J(const DesignField &design, const ProblemSetup &setup,
                          const ExecutionPolicy &policy)
{
  SweepResult s = sweep(design, setup, SweepMode::forward, policy);
  ObjectiveValue out;
  out.value = s.objective;
  for (auto &r : s.per_alpha)
  {
    out.per_alpha.push_back(r.mismatch);
    out.residuals.push_back(std::move(r.residual));
  }
  return out;
}

}  // namespace superlens
