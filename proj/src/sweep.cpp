#include "superlens/sweep.hpp"

#include <exception>

#include <omp.h>

#include "superlens/adjoint.hpp"

namespace superlens
{

int ExecutionPolicy::resolved_jobs() const
{
  return jobs > 0 ? jobs : omp_get_max_threads();
}

AlphaResult solve_alpha(const DesignField &design, const ProblemSetup &setup, int k,
                        SweepMode mode)
{
  const AlphaProblem &p = setup.alphas()[k];
  FactoredSystem factored(assemble(design, p.alpha, setup.omega(), p.dtn, p.incident_normal),
                          design_hash(design));

  AlphaResult r;
  r.forward = solve_forward(factored);
  r.residual = extract_trace(r.forward, Boundary::bottom) - p.target;
  r.mismatch = 0.5 * r.residual.l2_norm_squared();
  if (mode == SweepMode::forward_and_adjoint)
  {
    r.adjoint = solve_adjoint(factored, r.residual);
    r.density = gradient_density(r.forward, *r.adjoint);
  }
  return r;
}

void reduce_sweep(SweepResult &result, const ProblemSetup &setup, SweepMode mode)
{
  const auto &q = setup.quadrature();
  CompensatedSum<double> j;
  for (int k = 0; k < q.size(); k++)
  {
    j.add(q.folded_weight(k) * result.per_alpha[k].mismatch);
  }
  result.objective = j.value();

  result.gradient.clear();
  if (mode != SweepMode::forward_and_adjoint)
  {
    return;
  }
  const int cells = setup.grid().num_cells();
  std::vector<CompensatedSum<Complex>> g(cells);
  for (int k = 0; k < q.size(); k++)
  {
    const double w = q.folded_weight(k);
    const auto &d = result.per_alpha[k].density;
    for (int c = 0; c < cells; c++)
    {
      g[c].add(w * d[c]);
    }
  }
  result.gradient.resize(cells);
  for (int c = 0; c < cells; c++)
  {
    result.gradient[c] = g[c].value();
  }
}

namespace kernels
{

SweepResult sweep_serial(const DesignField &design, const ProblemSetup &setup, SweepMode mode)
{
  SweepResult out;
  out.per_alpha.reserve(setup.alphas().size());
  for (int k = 0; k < static_cast<int>(setup.alphas().size()); k++)
  {
    out.per_alpha.push_back(solve_alpha(design, setup, k, mode));
  }
  reduce_sweep(out, setup, mode);
  return out;
}

SweepResult sweep_parallel(const DesignField &design, const ProblemSetup &setup, SweepMode mode,
                           int jobs)
{
  const int count = static_cast<int>(setup.alphas().size());
  SweepResult out;
  out.per_alpha.resize(count);
  std::vector<std::exception_ptr> errors(count);

#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (int k = 0; k < count; k++)
  {
    try
    {
      out.per_alpha[k] = solve_alpha(design, setup, k, mode);
    }
    catch (...)
    {
      errors[k] = std::current_exception();
    }
  }

  for (const auto &e : errors)
  {
    if (e)
    {
      std::rethrow_exception(e);
    }
  }
  reduce_sweep(out, setup, mode);
  return out;
}

}  // namespace kernels

SweepResult sweep(const DesignField &design, const ProblemSetup &setup, SweepMode mode,
                  const ExecutionPolicy &policy)
{
  if (design.grid() != setup.grid())
  {
    throw std::invalid_argument("sweep: design grid does not match the problem setup");
  }
  if (policy.serial())
  {
    return kernels::sweep_serial(design, setup, mode);
  }
  return kernels::sweep_parallel(design, setup, mode, policy.resolved_jobs());
}

}  // namespace superlens
