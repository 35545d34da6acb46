#include "superlens/adjoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "superlens/sweep.hpp"

namespace superlens
{

double GradientField::max_abs() const
{
  double m = 0.0;
  for (const auto &v : values)
  {
    m = std::max(m, std::abs(v));
  }
  return m;
}

double GradientField::norm() const
{
  double s = 0.0;
  for (const auto &v : values)
  {
    s += std::norm(v);
  }
  return std::sqrt(s);
}

double GradientField::asymmetry() const
{
  double worst = 0.0;
  for (int j = 0; j < grid.ny(); j++)
  {
    for (int i = 0; i < grid.nx(); i++)
    {
      const Complex a = values[grid.cell(i, j)];
      const Complex b = values[grid.cell(grid.mirror_cell_column(i), j)];
      worst = std::max(worst, std::abs(a - b));
    }
  }
  return worst;
}

FloquetSolution solve_adjoint(const FactoredSystem &factored, const ModalTrace &psi)
{
  const auto &sys = factored.system();
  if (psi.n_trunc() != sys.n_trunc || psi.alpha() != sys.alpha)
  {
    throw std::invalid_argument("solve_adjoint: psi does not match the assembled system");
  }
  const CVector coeffs = Eigen::Map<const CVector>(psi.coeffs().data(), psi.size());
  const CVector load = kTwoPi * (sys.analysis.adjoint() * coeffs);
  CVector rhs = CVector::Zero(sys.grid.num_nodes());
  for (int k = 0; k < sys.grid.nx(); k++)
  {
    rhs(sys.grid.bottom_node(k)) = load(k);
  }

  FloquetSolution w;
  w.alpha = sys.alpha;
  w.omega = sys.omega;
  w.grid = sys.grid;
  w.n_trunc = sys.n_trunc;
  w.design_hash = factored.design_hash();
  w.values = factored.solve_adjoint(rhs);
  return w;
}

FloquetSolution solve_adjoint(const AssembledSystem &system, const ModalTrace &psi)
{
  return solve_adjoint(FactoredSystem(system), psi);
}

std::vector<Complex> gradient_density(const FloquetSolution &forward,
                                      const FloquetSolution &adjoint)
{
  const Grid &g = forward.grid;
  const ElementMatrices em = element_matrices(g);
  const double w2 = forward.omega * forward.omega;
  std::vector<Complex> out(g.num_cells());
  for (int j = 0; j < g.ny(); j++)
  {
    for (int i = 0; i < g.nx(); i++)
    {
      out[g.cell(i, j)] = w2 * cell_mass_product(g, em, forward.values, adjoint.values, i, j);
    }
  }
  return out;
}

GradientField gradient(const DesignField &design, const std::vector<FloquetSolution> &forward,
                       const std::vector<FloquetSolution> &adjoint,
                       const AlphaQuadrature &quadrature)
{
  if (forward.size() != adjoint.size() || static_cast<int>(forward.size()) != quadrature.size())
  {
    throw std::invalid_argument("gradient: forward, adjoint and quadrature sizes differ");
  }
  GradientField g;
  g.grid = design.grid();
  g.alphas = quadrature.points;
  std::vector<CompensatedSum<Complex>> acc(design.grid().num_cells());
  for (int k = 0; k < quadrature.size(); k++)
  {
    if (forward[k].alpha != quadrature.points[k] || adjoint[k].alpha != quadrature.points[k])
    {
      throw std::invalid_argument("gradient: alpha sets do not match");
    }
    const auto d = gradient_density(forward[k], adjoint[k]);
    for (std::size_t c = 0; c < d.size(); c++)
    {
      acc[c].add(quadrature.folded_weight(k) * d[c]);
    }
  }
  g.values.reserve(acc.size());
  for (const auto &a : acc)
  {
    g.values.push_back(a.value());
  }
  return g;
}

GradientField symmetrize_gradient(GradientField g)
{
  for (int j = 0; j < g.grid.ny(); j++)
  {
    for (int i = 0; i < g.grid.nx() / 2; i++)
    {
      const int a = g.grid.cell(i, j);
      const int b = g.grid.cell(g.grid.mirror_cell_column(i), j);
      const Complex avg = 0.5 * (g.values[a] + g.values[b]);
      g.values[a] = avg;
      g.values[b] = avg;
    }
  }
  return g;
}

ObjectiveAndGradient evaluate_with_gradient(const DesignField &design, const ProblemSetup &setup,
                                            const ExecutionPolicy &policy)
{
  SweepResult s = sweep(design, setup, SweepMode::forward_and_adjoint, policy);
  ObjectiveAndGradient out;
  out.value = s.objective;
  out.raw.grid = design.grid();
  out.raw.alphas = setup.quadrature().points;
  out.raw.values = std::move(s.gradient);
  out.symmetric = symmetrize_gradient(out.raw);
  for (auto &r : s.per_alpha)
  {
    out.residuals.push_back(std::move(r.residual));
  }
  return out;
}

double directional_derivative(const GradientField &g, const std::vector<Complex> &direction)
{
  if (direction.size() != g.values.size())
  {
    throw std::invalid_argument("directional_derivative: size mismatch");
  }
  CompensatedSum<double> s;
  for (std::size_t c = 0; c < direction.size(); c++)
  {
    s.add((direction[c] * g.values[c]).real());
  }
  return s.value();
}

double FdReport::best_error() const
{
  double best = std::numeric_limits<double>::infinity();
  for (const auto &r : rows)
  {
    best = std::min(best, r.relative_error);
  }
  return best;
}

bool FdReport::second_order(double floor, double ratio_lo, double ratio_hi) const
{
  for (std::size_t k = 0; k + 1 < rows.size(); k++)
  {
    const auto &a = rows[k];
    const auto &b = rows[k + 1];
    if (a.relative_error <= floor || b.relative_error <= floor)
    {
      continue;
    }
    const double expected = (a.step / b.step) * (a.step / b.step);
    const double observed = a.relative_error / b.relative_error;
    if (observed >= ratio_lo * expected && observed <= ratio_hi * expected)
    {
      return true;
    }
  }
  return false;
}

FdReport fd_gradient_check(const DesignField &design, const std::vector<Complex> &direction,
                           const std::vector<double> &steps, const ProblemSetup &setup,
                           const ExecutionPolicy &policy)
{
  if (static_cast<int>(direction.size()) != design.grid().num_cells())
  {
    throw std::invalid_argument("fd_gradient_check: direction size does not match the grid");
  }
  const ObjectiveAndGradient base = evaluate_with_gradient(design, setup, policy);
  const double adjoint_value = directional_derivative(base.raw, direction);

  FdReport report;
  for (double t : steps)
  {
    DesignField plus = design;
    DesignField minus = design;
    for (std::size_t c = 0; c < direction.size(); c++)
    {
      plus.values()[c] += t * direction[c];
      minus.values()[c] -= t * direction[c];
    }
    const double jp = evaluate_J(plus, setup, policy).value;
    const double jm = evaluate_J(minus, setup, policy).value;
    FdRow row;
    row.step = t;
    row.finite_difference = (jp - jm) / (2.0 * t);
    row.adjoint = adjoint_value;
    const double scale = std::abs(adjoint_value);
    row.relative_error = scale > 0.0 ? std::abs(row.finite_difference - adjoint_value) / scale
                                     : std::abs(row.finite_difference);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace superlens
