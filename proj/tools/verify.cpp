#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "oracles/oracles.hpp"
#include "superlens/adjoint.hpp"
#include "superlens/analysis.hpp"
#include "superlens/sweep.hpp"

namespace superlens::verify
{

namespace
{

constexpr double kAlpha = 0.25;
constexpr double kOmega = 1.0;
constexpr double kH = 2.5;

AdmissibleBounds lossless_bounds()
{
  return AdmissibleBounds{1.0, 12.0, 0.0, 0.0};
}

int oracle_truncation(int nx)
{
  return std::min(21, nx / 2 - 1);
}

FloquetSolution solve_design(const DesignField &design, double alpha, int n_trunc)
{
  const DtnMatrix dtn = build_dtn(alpha, kOmega, design.grid(), n_trunc, DtnFlavor::forward);
  const ModalTrace g = incident_neumann_trace(alpha, kOmega, kH, n_trunc);
  return solve_forward(assemble(design, alpha, kOmega, dtn, g));
}

std::string format(double v)
{
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

double vacuum_tolerance(int nx)
{
  const double r = 64.0 / nx;
  return 1e-2 * r * r;
}

double vacuum_error(int nx, int ny)
{
  const Grid grid(nx, ny, kPi);
  const int n_trunc = oracle_truncation(nx);
  const DesignField vacuum(grid, lossless_bounds(), Complex(1.0, 0.0));
  const FloquetSolution u = solve_design(vacuum, kAlpha, n_trunc);

  // Trapezoid weights in y; x is periodic so the rule is uniform there.
  double num = 0.0, den = 0.0;
  for (int j = 0; j <= ny; j++)
  {
    const double wy = (j == 0 || j == ny) ? 0.5 : 1.0;
    for (int i = 0; i < nx; i++)
    {
      const Complex exact = oracles::vacuum_floquet(kAlpha, kOmega, kH, n_trunc, grid.node_x(i),
                                                    grid.node_y(j));
      num += wy * std::norm(u.values(grid.node(i, j)) - exact);
      den += wy * std::norm(exact);
    }
  }
  return std::sqrt(num / den);
}

CheckResult check_vacuum(int nx, int ny)
{
  CheckResult r;
  r.name = "vacuum oracle " + std::to_string(nx) + "x" + std::to_string(ny);
  r.value = vacuum_error(nx, ny);
  r.tolerance = vacuum_tolerance(nx);
  r.pass = r.value <= r.tolerance;
  r.detail = "relative L2 error " + format(r.value);
  return r;
}

CheckResult check_vacuum_convergence(int nx, int ny)
{
  CheckResult r;
  r.name = "vacuum O(h^2) " + std::to_string(nx) + "x" + std::to_string(ny) + " vs " +
           std::to_string(2 * nx) + "x" + std::to_string(2 * ny);
  const double coarse = vacuum_error(nx, ny);
  const double fine = vacuum_error(2 * nx, 2 * ny);
  r.value = coarse / fine;
  r.tolerance = 4.0;
  r.pass = coarse <= vacuum_tolerance(nx) && fine <= vacuum_tolerance(2 * nx) && r.value >= 3.5 &&
           r.value <= 4.5;
  r.detail = "errors " + format(coarse) + ", " + format(fine) + ", ratio " + format(r.value);
  return r;
}

double layered_tolerance(int nx)
{
  const double r = 128.0 / nx;
  return 1e-3 * r * r;
}

std::vector<ModeComparison> layered_comparison(int nx, int ny, double alpha)
{
  if (ny % 2 != 0)
  {
    throw ConfigError("layered oracle needs an even ny so the interface is a grid line");
  }
  const Grid grid(nx, ny, kPi);
  const int n_trunc = oracle_truncation(nx);
  DesignField design(grid, lossless_bounds(), Complex(4.0, 0.0));
  for (int j = 0; j < ny / 2; j++)
  {
    for (int i = 0; i < nx; i++)
    {
      design(i, j) = Complex(2.0, 0.0);
    }
  }
  const FloquetSolution u = solve_design(design, alpha, n_trunc);
  const ModalTrace below = extract_trace(u, Boundary::bottom);
  const ModalTrace incident = incident_dirichlet_trace(alpha, kOmega, kH, n_trunc);
  const std::vector<oracles::Layer> layers = {{kPi / 2, 2.0}, {kPi / 2, 4.0}};

  std::vector<ModeComparison> out;
  for (int n = -n_trunc; n <= n_trunc; n++)
  {
    const Complex t_fem = below[n] / incident[n];
    const Complex t_tmm = oracles::layered_transmission(layers, n + alpha, kOmega);
    out.push_back({n, beta(n + alpha, kOmega).propagating(), std::abs(t_fem), std::abs(t_tmm),
                   std::abs(t_fem - t_tmm) / std::abs(t_tmm)});
  }
  return out;
}

CheckResult check_layered(int nx, int ny, double tolerance)
{
  CheckResult r;
  r.name = "layered oracle " + std::to_string(nx) + "x" + std::to_string(ny);
  r.tolerance = tolerance;
  int count = 0;
  for (double alpha : {0.1, 0.25, 0.4})
  {
    for (const auto &m : layered_comparison(nx, ny, alpha))
    {
      if (m.propagating)
      {
        r.value = std::max(r.value, m.relative_error);
        count++;
      }
    }
  }
  r.pass = count > 0 && r.value <= tolerance;
  r.detail = std::to_string(count) + " propagating modes, worst relative error " + format(r.value);
  return r;
}

CheckResult check_energy(const std::vector<std::pair<int, int>> &grids, int designs,
                         int alpha_count, double tolerance, bool corrupt_beta)
{
  CheckResult r;
  r.name = "energy conservation";
  r.tolerance = tolerance;
  int solves = 0;
  for (const auto &[nx, ny] : grids)
  {
    const Grid grid(nx, ny, kPi);
    const int n_trunc = default_n_trunc(kOmega, 20, nx);
    ProblemSetup setup(grid, PhysicalParameters{kOmega, kH, kH},
                       make_quadrature(alpha_count, kOmega, n_trunc), n_trunc);
    if (corrupt_beta)
    {
      setup.corrupt_beta_sign();
    }
    for (int s = 0; s < designs; s++)
    {
      const DesignField d =
          initial_design(RandomInit{static_cast<std::uint64_t>(1000 + s)}, grid, lossless_bounds());
      const SweepResult sw = sweep(d, setup, SweepMode::forward);
      for (int k = 0; k < setup.quadrature().size(); k++)
      {
        const EnergyBalance e = energy_balance(sw.per_alpha[k].forward, d, setup.alphas()[k]);
        r.value = std::max(r.value, e.relative_residual());
        solves++;
      }
    }
  }
  r.pass = solves > 0 && r.value <= tolerance;
  r.detail = std::to_string(solves) + " solves, worst relative residual " + format(r.value);
  return r;
}

CheckResult check_dtn_adjoint(int nx, double tolerance)
{
  CheckResult r;
  r.name = "DtN adjoint identity";
  r.tolerance = tolerance;
  const Grid grid(nx, 4, kPi);
  const int n_trunc = nx / 2 - 1;
  for (double alpha : {0.0125, 0.1, 0.25, 0.4875, -0.3})
  {
    const DtnMatrix f = build_dtn(alpha, kOmega, grid, n_trunc, DtnFlavor::forward);
    const DtnMatrix a = build_dtn(alpha, kOmega, grid, n_trunc, DtnFlavor::adjoint);
    r.value = std::max(r.value, (a.matrix - f.matrix.adjoint()).cwiseAbs().maxCoeff());
  }
  r.pass = r.value <= tolerance;
  r.detail = "max entry deviation " + format(r.value);
  return r;
}

CheckResult check_fd_gradient(int nx, int ny, int alpha_count, int designs, int directions,
                              double tolerance)
{
  CheckResult r;
  r.name = "adjoint gradient vs central FD";
  r.tolerance = tolerance;
  const Grid grid(nx, ny, kPi);
  const int n_trunc = default_n_trunc(kOmega, 20, nx);
  const ProblemSetup setup(grid, PhysicalParameters{kOmega, kH, kH},
                           make_quadrature(alpha_count, kOmega, n_trunc), n_trunc);
  const std::vector<double> steps = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  bool second_order = true;
  int checks = 0;
  for (int s = 0; s < designs; s++)
  {
    const DesignField d = initial_design(RandomInit{static_cast<std::uint64_t>(50 + s)}, grid,
                                         AdmissibleBounds{1.0, 12.0, 0.0, 1.0});
    for (int k = 0; k < directions; k++)
    {
      std::vector<Complex> dir(grid.num_cells());
      for (auto &v : dir)
      {
        const double a = unit(rng);
        const double b = unit(rng);
        v = Complex(a, b);
      }
      const FdReport rep = fd_gradient_check(d, dir, steps, setup);
      r.value = std::max(r.value, rep.best_error());
      second_order = second_order && rep.second_order(1e-8);
      checks++;
    }
  }
  r.pass = r.value <= tolerance && second_order;
  r.detail = std::to_string(checks) + " directions, worst best-step error " + format(r.value) +
             (second_order ? ", O(t^2) observed" : ", O(t^2) NOT observed");
  return r;
}

}  // namespace superlens::verify
