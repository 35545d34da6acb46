#include "superlens/solver.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

namespace superlens
{

namespace
{

Eigen::Matrix4d kron2(const Eigen::Matrix2d &y, const Eigen::Matrix2d &x)
{
  Eigen::Matrix4d out;
  for (int by = 0; by < 2; by++)
    for (int bx = 0; bx < 2; bx++)
      for (int cy = 0; cy < 2; cy++)
        for (int cx = 0; cx < 2; cx++)
          out(2 * by + bx, 2 * cy + cx) = y(by, cy) * x(bx, cx);
  return out;
}

std::string hex_hash(std::uint64_t h)
{
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << h;
  return ss.str();
}

}  // namespace

ElementMatrices element_matrices(const Grid &grid)
{
  const double hx = grid.hx();
  const double hy = grid.hy();
  Eigen::Matrix2d kx, mx, cx, ky, my;
  kx << 1.0, -1.0, -1.0, 1.0;
  kx /= hx;
  mx << 2.0, 1.0, 1.0, 2.0;
  mx *= hx / 6.0;
  cx << -0.5, 0.5, -0.5, 0.5;
  ky << 1.0, -1.0, -1.0, 1.0;
  ky /= hy;
  my << 2.0, 1.0, 1.0, 2.0;
  my *= hy / 6.0;

  ElementMatrices em;
  em.stiffness = kron2(my, kx) + kron2(ky, mx);
  em.mass = kron2(my, mx);
  em.dx = kron2(my, cx);
  return em;
}

AssembledSystem assemble(const DesignField &design, double alpha, double omega,
                         const DtnMatrix &dtn, const ModalTrace &g_trace)
{
  const Grid &grid = design.grid();
  if (dtn.matrix.rows() != grid.nx() || dtn.matrix.cols() != grid.nx())
  {
    throw std::invalid_argument("assemble: DtN block does not match the grid");
  }
  if (dtn.n_trunc != g_trace.n_trunc() || dtn.alpha != alpha || g_trace.alpha() != alpha ||
      dtn.omega != omega || dtn.flavor != DtnFlavor::forward)
  {
    throw std::invalid_argument("assemble: DtN / source trace parameters do not match");
  }

  const ElementMatrices em = element_matrices(grid);
  const double w2 = omega * omega;
  const Eigen::Matrix4cd base =
      em.stiffness.cast<Complex>() + (alpha * alpha) * em.mass.cast<Complex>() -
      Complex(0.0, 2.0 * alpha) * em.dx.cast<Complex>();

  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(16 * grid.num_cells() + 2 * grid.nx() * grid.nx());
  for (int j = 0; j < grid.ny(); j++)
  {
    for (int i = 0; i < grid.nx(); i++)
    {
      const auto nodes = grid.cell_nodes(i, j);
      const Complex rho = design(i, j);
      const Eigen::Matrix4cd elem = base - (w2 * rho) * em.mass.cast<Complex>();
      for (int k = 0; k < 4; k++)
        for (int l = 0; l < 4; l++)
          triplets.emplace_back(nodes[k], nodes[l], elem(k, l));
    }
  }
  for (int k = 0; k < grid.nx(); k++)
  {
    for (int l = 0; l < grid.nx(); l++)
    {
      triplets.emplace_back(grid.top_node(k), grid.top_node(l), -dtn.matrix(k, l));
      triplets.emplace_back(grid.bottom_node(k), grid.bottom_node(l), -dtn.matrix(k, l));
    }
  }

  AssembledSystem sys;
  sys.alpha = alpha;
  sys.omega = omega;
  sys.grid = grid;
  sys.n_trunc = dtn.n_trunc;
  sys.matrix.resize(grid.num_nodes(), grid.num_nodes());
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.matrix.makeCompressed();
  sys.dtn_top = dtn.matrix;
  sys.dtn_bottom = dtn.matrix;
  sys.analysis = trace_analysis_matrix(grid, dtn.n_trunc);

  // b_k = 2 int g phi_k = 4 pi sum_n g_n conj(E(n, k)).
  const CVector g = Eigen::Map<const CVector>(g_trace.coeffs().data(), g_trace.size());
  const CVector top_load = (2.0 * kTwoPi) * (sys.analysis.adjoint() * g);
  sys.rhs = CVector::Zero(grid.num_nodes());
  for (int k = 0; k < grid.nx(); k++)
  {
    sys.rhs(grid.top_node(k)) = top_load(k);
  }
  return sys;
}

FactoredSystem::FactoredSystem(AssembledSystem system, std::uint64_t design_hash)
  : system_(std::move(system)), hash_(design_hash),
    lu_(std::make_unique<Eigen::SparseLU<SpMatrix, Eigen::COLAMDOrdering<int>>>())
{
  lu_->analyzePattern(system_.matrix);
  lu_->factorize(system_.matrix);
  if (lu_->info() != Eigen::Success)
  {
    throw SolverError("sparse LU failed at alpha = " + std::to_string(system_.alpha) +
                      " for design " + hex_hash(hash_) + ": " + lu_->lastErrorMessage());
  }
}

void FactoredSystem::check_residual(const SpMatrix &a, const CVector &x, const CVector &rhs,
                                    const char *what) const
{
  const double rn = rhs.norm();
  if (rn == 0.0)
  {
    return;
  }
  const double res = (a * x - rhs).norm() / rn;
  if (!(res <= kSolveTolerance))
  {
    std::ostringstream ss;
    ss << what << " solve residual " << res << " exceeds tolerance at alpha = " << system_.alpha
       << " for design " << hex_hash(hash_);
    throw SolverError(ss.str());
  }
}

CVector FactoredSystem::solve(const CVector &rhs) const
{
  CVector x = lu_->solve(rhs);
  check_residual(system_.matrix, x, rhs, "forward");
  return x;
}

CVector FactoredSystem::solve_adjoint(const CVector &rhs) const
{
  CVector x = lu_->adjoint().solve(rhs);
  const SpMatrix ah = system_.matrix.adjoint();
  check_residual(ah, x, rhs, "adjoint");
  return x;
}

FloquetSolution solve_forward(const FactoredSystem &factored)
{
  const auto &sys = factored.system();
  FloquetSolution sol;
  sol.alpha = sys.alpha;
  sol.omega = sys.omega;
  sol.grid = sys.grid;
  sol.n_trunc = sys.n_trunc;
  sol.design_hash = factored.design_hash();
  sol.values = factored.solve(sys.rhs);
  return sol;
}

FloquetSolution solve_forward(const AssembledSystem &system)
{
  return solve_forward(FactoredSystem(system));
}

CVector boundary_values(const FloquetSolution &solution, Boundary which)
{
  const Grid &g = solution.grid;
  CVector v(g.nx());
  for (int i = 0; i < g.nx(); i++)
  {
    v(i) = solution.values(which == Boundary::top ? g.top_node(i) : g.bottom_node(i));
  }
  return v;
}

ModalTrace extract_trace(const FloquetSolution &solution, Boundary which)
{
  const CMatrix e = trace_analysis_matrix(solution.grid, solution.n_trunc);
  const CVector c = e * boundary_values(solution, which);
  return ModalTrace(solution.alpha, solution.n_trunc,
                    std::vector<Complex>(c.data(), c.data() + c.size()));
}

namespace
{

RealSpMatrix assemble_real(const Grid &grid, const Eigen::Matrix4d &elem)
{
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(16 * grid.num_cells());
  for (int j = 0; j < grid.ny(); j++)
    for (int i = 0; i < grid.nx(); i++)
    {
      const auto nodes = grid.cell_nodes(i, j);
      for (int k = 0; k < 4; k++)
        for (int l = 0; l < 4; l++)
          t.emplace_back(nodes[k], nodes[l], elem(k, l));
    }
  RealSpMatrix m(grid.num_nodes(), grid.num_nodes());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

RealSpMatrix global_mass(const Grid &grid)
{
  return assemble_real(grid, element_matrices(grid).mass);
}

RealSpMatrix global_stiffness(const Grid &grid)
{
  return assemble_real(grid, element_matrices(grid).stiffness);
}

Complex cell_mass_product(const Grid &grid, const ElementMatrices &em, const CVector &u,
                          const CVector &w, int i, int j)
{
  const auto nodes = grid.cell_nodes(i, j);
  Complex s(0.0, 0.0);
  for (int k = 0; k < 4; k++)
  {
    Complex row(0.0, 0.0);
    for (int l = 0; l < 4; l++)
    {
      row += em.mass(k, l) * u(nodes[l]);
    }
    s += std::conj(w(nodes[k])) * row;
  }
  return s;
}

void write_field(std::ostream &os, const FloquetSolution &solution,
                 std::optional<double> objective)
{
  const Grid &g = solution.grid;
  os << std::setprecision(17);
  os << g.nx() << ' ' << g.ny() << '\n';
  os << "# alpha " << solution.alpha << " omega " << solution.omega;
  if (objective)
  {
    os << " J " << *objective;
  }
  os << '\n';
  for (int k = 0; k < g.num_nodes(); k++)
  {
    os << solution.values(k).real() << ' ' << solution.values(k).imag() << '\n';
  }
}

}  // namespace superlens
