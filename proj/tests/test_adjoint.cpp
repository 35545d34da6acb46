#include <doctest.h>

#include <random>

#include "superlens/adjoint.hpp"
#include "superlens/sweep.hpp"
#include "verify.hpp"

using namespace superlens;

namespace
{

const AdmissibleBounds kBounds{1.0, 12.0, 0.0, 1.0};

ProblemSetup small_setup(int nx, int ny, int alphas)
{
  const Grid g(nx, ny, kPi);
  const int n = default_n_trunc(1.0, 20, nx);
  return ProblemSetup(g, PhysicalParameters{}, make_quadrature(alphas, 1.0, n), n);
}

}  // namespace

TEST_CASE("zero load gives a zero adjoint state")
{
  const ProblemSetup s = small_setup(16, 8, 1);
  const DesignField d = initial_design(RandomInit{1}, s.grid(), kBounds);
  const auto &p = s.alphas()[0];
  const AssembledSystem sys = assemble(d, p.alpha, 1.0, p.dtn, p.incident_normal);
  const FloquetSolution w = solve_adjoint(sys, ModalTrace(p.alpha, s.n_trunc()));
  CHECK(w.values.norm() == 0.0);
}

TEST_CASE("adjoint identity <A u, w> = <u, A^H w>")
{
  const ProblemSetup s = small_setup(16, 8, 1);
  const DesignField d = initial_design(RandomInit{4}, s.grid(), kBounds);
  const auto &p = s.alphas()[0];
  const AssembledSystem sys = assemble(d, p.alpha, 1.0, p.dtn, p.incident_normal);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  ModalTrace psi(p.alpha, s.n_trunc());
  for (auto &c : psi.coeffs())
  {
    const double a = nd(rng);
    const double b = nd(rng);
    c = Complex(a, b);
  }
  const FloquetSolution w = solve_adjoint(sys, psi);
  CVector u(sys.grid.num_nodes());
  for (auto &v : u)
  {
    const double a = nd(rng);
    const double b = nd(rng);
    v = Complex(a, b);
  }
  const SpMatrix ah = sys.matrix.adjoint();
  const Complex lhs = w.values.dot(sys.matrix * u);
  const Complex rhs = (ah * w.values).dot(u);
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));

  // The load pairs with the lower boundary trace: <F, psi> = (A^H w)^H u for u the state.
  const FloquetSolution uf = solve_forward(sys);
  const ModalTrace f = extract_trace(uf, Boundary::bottom);
  Complex pairing = 0.0;
  for (int n = -f.n_trunc(); n <= f.n_trunc(); n++)
    pairing += kTwoPi * f[n] * std::conj(psi[n]);
  const Complex via_adjoint = (ah * w.values).dot(uf.values);
  CHECK(std::abs(via_adjoint - pairing) <= 1e-10 * std::abs(pairing));
}

TEST_CASE("a vanishing adjoint state gives a vanishing gradient density")
{
  const ProblemSetup s = small_setup(16, 8, 1);
  const DesignField d = initial_design(RandomInit{1}, s.grid(), kBounds);
  const AlphaResult r = solve_alpha(d, s, 0, SweepMode::forward);
  FloquetSolution zero = r.forward;
  zero.values.setZero();
  for (auto v : gradient_density(r.forward, zero))
    CHECK(v == Complex(0.0, 0.0));
}

TEST_CASE("finite differences confirm the adjoint gradient")
{
  const auto r = verify::check_fd_gradient(16, 12, 2, 2, 3, 1e-4);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("zero and single-cell directions")
{
  const ProblemSetup s = small_setup(16, 8, 2);
  const DesignField d = initial_design(RandomInit{21}, s.grid(), kBounds);
  const std::vector<Complex> zero(s.grid().num_cells(), 0.0);
  const FdReport z = fd_gradient_check(d, zero, {1e-3}, s);
  CHECK(z.rows[0].finite_difference == 0.0);

  const ObjectiveAndGradient eg = evaluate_with_gradient(d, s);
  for (int c : {0, 37, 100})
  {
    for (Complex dir : {Complex(1.0, 0.0), Complex(0.0, 1.0)})
    {
      std::vector<Complex> e(s.grid().num_cells(), 0.0);
      e[c] = dir;
      const FdReport rep = fd_gradient_check(d, e, {1e-3, 1e-4}, s);
      const double g = (dir * eg.raw.values[c]).real();
      CHECK(rep.rows[1].finite_difference == doctest::Approx(g).epsilon(1e-5));
    }
  }
}

TEST_CASE("symmetrized gradient is mirror invariant and exact for symmetric moves")
{
  const ProblemSetup s = small_setup(16, 8, 3);
  const DesignField d = initial_design(RandomInit{8}, s.grid(), kBounds);
  const ObjectiveAndGradient eg = evaluate_with_gradient(d, s);
  CHECK(eg.symmetric.asymmetry() <= 1e-15 * eg.symmetric.max_abs());
  // For a mirror-symmetric perturbation the raw and symmetric gradients agree.
  std::vector<Complex> dir(s.grid().num_cells());
  for (int j = 0; j < s.grid().ny(); j++)
    for (int i = 0; i < s.grid().nx(); i++)
    {
      const int m = std::min(i, s.grid().mirror_cell_column(i));
      dir[s.grid().cell(i, j)] = Complex(std::sin(1.0 + m + 3 * j), std::cos(2.0 * m - j));
    }
  const double a = directional_derivative(eg.raw, dir);
  const double b = directional_derivative(eg.symmetric, dir);
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("descent direction decreases J")
{
  const ProblemSetup s = small_setup(16, 8, 2);
  const DesignField d = initial_design(RandomInit{13}, s.grid(), AdmissibleBounds{1.0, 12.0, 0.2, 1.0});
  const ObjectiveAndGradient eg = evaluate_with_gradient(d, s);
  const double step = 1e-3 / eg.symmetric.max_abs();
  DesignField trial = d;
  for (std::size_t c = 0; c < d.values().size(); c++)
  {
    const Complex g = eg.symmetric.values[c];
    trial.values()[c] += step * Complex(-g.real(), g.imag());
  }
  CHECK(evaluate_J(trial, s).value < eg.value);
}

TEST_CASE("gradient rejects mismatched inputs")
{
  const ProblemSetup s = small_setup(16, 8, 2);
  const DesignField d(s.grid(), kBounds);
  const AlphaResult r = solve_alpha(d, s, 0, SweepMode::forward_and_adjoint);
  CHECK_THROWS(gradient(d, {r.forward}, {*r.adjoint}, s.quadrature()));
  CHECK_THROWS(directional_derivative(GradientField{}, {Complex(1.0)}));
}
