#include <doctest.h>

#include <cmath>

#include "oracles/oracles.hpp"
#include "superlens/analysis.hpp"
#include "superlens/sweep.hpp"

using namespace superlens;

namespace
{

std::vector<double> gaussian(const std::vector<double> &xs, double sigma, double scale)
{
  std::vector<double> out;
  for (double x : xs)
    out.push_back(scale * std::exp(-x * x / (2 * sigma * sigma)));
  return out;
}

}  // namespace

TEST_CASE("spot size of a Gaussian")
{
  std::vector<double> xs = linspace(-kPi, kPi, 4097);
  const auto m = spot_size_from_intensity(xs, gaussian(xs, 0.5, 1.0), 1.0, -5.0);
  REQUIRE(m);
  CHECK(m->fwhm == doctest::Approx(2 * 0.5 * std::sqrt(2 * std::log(2.0))).epsilon(1e-5));
  CHECK(m->spot_size_lambda == doctest::Approx(0.18738).epsilon(1e-4));
  CHECK(std::abs(m->peak_x) <= xs[1] - xs[0]);
  CHECK(m->peak_y == -5.0);

  const auto scaled = spot_size_from_intensity(xs, gaussian(xs, 0.5, 37.0), 1.0, -5.0);
  REQUIRE(scaled);
  CHECK(scaled->spot_size_lambda == doctest::Approx(m->spot_size_lambda).epsilon(1e-12));
}

TEST_CASE("unfocused field is unmeasurable")
{
  std::vector<double> xs = linspace(-1.0, 1.0, 600);
  CHECK_FALSE(spot_size_from_intensity(xs, gaussian(xs, 5.0, 1.0), 1.0, 0.0));
  CHECK_FALSE(spot_size_from_intensity(xs, std::vector<double>(600, 0.0), 1.0, 0.0));
  CHECK_THROWS(spot_size_from_intensity(xs, {1.0, 2.0}, 1.0, 0.0));
}

TEST_CASE("reconstruction at y = -b reproduces the trace synthesis")
{
  const AlphaQuadrature q = make_quadrature(3, 1.0, 5);
  std::vector<ModalTrace> traces;
  for (double a : q.points)
    traces.push_back(target_dirichlet_trace(a, 1.0, 2.0, 5));
  const std::vector<double> xs = {-1.0, 0.0, 0.4, 2.5};
  const auto line = reconstruct_line(traces, q, 1.0, 1.5, xs, -1.5);
  for (std::size_t i = 0; i < xs.size(); i++)
  {
    Complex expect = 0.0;
    for (int k = 0; k < q.size(); k++)
    {
      const double a = q.points[k];
      expect += q.weights[k] * (traces[k].synthesize(xs[i]) * std::exp(Complex(0.0, a * xs[i])) +
                                traces[k].synthesize(-xs[i]) * std::exp(Complex(0.0, -a * xs[i])));
    }
    CHECK(std::abs(line[i] - expect) <= 1e-12 * std::abs(expect));
  }
  CHECK_THROWS(reconstruct_line(traces, q, 1.0, 1.5, xs, -1.0));
  CHECK_THROWS(reconstruct_below(traces, q, 1.0, 1.5, xs, 0.0, 4));
}

TEST_CASE("a propagating plane wave keeps its modulus below the slab")
{
  AlphaQuadrature q;
  q.points = {0.2};
  q.weights = {0.5};
  q.symmetry_factor = 1.0;
  ModalTrace t(0.2, 3);
  t[0] = Complex(0.7, 0.1);
  // With symmetry_factor 1 the fold weight is 1/4 per mirror branch; only x = 0 matters.
  const SampledField f = reconstruct_below({t}, q, 1.0, 1.0, {0.0}, 5.0, 11);
  for (int iy = 0; iy < 11; iy++)
    CHECK(std::abs(f(0, iy)) == doctest::Approx(std::abs(f(0, 0))).epsilon(1e-14));
}

TEST_CASE("reconstructed vacuum field matches the point source")
{
  const double omega = 1.0, h = 2.5, b = kPi;
  const Grid g(48, 36, b);
  const int n_trunc = 20;
  // Quadrature clustered at the grazing anomaly alpha = 0 (see the source tests).
  AlphaQuadrature q;
  const int points = 160;
  for (int k = 0; k < points; k++)
  {
    const double t = (k + 0.5) / points;
    q.points.push_back(0.5 * t * t);
    q.weights.push_back(t / points);
  }
  const ProblemSetup s(g, PhysicalParameters{omega, h, 2.5}, q, n_trunc);
  const DesignField vac(g, AdmissibleBounds{1.0, 12.0, 0.0, 0.0}, Complex(1.0, 0.0));
  const SweepResult sw = sweep(vac, s, SweepMode::forward);
  std::vector<ModalTrace> traces;
  for (const auto &r : sw.per_alpha)
    traces.push_back(extract_trace(r.forward, Boundary::bottom));

  const std::vector<double> xs = linspace(-kPi, kPi, 65);
  for (double y : {-b - 0.5, -b - 2.5})
  {
    const auto u = reconstruct_line(traces, q, omega, b, xs, y);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); i++)
    {
      const Complex exact = oracles::point_source(omega, h, xs[i], y);
      num += std::norm(u[i] - exact);
      den += std::norm(exact);
    }
    CHECK(std::sqrt(num / den) <= 1e-2);
  }
}

TEST_CASE("evanescent spectra")
{
  const double omega = 1.0, h1 = 2.5;
  const ModalTrace q = target_dirichlet_trace(0.25, omega, h1, 8);
  const auto spec = evanescent_spectrum(q, omega);
  CHECK(spec.size() == 15u);  // n = -1 and n = 0 propagate
  for (const auto &e : spec)
  {
    const double m = beta(e.n + 0.25, omega).value.imag();
    CHECK(e.magnitude == doctest::Approx(std::exp(-m * h1) / (kPi * m)).epsilon(1e-13));
  }
  CHECK(evanescent_spectrum(ModalTrace(0.25, 5), 10.0).empty());

  const std::vector<ModalTrace> fam = {q};
  CHECK(spectrum_similarity(fam, fam, omega) == doctest::Approx(1.0));
  ModalTrace other = q;
  for (int n = 2; n <= 8; n++)
    other[n] = 0.0;
  const double sim = spectrum_similarity({other}, fam, omega);
  CHECK(sim < 1.0);
  CHECK(sim > 0.0);
}

TEST_CASE("vacuum spectrum below the slab follows the analytic decay")
{
  const double omega = 1.0, h = 2.5, b = kPi;
  const Grid g(64, 48, b);
  const ProblemSetup s(g, PhysicalParameters{omega, h, 2.5}, make_quadrature(1, omega, 21), 21);
  const DesignField vac(g, AdmissibleBounds{1.0, 12.0, 0.0, 0.0}, Complex(1.0, 0.0));
  const ModalTrace below = extract_trace(solve_alpha(vac, s, 0, SweepMode::forward).forward,
                                         Boundary::bottom);
  for (const auto &e : evanescent_spectrum(below, omega))
  {
    if (std::abs(e.n) > 2)
      continue;  // deeper modes sit below the discretization error
    const double m = beta(e.n + 0.25, omega).value.imag();
    CHECK(e.magnitude == doctest::Approx(std::exp(-m * (h + b)) / (kPi * m)).epsilon(5e-2));
  }
}

TEST_CASE("energy balance")
{
  const Grid g(32, 24, kPi);
  const int n = 15;
  const ProblemSetup s(g, PhysicalParameters{}, make_quadrature(3, 1.0, n), n);

  const DesignField lossless =
      initial_design(RandomInit{99}, g, AdmissibleBounds{1.0, 12.0, 0.0, 0.0});
  const SweepResult a = sweep(lossless, s, SweepMode::forward);
  for (int k = 0; k < 3; k++)
  {
    const EnergyBalance e = energy_balance(a.per_alpha[k].forward, lossless, s.alphas()[k]);
    CHECK(e.relative_residual() <= 1e-8);
    CHECK(e.absorbed == 0.0);
  }

  const DesignField lossy = initial_design(RandomInit{99}, g, AdmissibleBounds{1.0, 12.0, 0.1, 1.0});
  const SweepResult b = sweep(lossy, s, SweepMode::forward);
  for (int k = 0; k < 3; k++)
  {
    const EnergyBalance e = energy_balance(b.per_alpha[k].forward, lossy, s.alphas()[k]);
    CHECK(e.absorbed > 0.0);
    CHECK(e.relative_residual() <= 1e-8);
  }

  const DesignField vac(g, AdmissibleBounds{1.0, 12.0, 0.0, 0.0}, Complex(1.0, 0.0));
  const SweepResult c = sweep(vac, s, SweepMode::forward);
  for (int k = 0; k < 3; k++)
  {
    const EnergyBalance e = energy_balance(c.per_alpha[k].forward, vac, s.alphas()[k]);
    CHECK(e.reflected <= 1e-3 * e.incident);
    CHECK(e.transmitted == doctest::Approx(e.incident).epsilon(2e-2));
  }
}

TEST_CASE("coercivity constant")
{
  CHECK(coercivity_constant(1.0, 1.0, 12.0) == 1.0 / 52.0);
  CHECK(coercivity_constant(1.0, 10.0, 12.0) == 0.25);
  double prev = 0.0;
  for (double ri : {0.1, 0.5, 1.0, 5.0, 100.0})
  {
    const double c = coercivity_constant(ri, 1.0, 12.0);
    CHECK(c >= prev);
    prev = c;
  }
  CHECK_THROWS_AS(coercivity_constant(0.0, 1.0, 12.0), DomainError);
}

TEST_CASE("H1 bound diagnostic on a lossy design")
{
  const Grid g(24, 16, kPi);
  const AdmissibleBounds bounds{1.0, 12.0, 1.0, 2.0};
  const DesignField d = initial_design(RandomInit{5}, g, bounds);
  const auto dtn = build_dtn(0.25, 1.0, g, 11, DtnFlavor::forward);
  const AssembledSystem sys = assemble(d, 0.25, 1.0, dtn, incident_neumann_trace(0.25, 1.0, 2.5, 11));
  const FloquetSolution u = solve_forward(sys);
  const BoundDiagnostic diag = h1_bound_diagnostic(u, sys, bounds);
  CHECK(diag.coercivity == 1.0 / 52.0);
  CHECK(diag.solution_h1 > 0.0);
  CHECK(diag.load_dual > 0.0);
  CHECK(diag.within(2.0));
}
