#include <doctest.h>

#include <filesystem>

#include "superlens/optimize.hpp"

using namespace superlens;

namespace
{

const AdmissibleBounds kBounds{1.0, 12.0, 0.0, 1.0};

GradientField field_of(const Grid &g, Complex v)
{
  GradientField gf;
  gf.grid = g;
  gf.values.assign(g.num_cells(), v);
  return gf;
}

ProblemSetup small_setup()
{
  const Grid g(16, 8, kPi);
  return ProblemSetup(g, PhysicalParameters{}, make_quadrature(2, 1.0, 7), 7);
}

}  // namespace

TEST_CASE("kkt residual sign conditions")
{
  const Grid g(4, 2, 1.0);
  DesignField d(g, kBounds, Complex(5.0, 0.5));
  CHECK(kkt_residual(d, field_of(g, 0.0)) == 0.0);
  CHECK(kkt_residual(d, field_of(g, Complex(0.2, -0.1))) == doctest::Approx(0.2));

  DesignField lo(g, kBounds, Complex(1.0, 0.5));
  CHECK(kkt_residual(lo, field_of(g, Complex(0.3, 0.0))) == 0.0);
  CHECK(kkt_residual(lo, field_of(g, Complex(-0.3, 0.0))) == doctest::Approx(0.3));
  DesignField hi(g, kBounds, Complex(12.0, 0.5));
  CHECK(kkt_residual(hi, field_of(g, Complex(-0.3, 0.0))) == 0.0);
  CHECK(kkt_residual(hi, field_of(g, Complex(0.3, 0.0))) == doctest::Approx(0.3));

  // Imaginary part: Im G < 0 is allowed at the lower bound, Im G > 0 at the upper.
  DesignField ilo(g, kBounds, Complex(5.0, 0.0));
  CHECK(kkt_residual(ilo, field_of(g, Complex(0.0, -0.3))) == 0.0);
  CHECK(kkt_residual(ilo, field_of(g, Complex(0.0, 0.3))) == doctest::Approx(0.3));
  DesignField ihi(g, kBounds, Complex(5.0, 1.0));
  CHECK(kkt_residual(ihi, field_of(g, Complex(0.0, 0.3))) == 0.0);
  CHECK(kkt_residual(ihi, field_of(g, Complex(0.0, -0.3))) == doctest::Approx(0.3));
}

TEST_CASE("zero gradient stalls without moving")
{
  const Grid g(4, 2, 1.0);
  OptimizerState s = initial_state(DesignField(g, kBounds, Complex(5.0, 0.5)));
  s.objective = 1.0;
  int calls = 0;
  const OptimizerState out = descent_step(s, field_of(g, 0.0), [&](const DesignField &) {
    calls++;
    return 0.0;
  });
  CHECK(out.status == OptimizerStatus::stalled);
  CHECK(out.design == s.design);
  CHECK(calls == 0);
}

TEST_CASE("pinned cells with consistent signs stall")
{
  const Grid g(4, 2, 1.0);
  OptimizerState s = initial_state(DesignField(g, kBounds, Complex(1.0, 0.0)));
  s.objective = 1.0;
  const GradientField grad = field_of(g, Complex(0.5, -0.5));
  CHECK(kkt_residual(s.design, grad) == 0.0);
  const OptimizerState out = descent_step(s, grad, [](const DesignField &) { return 0.0; });
  CHECK(out.status == OptimizerStatus::stalled);
  CHECK(out.design == s.design);
}

TEST_CASE("quadratic model: accepted steps decrease J and stay feasible")
{
  const Grid g(8, 2, 1.0);
  DesignField target(g, kBounds, Complex(4.0, 0.3));
  target(1, 0) = target(g.mirror_cell_column(1), 0) = Complex(9.0, 0.8);
  auto J = [&](const DesignField &d) {
    double s = 0.0;
    for (std::size_t c = 0; c < d.values().size(); c++)
      s += std::norm(d.values()[c] - target.values()[c]);
    return s;
  };
  // J = sum |rho - t|^2 has DJ(d) = Re sum d * 2 conj(rho - t).
  auto grad = [&](const DesignField &d) {
    GradientField gf = field_of(g, 0.0);
    for (std::size_t c = 0; c < d.values().size(); c++)
      gf.values[c] = 2.0 * std::conj(d.values()[c] - target.values()[c]);
    return gf;
  };
  OptimizerState s = initial_state(DesignField(g, kBounds, Complex(6.0, 0.0)));
  s.objective = J(s.design);
  for (int it = 0; it < 15 && s.status == OptimizerStatus::running; it++)
  {
    const double before = s.objective;
    s = descent_step(std::move(s), grad(s.design), J);
    if (s.status == OptimizerStatus::running)
    {
      CHECK(s.objective < before);
      CHECK(s.design.is_admissible());
      CHECK(s.design.asymmetry() == 0.0);
    }
  }
  CHECK(s.objective < 1e-6);
}

TEST_CASE("max_iter = 0 evaluates the start only")
{
  const ProblemSetup setup = small_setup();
  const DesignField d = initial_design(UniformInit{6.0}, setup.grid(), kBounds);
  OptimizerConfig cfg;
  cfg.max_iter = 0;
  const RunResult r = run(initial_state(d), setup, cfg);
  CHECK(r.state.design == d);
  CHECK(r.state.history.size() == 1u);
  CHECK(r.state.status == OptimizerStatus::max_iterations);
  CHECK(r.state.objective == doctest::Approx(evaluate_J(d, setup).value).epsilon(1e-14));
  CHECK(r.state.step == 0.0);
}

TEST_CASE("short runs are monotone, feasible, deterministic and resumable")
{
  const ProblemSetup setup = small_setup();
  const DesignField d = initial_design(UniformInit{6.0}, setup.grid(), kBounds);
  OptimizerConfig cfg;
  cfg.max_iter = 4;
  cfg.tol_kkt = 0.0;
  const RunResult a = run(initial_state(d), setup, cfg, ExecutionPolicy{1},
                          [](const OptimizerState &s, const IterationRecord &) {
                            CHECK(s.design.is_admissible());
                            CHECK(s.design.asymmetry() == 0.0);
                          });
  for (std::size_t k = 1; k < a.state.history.size(); k++)
    CHECK(a.state.history[k].objective <= a.state.history[k - 1].objective);
  CHECK(a.state.history.back().objective < a.state.history.front().objective);

  const RunResult b = run(initial_state(d), setup, cfg, ExecutionPolicy{2});
  REQUIRE(b.state.history.size() == a.state.history.size());
  for (std::size_t k = 0; k < a.state.history.size(); k++)
  {
    CHECK(b.state.history[k].objective == a.state.history[k].objective);
    CHECK(b.state.history[k].step == a.state.history[k].step);
  }

  // Interrupt after two iterations, checkpoint, resume.
  const auto dir = std::filesystem::temp_directory_path() / "superlens_resume_test";
  std::filesystem::remove_all(dir);
  OptimizerConfig first = cfg;
  first.max_iter = 2;
  const RunResult part = run(initial_state(d), setup, first);
  save_checkpoint(dir.string(), part.state);
  const RunResult rest = run(load_checkpoint(dir.string()), setup, cfg);
  REQUIRE(rest.state.history.size() == a.state.history.size());
  for (std::size_t k = 0; k < a.state.history.size(); k++)
    CHECK(rest.state.history[k].objective == a.state.history[k].objective);
  CHECK(rest.state.design == a.state.design);
  std::filesystem::remove_all(dir);
}

TEST_CASE("status names")
{
  CHECK(std::string(to_string(OptimizerStatus::stalled)) == "stalled");
  CHECK(std::string(to_string(OptimizerStatus::converged_kkt)) == "converged_kkt");
}
