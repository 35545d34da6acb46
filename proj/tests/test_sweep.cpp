#include <doctest.h>

#include "superlens/sweep.hpp"

using namespace superlens;

namespace
{

ProblemSetup setup_for(int alphas)
{
  const Grid g(24, 12, kPi);
  return ProblemSetup(g, PhysicalParameters{}, make_quadrature(alphas, 1.0, 11), 11);
}

}  // namespace

TEST_CASE("parallel sweep is bit-identical to the serial reference")
{
  const ProblemSetup s = setup_for(5);
  const DesignField d = initial_design(RandomInit{17}, s.grid(), AdmissibleBounds{1.0, 12.0, 0.0, 1.0});
  const SweepResult ref = kernels::sweep_serial(d, s, SweepMode::forward_and_adjoint);
  for (int jobs : {1, 2, 3, 8})
  {
    const SweepResult par = kernels::sweep_parallel(d, s, SweepMode::forward_and_adjoint, jobs);
    CHECK(par.objective == ref.objective);
    REQUIRE(par.gradient.size() == ref.gradient.size());
    bool same = true;
    for (std::size_t c = 0; c < ref.gradient.size(); c++)
      same = same && par.gradient[c] == ref.gradient[c];
    CHECK(same);
    for (std::size_t k = 0; k < ref.per_alpha.size(); k++)
      CHECK(par.per_alpha[k].forward.values == ref.per_alpha[k].forward.values);
  }
  CHECK(sweep(d, s, SweepMode::forward_and_adjoint, ExecutionPolicy{0}).objective == ref.objective);
}

TEST_CASE("forward mode leaves the gradient empty")
{
  const ProblemSetup s = setup_for(2);
  const DesignField d(s.grid(), AdmissibleBounds{1.0, 12.0, 0.0, 0.0}, Complex(3.0, 0.0));
  const SweepResult r = sweep(d, s, SweepMode::forward);
  CHECK(r.gradient.empty());
  CHECK_FALSE(r.per_alpha[0].adjoint.has_value());
  CHECK(r.objective > 0.0);
}

TEST_CASE("mismatched grids are rejected by every kernel")
{
  const ProblemSetup s = setup_for(2);
  const DesignField d(Grid(32, 12, kPi), AdmissibleBounds{}, Complex(3.0, 0.0));
  CHECK_THROWS(sweep(d, s, SweepMode::forward, ExecutionPolicy{1}));
  CHECK_THROWS(sweep(d, s, SweepMode::forward, ExecutionPolicy{2}));
}
