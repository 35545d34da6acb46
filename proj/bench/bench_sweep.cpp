// Serial reference vs OpenMP fan-out over alpha for one objective-and-gradient sweep.

#include <benchmark/benchmark.h>

#include "superlens/sweep.hpp"

using namespace superlens;

namespace
{

struct Fixture
{
  Grid grid{64, 48, kPi};
  int n_trunc = default_n_trunc(1.0, 20, 64);
  ProblemSetup setup{grid, PhysicalParameters{}, make_quadrature(8, 1.0, n_trunc), n_trunc};
  DesignField design = initial_design(RandomInit{1}, grid, AdmissibleBounds{1.0, 12.0, 0.0, 0.0});
};

const Fixture &fixture()
{
  static const Fixture f;
  return f;
}

void BM_sweep_serial(benchmark::State &state)
{
  const auto &f = fixture();
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(kernels::sweep_serial(f.design, f.setup, SweepMode::forward_and_adjoint));
  }
}

void BM_sweep_parallel(benchmark::State &state)
{
  const auto &f = fixture();
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(
        kernels::sweep_parallel(f.design, f.setup, SweepMode::forward_and_adjoint, jobs));
  }
}

}  // namespace

BENCHMARK(BM_sweep_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_sweep_parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
