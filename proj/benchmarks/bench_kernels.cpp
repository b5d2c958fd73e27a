#include <benchmark/benchmark.h>

#include <memory>

#include "cantor2w/construction.hpp"
#include "cantor2w/divergence.hpp"
#include "cantor2w/kernels.hpp"
#include "cantor2w/planar.hpp"

using namespace cantor2w;

namespace {

const Construction& thirds() {
  static const Construction c{ConstructionParams{}};
  return c;
}

void BM_Frac1dCantor(benchmark::State& state) {
  const Measure1D omega = thirds().omega();
  const double gamma = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(frac1d(0.5, omega, 0.0, gamma));
}
BENCHMARK(BM_Frac1dCantor)->RangeMultiplier(8)->Range(1, 1 << 12);

void BM_Frac1dAtoms(benchmark::State& state) {
  const Measure1D sigma = thirds().sigma(Placement::center());
  for (auto _ : state) benchmark::DoNotOptimize(frac1d(0.5, sigma, 0.0, 1e-3));
}
BENCHMARK(BM_Frac1dAtoms);

void BM_Riesz1dCantor(benchmark::State& state) {
  const Measure1D omega = thirds().omega();
  for (auto _ : state) benchmark::DoNotOptimize(riesz1d(0.4, omega, 0.0, 1e-3));
}
BENCHMARK(BM_Riesz1dCantor);

void BM_Frac2dFourRows(benchmark::State& state) {
  const double heights[] = {0.95, 0.78, 0.63, 0.5};
  const PlanarPair pair = build_planar(thirds().tree_ptr(), 4, heights, Placement::center());
  for (auto _ : state) benchmark::DoNotOptimize(frac2d({19.5, 0.6}, pair.omega, 0.0));
}
BENCHMARK(BM_Frac2dFourRows);

void BM_PoissonStandard(benchmark::State& state) {
  const Measure1D omega = thirds().omega();
  const Interval1D interval = Interval1D::from_bounds(0.0, 1.0 / 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(poisson_variant_standard(interval, omega, 0.0));
}
BENCHMARK(BM_PoissonStandard);

void BM_TestingPartialSum(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(testing_partial_sum(thirds(), k, TestKind::frac, Placement::center()));
  }
}
BENCHMARK(BM_TestingPartialSum)->DenseRange(4, 10, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
