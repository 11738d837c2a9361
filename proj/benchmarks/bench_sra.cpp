#include <benchmark/benchmark.h>

#include "kmono/distributions.hpp"
#include "kmono/empirical.hpp"
#include "kmono/estimator.hpp"
#include "kmono/spline.hpp"

using namespace kmono;

static void BM_FitSpline(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<unsigned>(state.range(1));
  const ProbSeq p = empirical_pmf(sample(TargetDist::spline(10, 2), n, 42));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit(p, k, Mode::Probability));
  }
}
BENCHMARK(BM_FitSpline)
    ->ArgsProduct({{20, 100, 1000, 10000}, {2, 3, 4}})
    ->Unit(benchmark::kMicrosecond);

static void BM_FitCone(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ProbSeq p = empirical_pmf(sample(TargetDist::poisson(0.35), n, 7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit(p, 3, Mode::Cone));
  }
}
BENCHMARK(BM_FitCone)->Arg(100)->Arg(10000)->Unit(benchmark::kMicrosecond);

static void BM_BasisColumn(benchmark::State& state) {
  const auto j = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    double s = 0.0;
    for (std::size_t i = 0; i <= j; ++i) s += q(4, j, i);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_BasisColumn)->Arg(10)->Arg(100)->Arg(1000);

static void BM_Sample(benchmark::State& state) {
  const TargetDist d = TargetDist::spline(10, 4);
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample(d, n, rng));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_Sample)->Arg(100)->Arg(100000);

BENCHMARK_MAIN();
