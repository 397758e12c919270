#include <benchmark/benchmark.h>

#include "paps/kernel.hpp"
#include "paps/mittag_leffler.hpp"

static void BM_MittagLefflerSeries(benchmark::State& state) {
  double z = -0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(paps::mittag_leffler(0.75, 0.75, z));
    z = z < -3.0 ? -0.5 : z - 0.01;
  }
}
BENCHMARK(BM_MittagLefflerSeries);

static void BM_MittagLefflerIntegral(benchmark::State& state) {
  double z = -6.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(paps::mittag_leffler(0.75, 0.75, z));
    z = z < -12.0 ? -6.0 : z - 0.01;
  }
}
BENCHMARK(BM_MittagLefflerIntegral);

static void BM_MittagLefflerAsymptotic(benchmark::State& state) {
  double z = -100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(paps::mittag_leffler(0.75, 0.75, z));
    z = z < -1000.0 ? -100.0 : z - 1.0;
  }
}
BENCHMARK(BM_MittagLefflerAsymptotic);

static void BM_ExponentialSumBuild(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(paps::ExponentialSum(0.75, 4.0, 0.01, 1e4).size());
}
BENCHMARK(BM_ExponentialSumBuild);
