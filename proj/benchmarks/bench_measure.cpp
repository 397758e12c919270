#include <benchmark/benchmark.h>

#include "paps/funcspace.hpp"
#include "paps/measure.hpp"

static void BM_ErgodicMean(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0));
  const auto density = paps::MeasureDensity::exp_left();
  const auto signal = paps::Signal::arctan_shift();
  for (auto _ : state) {
    benchmark::DoNotOptimize(paps::ergodic_mean(signal, density, paps::StepanovExponent::of(1.0), r));
  }
}
BENCHMARK(BM_ErgodicMean)->Arg(10)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_StepanovNorm(benchmark::State& state) {
  const auto signal = paps::Signal::quasi_periodic({{1.0, 1.0, 0.0}, {1.0, 1.4142135623730951, 0.0}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(paps::bsp_norm(signal, paps::StepanovExponent::of(2.0), {-20.0, 20.0}).value);
  }
}
BENCHMARK(BM_StepanovNorm)->Unit(benchmark::kMillisecond);
