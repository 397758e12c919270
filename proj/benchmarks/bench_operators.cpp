#include <benchmark/benchmark.h>

#include "paps/evosolve.hpp"
#include "paps/fracsolve.hpp"

namespace {
paps::SolverConfig config(double h) {
  paps::SolverConfig c;
  c.tolerance = 1e-8;
  c.grid = {0.0, 20.0, h};
  return c;
}
}  // namespace

static void BM_FractionalOperatorApply(benchmark::State& state) {
  const auto modes = static_cast<std::size_t>(state.range(0));
  const paps::FractionalOperator op(paps::FractionalKernelSpec::dirichlet(0.75, modes), config(0.01));
  const paps::NonlinearitySpec f =
      paps::NonlinearitySpec::mk_saturating(paps::Signal::constant(0.1), std::vector<double>(modes, 0.1));
  const paps::GridField u(op.times(), modes, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(u, f).values.data());
  state.counters["nodes"] = static_cast<double>(op.times().size());
}
BENCHMARK(BM_FractionalOperatorApply)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_GreenOperatorApply(benchmark::State& state) {
  const auto modes = static_cast<std::size_t>(state.range(0));
  std::vector<double> rates(modes);
  for (std::size_t k = 0; k < modes; ++k) rates[k] = static_cast<double>((k + 1) * (k + 1));
  const paps::GreenOperator op(paps::DichotomySpec(1.0, 1.0, rates), config(0.01), 25.0);
  const paps::GridField h(op.quadrature_times(), modes, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(h).values.data());
}
BENCHMARK(BM_GreenOperatorApply)->Arg(1)->Arg(16)->Unit(benchmark::kMillisecond);
