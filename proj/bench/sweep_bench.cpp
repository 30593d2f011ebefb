#include <benchmark/benchmark.h>

#include "mhs/sweep/sweep.hpp"

using mhs::sweep::Execution;

namespace {

Execution execution(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void identity_sweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mhs::sweep::identity_sweep(1, 20, execution(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void float_identity_sweep(benchmark::State& state) {
  const auto backend = mhs::Backend::floating(1e-9);
  for (auto _ : state) benchmark::DoNotOptimize(mhs::sweep::identity_sweep(1, 20, execution(state), backend));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void curve_sweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mhs::sweep::curve_sweep(1, 2, 5, execution(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(identity_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(float_identity_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(curve_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
