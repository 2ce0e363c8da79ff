#include <benchmark/benchmark.h>

#include "twolayer/commands.hpp"
#include "twolayer/forward.hpp"
#include "twolayer/inverse.hpp"

using namespace twolayer;

namespace {

const Medium kMedium(1.0, 1.5);
const SourceSpec kSource = SourceSpec::bump(-0.4, 0.6, {1.0, 0.5});

void BM_BoundarySweepSerial(benchmark::State& state) {
  const FrequencyGrid grid = FrequencyGrid::uniform(40.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(boundary_sweep_serial(kSource, kMedium, grid, {}));
}

void BM_BoundarySweepParallel(benchmark::State& state) {
  const FrequencyGrid grid = FrequencyGrid::uniform(40.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(boundary_sweep(kSource, kMedium, grid, {}));
}

void BM_AssembleSerial(benchmark::State& state) {
  const FrequencyGrid grid = FrequencyGrid::uniform(40.0, 200);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_operator_serial(kMedium, grid, n, -0.9, 0.9));
}

void BM_AssembleParallel(benchmark::State& state) {
  const FrequencyGrid grid = FrequencyGrid::uniform(40.0, 200);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_operator(kMedium, grid, n, -0.9, 0.9));
}

RunConfig small_sweep() {
  RunConfig c;
  c.n_omega = 100;
  c.n_basis = 81;
  c.sweep_K = {10.0, 20.0};
  c.sweep_eps = {0.0, 1e-2};
  c.sweep_n = {1, 2};
  c.sweep_trials = 2;
  return c;
}

void BM_SweepSerial(benchmark::State& state) {
  const RunConfig c = small_sweep();
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(c));
}

void BM_SweepParallel(benchmark::State& state) {
  const RunConfig c = small_sweep();
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(c));
}

}  // namespace

BENCHMARK(BM_BoundarySweepSerial)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundarySweepParallel)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleSerial)->Arg(51)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleParallel)->Arg(51)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
