// Serial reference vs OpenMP kernels: sweep grid evaluation and the
// Green's-function mean quadrature.

#include <benchmark/benchmark.h>

#include "deginv/degeneration.hpp"
#include "deginv/invariants.hpp"

namespace {

using namespace deginv;

const SweepGrid& sep_grid() {
  static const SweepGrid g = SweepGrid::separating(SweepGrid::log_spaced(1e-2, 1e-5, 7));
  return g;
}

const SeparatingFamily kSep{{0.0, 1.0}, {0.0, 1.5}};

void BM_SweepSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(sep_grid(), kSep));
}

void BM_SweepParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(sep_grid(), kSep, {}, threads));
}

void BM_GreenMeanSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(green_torus_mean_serial({0.0, 1.0}, n));
}

void BM_GreenMeanParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(green_torus_mean({0.0, 1.0}, n, {}, threads));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GreenMeanSerial)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GreenMeanParallel)->Args({100, 1})->Args({400, 1})->Args({400, 2})->Args({400, 4})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
