// bench.cpp — microbenchmarks for the solver hot paths (eigensolve, linear response,
// exact transfer, time integration, sweep cells).
#include <benchmark/benchmark.h>

#include "taasim/dynamics.hpp"
#include "taasim/scattering.hpp"
#include "taasim/spectral.hpp"
#include "taasim/sweep.hpp"

using namespace taasim;

namespace {

SystemParams sized(int N) {
  SystemParams p;
  p.N = N;
  return p;
}

void BM_Eigendecompose(benchmark::State& state) {
  const SystemParams p = sized(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(p));
}
BENCHMARK(BM_Eigendecompose)->Arg(7)->Arg(21)->Arg(51);

void BM_ScatterMarkovian(benchmark::State& state) {
  const SystemParams p = sized(static_cast<int>(state.range(0)));
  double delta = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scatter_markovian(p, delta));
    delta = -delta;  // defeat memoization-style CSE without changing the workload
  }
}
BENCHMARK(BM_ScatterMarkovian)->Arg(7)->Arg(21)->Arg(51);

void BM_ScatterExact(benchmark::State& state) {
  const SystemParams p = sized(static_cast<int>(state.range(0)));
  double delta = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scatter_exact(p, delta));
    delta = -delta;
  }
}
BENCHMARK(BM_ScatterExact)->Arg(7)->Arg(21)->Arg(51);

void BM_ScatterChannels(benchmark::State& state) {
  const SystemParams p = sized(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scatter_channels(p, 0.3));
}
BENCHMARK(BM_ScatterChannels)->Arg(7)->Arg(21);

void BM_Evolve(benchmark::State& state) {
  const SystemParams p = sized(7);
  const PulseSpec pulse;
  const double t_max = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evolve(p, pulse, t_max, 0.5));
}
BENCHMARK(BM_Evolve)->Arg(30)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_SweepCells(benchmark::State& state) {
  SweepSpec spec;
  spec.axis1 = {"delta", -2.0, 2.0, static_cast<int>(state.range(0)), "linear"};
  spec.observables = {"T", "R", "eta"};
  spec.workers = 1;  // measure per-cell cost, not scheduling
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SweepCells)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
