#include <benchmark/benchmark.h>

#include "eit/optics.hpp"

using namespace eit;

namespace {

template <class Fn>
void run_sweep(benchmark::State& state, Fn fn, optics::Backend backend) {
  const auto c = static_cast<Configuration>(state.range(1));
  const SystemParams p = reference_params(c);
  const optics::OpticalConstants k = optics::reference_constants(c);
  const optics::SweepRequest req{-300.0, 300.0, static_cast<int>(state.range(0)), backend};
  for (auto _ : state) benchmark::DoNotOptimize(fn(p, k, req));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& s) { run_sweep(s, optics::sweep, optics::Backend::Numeric); }
void BM_SweepSerial(benchmark::State& s) { run_sweep(s, optics::sweep_serial, optics::Backend::Numeric); }
void BM_SweepParallelAnalytic(benchmark::State& s) { run_sweep(s, optics::sweep, optics::Backend::Analytic); }
void BM_SweepSerialAnalytic(benchmark::State& s) { run_sweep(s, optics::sweep_serial, optics::Backend::Analytic); }

void grid(benchmark::internal::Benchmark* b) {
  for (const int points : {201, 2001, 20001})
    for (const auto c : {Configuration::Lambda, Configuration::Vee}) b->Args({points, static_cast<int>(c)});
  b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_SweepParallel)->Apply(grid);
BENCHMARK(BM_SweepSerial)->Apply(grid);
BENCHMARK(BM_SweepParallelAnalytic)->Apply(grid);
BENCHMARK(BM_SweepSerialAnalytic)->Apply(grid);

BENCHMARK_MAIN();
