// Serial reference vs OpenMP kernel on the two hot loops.
#include <benchmark/benchmark.h>

#include "heytica/amalgam.hpp"
#include "heytica/catalog.hpp"

using namespace heytica;

static Exec mode(const benchmark::State& s) { return s.range(0) ? Exec::Parallel : Exec::Serial; }

static void BM_enumerate_posets(benchmark::State& state) {
  const Exec e = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_posets(6, e));
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_enumerate_posets)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// no counterexample exists here, so both versions scan every pair
static void BM_independence_scan(benchmark::State& state) {
  const Exec e = mode(state);
  HAlg h = algebra_of(antichain(7));
  std::vector<Bits> all = h.elements();
  for (auto _ : state) benchmark::DoNotOptimize(independence_counterexample(all, all, all, e));
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_independence_scan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
