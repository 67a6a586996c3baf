// Serial reference vs OpenMP kernels. Thread count for the parallel variants comes from the
// benchmark argument. Times are wall clock; on a single-core machine the comparison measures
// scheduling overhead.

#include <benchmark/benchmark.h>

#include "siegel/intersections.hpp"
#include "siegel/kernels.hpp"

using namespace siegel;

static void BM_RoundTripSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(roundtrip_corpus_serial(5, 2000, 1));
}
BENCHMARK(BM_RoundTripSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_RoundTripParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(roundtrip_corpus_parallel(5, 2000, 1, threads));
}
BENCHMARK(BM_RoundTripParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_ReductionSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reduction_corpus_serial(4, 500, 1));
}
BENCHMARK(BM_ReductionSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_ReductionParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reduction_corpus_parallel(4, 500, 1, threads));
}
BENCHMARK(BM_ReductionParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_MonteCarloSerial(benchmark::State& state) {
  const SiegelParams p = SiegelParams::minimal();
  for (auto _ : state)
    benchmark::DoNotOptimize(siegel_density_mc_serial(3, p, p.t / 16, 100000, 1));
}
BENCHMARK(BM_MonteCarloSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_MonteCarloParallel(benchmark::State& state) {
  const SiegelParams p = SiegelParams::minimal();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(siegel_density_mc_parallel(3, p, p.t / 16, 100000, 1, threads));
}
BENCHMARK(BM_MonteCarloParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_EnumerationN2(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  WitnessSearchConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        enumerate_intersections(2, SiegelParams::minimal(), cfg, 1, -1, threads));
}
BENCHMARK(BM_EnumerationN2)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_GrowthSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(growth_table(300));
}
BENCHMARK(BM_GrowthSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_GrowthParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(growth_table_parallel(300, threads));
}
BENCHMARK(BM_GrowthParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
