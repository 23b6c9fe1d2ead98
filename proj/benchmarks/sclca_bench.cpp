#include <benchmark/benchmark.h>

#include "sclca/baselines.hpp"
#include "sclca/global.hpp"
#include "sclca/lca.hpp"

using namespace sclca;

namespace {

Instance make(std::size_t n, std::size_t s, std::size_t t) {
  return generate({n, std::max((n + s - 1) / s, (n + 1) / 2), s, t, InstanceKind::UniformRandom, 1});
}

template <RunResult (*Run)(const SetSystem&, const RandomTape&, const AlgoParams&)>
void BM_Global(benchmark::State& state) {
  const auto inst = make(static_cast<std::size_t>(state.range(0)), 16, 16);
  const auto params = AlgoParams::for_system(inst.system);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto r = Run(inst.system, RandomTape(seed++), params);
    benchmark::DoNotOptimize(r.report.cover_size);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK_TEMPLATE(BM_Global, run_base)->RangeMultiplier(10)->Range(1000, 100000);
BENCHMARK_TEMPLATE(BM_Global, run_generic)->RangeMultiplier(10)->Range(1000, 100000);
BENCHMARK_TEMPLATE(BM_Global, run_sqrt)->RangeMultiplier(10)->Range(1000, 100000);
BENCHMARK_TEMPLATE(BM_Global, run_recsplit)->RangeMultiplier(10)->Range(1000, 100000);

void BM_Greedy(benchmark::State& state) {
  const auto inst = make(static_cast<std::size_t>(state.range(0)), 16, 16);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_cover(inst.system).cover_size());
}
BENCHMARK(BM_Greedy)->RangeMultiplier(10)->Range(1000, 100000);

template <bool (*Oracle)(OracleContext&, SetId)>
void BM_OracleSet(benchmark::State& state) {
  const auto inst = make(static_cast<std::size_t>(state.range(0)), 8, 8);
  const auto params = AlgoParams::for_system(inst.system);
  const auto m = static_cast<SetId>(inst.system.num_sets());
  SetId next = 0;
  std::uint64_t queries = 0;
  for (auto _ : state) {
    OracleContext ctx(inst.system, RandomTape(7), params);
    benchmark::DoNotOptimize(Oracle(ctx, next));
    queries += ctx.meter.count();
    next = (next + 97) % m;
  }
  state.counters["queries/call"] =
      benchmark::Counter(static_cast<double>(queries), benchmark::Counter::kAvgIterations);
}

BENCHMARK_TEMPLATE(BM_OracleSet, oracle_sqrt_set)->RangeMultiplier(10)->Range(200, 20000);
BENCHMARK_TEMPLATE(BM_OracleSet, oracle_recsplit_set)->RangeMultiplier(10)->Range(200, 20000);

void BM_ExactMinCover(benchmark::State& state) {
  const auto inst = generate({48, static_cast<std::size_t>(state.range(0)), 8, 4,
                              InstanceKind::PlantedCover, 3});
  for (auto _ : state) benchmark::DoNotOptimize(exact_min_cover(inst.system).exact_opt);
}
BENCHMARK(BM_ExactMinCover)->DenseRange(12, 24, 6);

}  // namespace

BENCHMARK_MAIN();
