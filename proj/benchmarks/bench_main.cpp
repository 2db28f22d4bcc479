#include <benchmark/benchmark.h>

#include "tailkit/hypergraph.hpp"
#include "tailkit/linsys.hpp"
#include "tailkit/moment_bounds.hpp"
#include "tailkit/rooted.hpp"
#include "tailkit/sim.hpp"

using namespace tailkit;

static void BM_SubsetCensus(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto h = solution_hypergraph(standard_system(StandardSystem::ap, 3), n);
  for (auto _ : state) benchmark::DoNotOptimize(SubsetCensus::enumerate(h).max_count());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SubsetCensus)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

static void BM_SolutionSets(benchmark::State& state) {
  const auto a = standard_system(StandardSystem::schur, 3);
  const auto n = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_solution_sets(a, n).size());
}
BENCHMARK(BM_SolutionSets)->RangeMultiplier(4)->Range(64, 1024);

static void BM_MarkovBound(benchmark::State& state) {
  const auto h = solution_hypergraph(standard_system(StandardSystem::ap, 3), 200);
  for (auto _ : state) benchmark::DoNotOptimize(markov_tail_upper(h, 0.2, 2, 64).bound);
}
BENCHMARK(BM_MarkovBound);

static void BM_MinExponentBase(benchmark::State& state) {
  const auto g = family_graph({ExampleFamily::rooted_clique, static_cast<unsigned>(state.range(0)), 0, 0});
  for (auto _ : state) benchmark::DoNotOptimize(min_exponent_base(g, 1000, 0.1).value);
}
BENCHMARK(BM_MinExponentBase)->DenseRange(3, 6);

static void BM_RootedCopies(benchmark::State& state) {
  const auto g = family_graph({ExampleFamily::rooted_cycle, 5, 0, 0});
  const auto host = sample_gnp(static_cast<unsigned>(state.range(0)), 0.3, 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(count_rooted_copies(host, 1, g));
}
BENCHMARK(BM_RootedCopies)->RangeMultiplier(2)->Range(16, 64);

static void BM_SampleGnp(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  std::uint64_t trial = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_gnp(n, 0.1, 7, trial++).edge_count());
}
BENCHMARK(BM_SampleGnp)->RangeMultiplier(4)->Range(16, 256);
BENCHMARK_MAIN();
