#include <benchmark/benchmark.h>

#include "topicweave/community.hpp"

namespace topicweave {
namespace {

// Sparse random graphs with mean degree 8.
void BM_FastGreedy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto rng = trial_rng(7, 0);
  const auto g = random_gnm(n, 4LL * n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(fast_greedy(g).q);
  state.SetComplexityN(n);
}
BENCHMARK(BM_FastGreedy)->RangeMultiplier(10)->Range(100, 10000)->Unit(benchmark::kMillisecond)
    ->Complexity();

// Cliques of 10 nodes chained into a ring; the modular case the greedy
// merge order is built for.
void BM_FastGreedyPlanted(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Edge> edges;
  for (int base = 0; base + 10 <= n; base += 10) {
    for (int i = 0; i < 10; ++i)
      for (int j = i + 1; j < 10; ++j) edges.push_back({base + i, base + j});
    edges.push_back({base + 9, (base + 10) % n});
  }
  const auto g = UndirectedGraph::from_edges(n, edges);
  for (auto _ : state) benchmark::DoNotOptimize(fast_greedy(g).q);
  state.SetComplexityN(n);
}
BENCHMARK(BM_FastGreedyPlanted)->RangeMultiplier(10)->Range(100, 10000)
    ->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNLogN);

void BM_RandomGnm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto rng = trial_rng(8, 0);
  for (auto _ : state) benchmark::DoNotOptimize(random_gnm(n, 4LL * n, rng).num_edges());
}
BENCHMARK(BM_RandomGnm)->Arg(1000)->Arg(10000);

void BM_NormalizedModularity(benchmark::State& state) {
  auto rng = trial_rng(9, 0);
  const auto g = random_gnm(300, 1500, rng);
  for (auto _ : state) benchmark::DoNotOptimize(normalized_modularity(g, 30, 42).q_n);
}
BENCHMARK(BM_NormalizedModularity)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace topicweave
