#include <benchmark/benchmark.h>

#include <numeric>

#include "lgsbm/mixed_separation.hpp"
#include "lgsbm/sampler.hpp"

namespace {

using namespace lgsbm;

Graph symmetric_graph(std::size_t n) {
  const std::vector<double> alpha{0.5, 0.5};
  const ModelParams p = validate_params(2, alpha, {{0.8, 0.2}, {0.2, 0.8}});
  return sample_graph(p, sample_labels(p, n, 1), 2);
}

void BM_PairStatistics(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = symmetric_graph(n);
  const Adjacency adj(g);
  std::vector<NodeId> all(n);
  std::iota(all.begin(), all.end(), NodeId{0});
  for (auto _ : state) benchmark::DoNotOptimize(pair_statistics(adj, all));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PairStatistics)->RangeMultiplier(2)->Range(250, 2000)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNCubed);

void BM_SplitMixedGroup(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = symmetric_graph(n);
  std::vector<NodeId> all(n);
  std::iota(all.begin(), all.end(), NodeId{0});
  for (auto _ : state) benchmark::DoNotOptimize(split_mixed_group(g, all));
}
BENCHMARK(BM_SplitMixedGroup)->Arg(600)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
