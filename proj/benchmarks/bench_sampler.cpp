#include <benchmark/benchmark.h>

#include "lgsbm/sampler.hpp"
#include "lgsbm/simulation.hpp"

namespace {

using namespace lgsbm;

struct CountingSink {
  std::uint64_t edges = 0;
  void edge(NodeId, NodeId) noexcept { ++edges; }
};

void BM_StreamReference(benchmark::State& state) {
  const ModelParams p = reference_design();
  const auto n = static_cast<std::size_t>(state.range(0));
  const LabelVector z = sample_labels(p, n, 1);
  std::uint64_t edges = 0;
  Seed seed = 2;
  for (auto _ : state) {
    CountingSink sink;
    stream_graph(p, z, seed++, sink);
    edges += sink.edges;
  }
  state.counters["edges/s"] = benchmark::Counter(static_cast<double>(edges), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_StreamReference)->Arg(1000)->Arg(5000)->Arg(15000)->Unit(benchmark::kMillisecond);

void BM_SparseBlock(benchmark::State& state) {
  const std::vector<double> alpha{1.0};
  const double prob = 1.0 / static_cast<double>(state.range(1));
  const ModelParams p = validate_params(1, alpha, {{prob}});
  const auto n = static_cast<std::size_t>(state.range(0));
  const LabelVector z(std::vector<ClassId>(n, 0), 1);
  Seed seed = 3;
  for (auto _ : state) {
    CountingSink sink;
    stream_graph(p, z, seed++, sink);
    benchmark::DoNotOptimize(sink.edges);
  }
}
BENCHMARK(BM_SparseBlock)->Args({20000, 10})->Args({20000, 40})->Args({20000, 1000})->Unit(benchmark::kMillisecond);

void BM_SampleDegrees(benchmark::State& state) {
  const ModelParams p = reference_design();
  const auto n = static_cast<std::size_t>(state.range(0));
  const LabelVector z = sample_labels(p, n, 1);
  Seed seed = 4;
  for (auto _ : state) benchmark::DoNotOptimize(sample_degrees(p, z, seed++));
}
BENCHMARK(BM_SampleDegrees)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
