#include <benchmark/benchmark.h>

#include <random>

#include "lgsbm/metrics.hpp"

namespace {

using namespace lgsbm;

LabelVector random_labels(std::size_t n, std::size_t q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<ClassId> d(0, static_cast<ClassId>(q - 1));
  std::vector<ClassId> z(n);
  for (auto& x : z) x = d(rng);
  return LabelVector(std::move(z), q);
}

void BM_GlobalErrorRate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const LabelVector z = random_labels(n, 3, 1), zh = random_labels(n, 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(global_error_rate(z, zh));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GlobalErrorRate)->RangeMultiplier(8)->Range(1 << 10, 1 << 19)->Complexity(benchmark::oN);

void BM_AlignLabels(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  const LabelVector z = random_labels(50000, q, 1), zh = random_labels(50000, q, 2);
  for (auto _ : state) benchmark::DoNotOptimize(align_labels(z, zh, q));
}
BENCHMARK(BM_AlignLabels)->Arg(3)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
