#include <benchmark/benchmark.h>

#include "lgsbm/lg_classify.hpp"
#include "lgsbm/model_select.hpp"
#include "lgsbm/sampler.hpp"
#include "lgsbm/simulation.hpp"

namespace {

using namespace lgsbm;

DegreeProfile reference_profile(std::size_t n) {
  const ModelParams p = reference_design();
  const LabelVector z = sample_labels(p, n, 1);
  return degree_profile_from_degrees(n, sample_degrees(p, z, 2));
}

void BM_LgPartition(benchmark::State& state) {
  const DegreeProfile prof = reference_profile(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lg_partition(prof, 3));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LgPartition)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oNLogN);

void BM_DegreeProfile(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ModelParams p = reference_design();
  const auto deg = sample_degrees(p, sample_labels(p, n, 1), 2);
  for (auto _ : state) benchmark::DoNotOptimize(degree_profile_from_degrees(n, deg));
}
BENCHMARK(BM_DegreeProfile)->Arg(1 << 12)->Arg(1 << 16);

void BM_SelectQ(benchmark::State& state) {
  const DegreeProfile prof = reference_profile(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(select_q(prof, 30));
}
BENCHMARK(BM_SelectQ)->Arg(5000)->Arg(20000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
