#include "generator.hpp"

#include "obspart/numeric.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace obspart;

void BM_GramianRank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  NumericRealization r = realize(bench::random_system(n, 2.0, 2, n), 0, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gramian_rank(r, kDefaultTolerance));
  }
}
BENCHMARK(BM_GramianRank)->RangeMultiplier(2)->Range(8, 64);

void BM_PbhCheck(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  NumericRealization r = realize(bench::random_system(n, 2.0, 2, n), 0, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pbh_check(r, kDefaultTolerance));
  }
}
BENCHMARK(BM_PbhCheck)->RangeMultiplier(2)->Range(8, 64);

} // namespace
