#include "generator.hpp"

#include "obspart/digraph.hpp"
#include "obspart/matching.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace obspart;

void BM_MaximumMatching(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  BipartiteGraph bg = bipartite_of(bench::random_system(n, 3.0, n / 20 + 1, n), true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(maximum_matching(bg));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MaximumMatching)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_Contractions(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  StructuredSystem sys = bench::random_system(n, 1.5, 0, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(contractions_of(sys));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Contractions)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

} // namespace
