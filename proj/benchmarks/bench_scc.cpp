#include "generator.hpp"

#include "obspart/digraph.hpp"
#include "obspart/scc.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace obspart;

void BM_Decompose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SystemDigraph dg = build_digraph(bench::random_system(n, 2.0, n / 20 + 1, n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(dg));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Decompose)->RangeMultiplier(4)->Range(64, 65536)->Complexity();

void BM_Accessibility(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SystemDigraph dg = build_digraph(bench::random_system(n, 2.0, n / 20 + 1, n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(accessibility_check(dg));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Accessibility)->RangeMultiplier(4)->Range(64, 65536)->Complexity();

} // namespace
