#include "generator.hpp"

#include "obspart/partition.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace obspart;

void BM_TheoremCheck(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  StructuredSystem sys = bench::random_system(n, 2.0, n / 10 + 1, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(theorem_check(sys));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TheoremCheck)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_EquivalenceClasses(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  StructuredSystem sys = bench::random_system(n, 2.0, 0, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(equivalence_classes(sys));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EquivalenceClasses)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_PlaceSensors(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  StructuredSystem sys = bench::random_system(n, 2.0, 0, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(place_sensors(sys));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PlaceSensors)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

} // namespace
