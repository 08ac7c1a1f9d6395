#pragma once

#include "obspart/system.hpp"

#include <random>
#include <set>

namespace obspart::bench {

// Random pattern with `density` edges per state and `sensors` dedicated sensors.
inline StructuredSystem random_system(std::size_t n, double density, std::size_t sensors, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::set<Entry> edges;
  const auto target = static_cast<std::size_t>(density * static_cast<double>(n));
  while (edges.size() < target) {
    edges.insert({pick(rng), pick(rng)});
  }
  StructuredSystem sys;
  sys.n = n;
  sys.a_pattern.assign(edges.begin(), edges.end());
  StateSet measured;
  for (std::size_t k = 0; k < sensors; ++k) {
    measured.push_back(pick(rng));
  }
  return with_state_sensors(sys, measured);
}

} // namespace obspart::bench
