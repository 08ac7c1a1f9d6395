#include "corpus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace obspart::testing {

std::size_t Rng::below(std::size_t bound) {
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t b = bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % b;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % b);
}

StructuredSystem random_system(Rng& rng, const CorpusOptions& opts) {
  StructuredSystem sys;
  sys.n = rng.between(opts.min_n, opts.max_n);
  double density = opts.min_density + (opts.max_density - opts.min_density) * rng.unit();
  auto edges = std::min<std::size_t>(static_cast<std::size_t>(std::lround(density * static_cast<double>(sys.n))),
                                     sys.n * sys.n);
  std::set<Entry> chosen;
  while (chosen.size() < edges) {
    chosen.insert({rng.below(sys.n), rng.below(sys.n)});
  }
  sys.a_pattern.assign(chosen.begin(), chosen.end());
  std::size_t sensors = std::min(sys.n, rng.between(opts.min_sensors, opts.max_sensors));
  std::set<std::size_t> states;
  while (states.size() < sensors) {
    states.insert(rng.below(sys.n));
  }
  for (std::size_t s : states) {
    sys.h_pattern.push_back({sys.p++, s});
  }
  return sys;
}

std::vector<StructuredSystem> corpus(std::size_t count, std::uint64_t seed, const CorpusOptions& opts) {
  Rng rng(seed);
  std::vector<StructuredSystem> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(random_system(rng, opts));
  }
  return out;
}

} // namespace obspart::testing
