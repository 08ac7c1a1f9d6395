#pragma once

// Reference implementations used only by tests. None of them shares code
// with the library's algorithms: matchings are enumerated exhaustively,
// reachability uses a transitive closure, and ranks come from an
// independent Gram-Schmidt / LU computation on separately drawn values.

#include "obspart/digraph.hpp"
#include "obspart/system.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <set>
#include <vector>

namespace obspart::testing {

/// Every maximum matching of a bipartite graph, as mate-of-begin vectors
/// (kNone for an unmatched begin node). Exponential; keep graphs small.
inline constexpr std::size_t kNone = static_cast<std::size_t>(-1);
std::vector<std::vector<std::size_t>> all_maximum_matchings(const BipartiteGraph& bg);
std::size_t brute_matching_size(const BipartiteGraph& bg);

/// reach[u][v]: a directed path of length >= 0 from u to v.
std::vector<std::vector<bool>> transitive_closure(const SystemDigraph& dg);

/// Whether some permutation sigma of `states` has an edge sigma(s) -> s
/// for every s, i.e. a disjoint cycle family covers them.
bool brute_cycle_cover(const StructuredSystem& sys, const std::vector<std::size_t>& states);

/// Dense realization with values uniform in +-[0.5, 2], independent of the
/// library's generator.
struct Dense {
  Eigen::MatrixXd a;
  Eigen::MatrixXd h;
};
Dense oracle_realize(const StructuredSystem& sys, std::uint64_t seed);

/// Dimension of span{h A^k} computed by Krylov expansion with re-orthogonalized
/// Gram-Schmidt.
std::size_t krylov_rank(const Eigen::MatrixXd& a, const Eigen::MatrixXd& h);

/// Generic observable-subspace dimension: maximum over a few draws.
std::size_t oracle_observability_rank(const StructuredSystem& sys, std::uint64_t seed = 99);
bool oracle_observable(const StructuredSystem& sys, std::uint64_t seed = 99);

/// Generic rank of A or [A; H] via full-pivot LU, maximum over a few draws.
std::size_t oracle_generic_rank(const StructuredSystem& sys, bool include_h, std::uint64_t seed = 99);

/// Smallest k such that some k dedicated state sensors (added to H) make
/// the system observable, plus every set of that size that works.
struct BruteForcePlacement {
  std::size_t count = 0;
  std::vector<std::vector<std::size_t>> sets;
};
BruteForcePlacement brute_force_min_sensors(const StructuredSystem& sys, std::uint64_t seed = 99);

} // namespace obspart::testing
