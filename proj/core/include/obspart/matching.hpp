#pragma once

#include "obspart/digraph.hpp"
#include "obspart/system.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace obspart {

inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

/// A matching of a BipartiteGraph stored as mate arrays on both sides.
struct Matching {
  std::vector<std::size_t> mate_of_begin;
  std::vector<std::size_t> mate_of_end;

  Matching() = default;
  Matching(std::size_t begin_count, std::size_t end_count)
      : mate_of_begin(begin_count, kUnmatched), mate_of_end(end_count, kUnmatched) {}

  std::size_t size() const;
  bool begin_matched(std::size_t b) const { return mate_of_begin[b] != kUnmatched; }
  bool end_matched(std::size_t e) const { return mate_of_end[e] != kUnmatched; }
  /// delta M+: begin nodes incident to no matching edge, ascending.
  std::vector<std::size_t> unmatched_begin() const;
  /// Matching edges as (begin, end), ascending by begin.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
};

/// Hopcroft-Karp, O(E sqrt(V)). Free begin nodes are scanned in index
/// order and adjacency in ascending end index, so the result is
/// reproducible for a given graph.
Matching maximum_matching(const BipartiteGraph& bg);

/// Hopcroft-Karp phases starting from `initial`. Every node matched in
/// `initial` stays matched in the result.
Matching maximum_matching(const BipartiteGraph& bg, Matching initial);

/// Single augmenting-path search from a free begin node. Returns false
/// (and leaves `m` unchanged) when no augmenting path starts at `b`.
bool augment_from_begin(const BipartiteGraph& bg, Matching& m, std::size_t b);

/// Single augmenting-path search from a free end node.
bool augment_from_end(const BipartiteGraph& bg, Matching& m, std::size_t e);

/// Throws InconsistencyError unless `m` is a matching of `bg`.
void check_matching(const BipartiteGraph& bg, const Matching& m);

/// Structural rank of A, or of [A; H] when include_h is set.
std::size_t s_rank(const StructuredSystem& sys, bool include_h);

/// Gamma^M_A: unmatched edges run begin -> end, matched edges end -> begin.
/// Node ids: begin b is b, end e is begin_count + e.
class AuxiliaryGraph {
public:
  AuxiliaryGraph() = default;
  AuxiliaryGraph(std::size_t begin_count, std::size_t end_count,
                 std::vector<std::pair<std::size_t, std::size_t>> arcs);

  std::size_t begin_count() const { return begin_count_; }
  std::size_t end_count() const { return end_count_; }
  std::size_t node_count() const { return begin_count_ + end_count_; }
  std::size_t begin_node(std::size_t b) const { return b; }
  std::size_t end_node(std::size_t e) const { return begin_count_ + e; }
  bool is_begin(std::size_t v) const { return v < begin_count_; }

  std::span<const std::size_t> successors(std::size_t v) const;
  /// Directed arcs (from, to), sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& arcs() const { return arcs_; }

private:
  std::size_t begin_count_ = 0;
  std::size_t end_count_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> arcs_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> targets_;
};

AuxiliaryGraph build_auxiliary(const BipartiteGraph& bg, const Matching& m);

/// A set of states that take turns being unmatched across the maximum
/// matchings. `deficiency` of them are unmatched in every maximum
/// matching, so the set needs that many sensors. With deficiency 1 every
/// member is interchangeable (a Type-alpha equivalence class).
struct Contraction {
  std::size_t id = 0;
  StateSet members;
  /// Unmatched nodes of the matching the contraction was grown from.
  StateSet seeds;
  std::size_t witness_unmatched = 0;

  std::size_t deficiency() const { return seeds.size(); }
  bool is_simple() const { return seeds.size() == 1; }
};

/// Grows the begin-side states reachable from each unmatched begin node
/// in `aux`. Seeds whose reachable sets meet are fused into one
/// contraction whose deficiency counts the fused seeds. Ordered by
/// smallest member.
std::vector<Contraction> contractions(const AuxiliaryGraph& aux, const Matching& m);

/// contractions() of A's bipartite graph under its maximum matching.
std::vector<Contraction> contractions_of(const StructuredSystem& sys, bool include_h = false);

} // namespace obspart
