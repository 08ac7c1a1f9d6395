#pragma once

#include "obspart/system.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace obspart {

/// Node of a SystemDigraph: states occupy [0, n), measurements [n, n + p).
using NodeId = std::size_t;

/// Directed graph over X ∪ Y with an edge x_j -> x_i for every a_ij != 0
/// and x_j -> y_i for every h_ij != 0. Immutable once built.
class SystemDigraph {
public:
  SystemDigraph() = default;
  SystemDigraph(std::size_t n, std::size_t p, std::vector<std::pair<NodeId, NodeId>> edges);

  std::size_t state_count() const { return n_; }
  std::size_t measurement_count() const { return p_; }
  std::size_t node_count() const { return n_ + p_; }

  bool is_state(NodeId v) const { return v < n_; }
  bool is_measurement(NodeId v) const { return v >= n_ && v < n_ + p_; }
  NodeId state_node(std::size_t i) const { return i; }
  NodeId measurement_node(std::size_t i) const { return n_ + i; }

  std::span<const NodeId> successors(NodeId v) const;
  std::span<const NodeId> predecessors(NodeId v) const;

  /// All edges as (from, to), sorted.
  const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }

  /// "x3" or "y1".
  std::string label(NodeId v) const;

private:
  std::size_t n_ = 0;
  std::size_t p_ = 0;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeId> in_sources_;
};

SystemDigraph build_digraph(const StructuredSystem& sys);

/// Inverse of build_digraph.
StructuredSystem to_system(const SystemDigraph& dg);

/// Every node with a directed path into `targets`, targets included.
/// Sorted. Throws InputError on an unknown node id.
std::vector<NodeId> reverse_reachable(const SystemDigraph& dg, std::span<const NodeId> targets);

/// Bipartite representation: begin nodes are the states X+ (one per
/// column of A), end nodes are X- followed by Y- (one per row of [A; H]).
/// An edge (b, e) exists for each structural nonzero in column b, row e.
class BipartiteGraph {
public:
  BipartiteGraph() = default;
  BipartiteGraph(std::size_t begin_count, std::size_t end_count,
                 std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t begin_count() const { return begin_count_; }
  std::size_t end_count() const { return end_count_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// End nodes adjacent to begin node b, ascending.
  std::span<const std::size_t> ends_of(std::size_t b) const;
  /// Begin nodes adjacent to end node e, ascending.
  std::span<const std::size_t> begins_of(std::size_t e) const;
  bool has_edge(std::size_t b, std::size_t e) const;

  /// (begin, end) pairs in lexical order.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

private:
  std::size_t begin_count_ = 0;
  std::size_t end_count_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::size_t> begin_offsets_;
  std::vector<std::size_t> begin_adj_;
  std::vector<std::size_t> end_offsets_;
  std::vector<std::size_t> end_adj_;
};

/// Gamma_A of the digraph. End node i < n is x_i-, end node n + k is y_k-.
BipartiteGraph build_bipartite(const SystemDigraph& dg);

/// Bipartite graph of A alone, or of the stacked [A; H].
BipartiteGraph bipartite_of(const StructuredSystem& sys, bool include_h = true);

} // namespace obspart
