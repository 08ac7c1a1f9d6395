#include "obspart/digraph.hpp"

#include "obspart/errors.hpp"

#include <algorithm>
#include <deque>

namespace obspart {

namespace {

// Compressed adjacency for `count` nodes from sorted-or-not (key, value) pairs.
void compress(std::size_t count, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
              bool by_first, std::vector<std::size_t>& offsets, std::vector<std::size_t>& adj) {
  offsets.assign(count + 1, 0);
  for (const auto& [a, b] : pairs) {
    ++offsets[(by_first ? a : b) + 1];
  }
  for (std::size_t i = 0; i < count; ++i) {
    offsets[i + 1] += offsets[i];
  }
  adj.assign(pairs.size(), 0);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [a, b] : pairs) {
    adj[cursor[by_first ? a : b]++] = by_first ? b : a;
  }
  for (std::size_t i = 0; i < count; ++i) {
    std::sort(adj.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
              adj.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]));
  }
}

} // namespace

SystemDigraph::SystemDigraph(std::size_t n, std::size_t p,
                             std::vector<std::pair<NodeId, NodeId>> edges)
    : n_(n), p_(p), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  for (const auto& [from, to] : edges_) {
    if (from >= n_ || to >= n_ + p_) {
      throw InputError("edge (" + std::to_string(from) + ", " + std::to_string(to) +
                       ") leaves the node range or starts at a measurement");
    }
  }
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw InputError("duplicate digraph edge");
  }
  compress(node_count(), edges_, true, out_offsets_, out_targets_);
  compress(node_count(), edges_, false, in_offsets_, in_sources_);
}

std::span<const NodeId> SystemDigraph::successors(NodeId v) const {
  return {out_targets_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const NodeId> SystemDigraph::predecessors(NodeId v) const {
  return {in_sources_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

std::string SystemDigraph::label(NodeId v) const {
  return is_state(v) ? "x" + std::to_string(v + 1) : "y" + std::to_string(v - n_ + 1);
}

SystemDigraph build_digraph(const StructuredSystem& sys) {
  validate(sys);
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(sys.a_pattern.size() + sys.h_pattern.size());
  // a_ij != 0 means x_j -> x_i; h_ij != 0 means x_j -> y_i.
  for (const Entry& e : sys.a_pattern) {
    edges.emplace_back(e.col, e.row);
  }
  for (const Entry& e : sys.h_pattern) {
    edges.emplace_back(e.col, sys.n + e.row);
  }
  return SystemDigraph(sys.n, sys.p, std::move(edges));
}

StructuredSystem to_system(const SystemDigraph& dg) {
  StructuredSystem sys{dg.state_count(), dg.measurement_count(), {}, {}};
  for (const auto& [from, to] : dg.edges()) {
    if (dg.is_state(to)) {
      sys.a_pattern.push_back({to, from});
    } else {
      sys.h_pattern.push_back({to - dg.state_count(), from});
    }
  }
  return canonical(std::move(sys));
}

std::vector<NodeId> reverse_reachable(const SystemDigraph& dg, std::span<const NodeId> targets) {
  std::vector<char> seen(dg.node_count(), 0);
  std::deque<NodeId> queue;
  for (NodeId t : targets) {
    if (t >= dg.node_count()) {
      throw InputError("unknown node id " + std::to_string(t));
    }
    if (!seen[t]) {
      seen[t] = 1;
      queue.push_back(t);
    }
  }
  while (!queue.empty()) {
    NodeId v = queue.front();
    queue.pop_front();
    for (NodeId u : dg.predecessors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        queue.push_back(u);
      }
    }
  }
  std::vector<NodeId> out;
  for (NodeId v = 0; v < dg.node_count(); ++v) {
    if (seen[v]) {
      out.push_back(v);
    }
  }
  return out;
}

BipartiteGraph::BipartiteGraph(std::size_t begin_count, std::size_t end_count,
                               std::vector<std::pair<std::size_t, std::size_t>> edges)
    : begin_count_(begin_count), end_count_(end_count), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  for (const auto& [b, e] : edges_) {
    if (b >= begin_count_ || e >= end_count_) {
      throw InputError("bipartite edge out of range");
    }
  }
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw InputError("duplicate bipartite edge");
  }
  compress(begin_count_, edges_, true, begin_offsets_, begin_adj_);
  compress(end_count_, edges_, false, end_offsets_, end_adj_);
}

std::span<const std::size_t> BipartiteGraph::ends_of(std::size_t b) const {
  return {begin_adj_.data() + begin_offsets_[b], begin_offsets_[b + 1] - begin_offsets_[b]};
}

std::span<const std::size_t> BipartiteGraph::begins_of(std::size_t e) const {
  return {end_adj_.data() + end_offsets_[e], end_offsets_[e + 1] - end_offsets_[e]};
}

bool BipartiteGraph::has_edge(std::size_t b, std::size_t e) const {
  if (b >= begin_count_) {
    return false;
  }
  auto ends = ends_of(b);
  return std::binary_search(ends.begin(), ends.end(), e);
}

BipartiteGraph build_bipartite(const SystemDigraph& dg) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(dg.edges().size());
  for (const auto& [from, to] : dg.edges()) {
    edges.emplace_back(from, to);
  }
  return BipartiteGraph(dg.state_count(), dg.node_count(), std::move(edges));
}

BipartiteGraph bipartite_of(const StructuredSystem& sys, bool include_h) {
  validate(sys);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const Entry& e : sys.a_pattern) {
    edges.emplace_back(e.col, e.row);
  }
  std::size_t end_count = sys.n;
  if (include_h) {
    for (const Entry& e : sys.h_pattern) {
      edges.emplace_back(e.col, sys.n + e.row);
    }
    end_count += sys.p;
  }
  return BipartiteGraph(sys.n, end_count, std::move(edges));
}

} // namespace obspart
