#include "obspart/matching.hpp"

#include "obspart/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace obspart {

std::size_t Matching::size() const {
  return static_cast<std::size_t>(std::count_if(mate_of_begin.begin(), mate_of_begin.end(),
                                                [](std::size_t e) { return e != kUnmatched; }));
}

std::vector<std::size_t> Matching::unmatched_begin() const {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < mate_of_begin.size(); ++b) {
    if (mate_of_begin[b] == kUnmatched) {
      out.push_back(b);
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Matching::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t b = 0; b < mate_of_begin.size(); ++b) {
    if (mate_of_begin[b] != kUnmatched) {
      out.emplace_back(b, mate_of_begin[b]);
    }
  }
  return out;
}

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

class HopcroftKarp {
public:
  HopcroftKarp(const BipartiteGraph& bg, Matching& m)
      : bg_(bg), m_(m), dist_(bg.begin_count()), cursor_(bg.begin_count()) {}

  void run() {
    while (layer()) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      for (std::size_t b = 0; b < bg_.begin_count(); ++b) {
        if (m_.mate_of_begin[b] == kUnmatched) {
          augment(b);
        }
      }
    }
  }

private:
  // BFS layering from the free begin nodes; true if a free end is reachable.
  bool layer() {
    std::deque<std::size_t> queue;
    for (std::size_t b = 0; b < bg_.begin_count(); ++b) {
      if (m_.mate_of_begin[b] == kUnmatched) {
        dist_[b] = 0;
        queue.push_back(b);
      } else {
        dist_[b] = kInf;
      }
    }
    bool found = false;
    while (!queue.empty()) {
      std::size_t b = queue.front();
      queue.pop_front();
      for (std::size_t e : bg_.ends_of(b)) {
        std::size_t next = m_.mate_of_end[e];
        if (next == kUnmatched) {
          found = true;
        } else if (dist_[next] == kInf) {
          dist_[next] = dist_[b] + 1;
          queue.push_back(next);
        }
      }
    }
    return found;
  }

  // Iterative layered DFS; dead ends are removed from the layering.
  bool augment(std::size_t root) {
    std::vector<std::size_t> path{root};
    std::vector<std::size_t> via;
    while (!path.empty()) {
      std::size_t b = path.back();
      auto ends = bg_.ends_of(b);
      bool descended = false;
      while (cursor_[b] < ends.size()) {
        std::size_t e = ends[cursor_[b]];
        std::size_t next = m_.mate_of_end[e];
        if (next == kUnmatched) {
          via.push_back(e);
          for (std::size_t k = path.size(); k-- > 0;) {
            m_.mate_of_begin[path[k]] = via[k];
            m_.mate_of_end[via[k]] = path[k];
          }
          return true;
        }
        if (dist_[next] != kInf && dist_[next] == dist_[b] + 1) {
          via.push_back(e);
          path.push_back(next);
          descended = true;
          break;
        }
        ++cursor_[b];
      }
      if (!descended) {
        dist_[b] = kInf;
        path.pop_back();
        if (!via.empty()) {
          via.pop_back();
          ++cursor_[path.back()];
        }
      }
    }
    return false;
  }

  const BipartiteGraph& bg_;
  Matching& m_;
  std::vector<std::size_t> dist_;
  std::vector<std::size_t> cursor_;
};

} // namespace

Matching maximum_matching(const BipartiteGraph& bg) {
  return maximum_matching(bg, Matching(bg.begin_count(), bg.end_count()));
}

Matching maximum_matching(const BipartiteGraph& bg, Matching initial) {
  check_matching(bg, initial);
  HopcroftKarp(bg, initial).run();
  return initial;
}

bool augment_from_begin(const BipartiteGraph& bg, Matching& m, std::size_t b0) {
  if (m.mate_of_begin[b0] != kUnmatched) {
    return false;
  }
  // parent[b] is the begin node whose scan reached b through b's mate.
  std::vector<std::size_t> parent(bg.begin_count(), kUnmatched);
  std::vector<char> seen(bg.begin_count(), 0);
  std::deque<std::size_t> queue{b0};
  seen[b0] = 1;
  while (!queue.empty()) {
    std::size_t b = queue.front();
    queue.pop_front();
    for (std::size_t e : bg.ends_of(b)) {
      std::size_t next = m.mate_of_end[e];
      if (next == kUnmatched) {
        std::size_t cur_b = b;
        std::size_t cur_e = e;
        while (true) {
          std::size_t old = m.mate_of_begin[cur_b];
          m.mate_of_begin[cur_b] = cur_e;
          m.mate_of_end[cur_e] = cur_b;
          if (cur_b == b0) {
            return true;
          }
          cur_e = old;
          cur_b = parent[cur_b];
        }
      }
      if (!seen[next]) {
        seen[next] = 1;
        parent[next] = b;
        queue.push_back(next);
      }
    }
  }
  return false;
}

bool augment_from_end(const BipartiteGraph& bg, Matching& m, std::size_t e0) {
  if (m.mate_of_end[e0] != kUnmatched) {
    return false;
  }
  std::vector<std::size_t> parent(bg.end_count(), kUnmatched);
  std::vector<char> seen(bg.end_count(), 0);
  std::deque<std::size_t> queue{e0};
  seen[e0] = 1;
  while (!queue.empty()) {
    std::size_t e = queue.front();
    queue.pop_front();
    for (std::size_t b : bg.begins_of(e)) {
      std::size_t next = m.mate_of_begin[b];
      if (next == kUnmatched) {
        std::size_t cur_e = e;
        std::size_t cur_b = b;
        while (true) {
          std::size_t old = m.mate_of_end[cur_e];
          m.mate_of_end[cur_e] = cur_b;
          m.mate_of_begin[cur_b] = cur_e;
          if (cur_e == e0) {
            return true;
          }
          cur_b = old;
          cur_e = parent[cur_e];
        }
      }
      if (!seen[next]) {
        seen[next] = 1;
        parent[next] = e;
        queue.push_back(next);
      }
    }
  }
  return false;
}

void check_matching(const BipartiteGraph& bg, const Matching& m) {
  if (m.mate_of_begin.size() != bg.begin_count() || m.mate_of_end.size() != bg.end_count()) {
    throw InconsistencyError("matching sized for a different graph");
  }
  for (std::size_t b = 0; b < bg.begin_count(); ++b) {
    std::size_t e = m.mate_of_begin[b];
    if (e == kUnmatched) {
      continue;
    }
    if (e >= bg.end_count() || m.mate_of_end[e] != b) {
      throw InconsistencyError("mate arrays disagree at begin node " + std::to_string(b));
    }
    if (!bg.has_edge(b, e)) {
      throw InconsistencyError("matching edge (" + std::to_string(b) + ", " + std::to_string(e) +
                               ") is not an edge of the graph");
    }
  }
  for (std::size_t e = 0; e < bg.end_count(); ++e) {
    std::size_t b = m.mate_of_end[e];
    if (b != kUnmatched && (b >= bg.begin_count() || m.mate_of_begin[b] != e)) {
      throw InconsistencyError("mate arrays disagree at end node " + std::to_string(e));
    }
  }
}

std::size_t s_rank(const StructuredSystem& sys, bool include_h) {
  return maximum_matching(bipartite_of(sys, include_h)).size();
}

AuxiliaryGraph::AuxiliaryGraph(std::size_t begin_count, std::size_t end_count,
                               std::vector<std::pair<std::size_t, std::size_t>> arcs)
    : begin_count_(begin_count), end_count_(end_count), arcs_(std::move(arcs)) {
  std::sort(arcs_.begin(), arcs_.end());
  offsets_.assign(node_count() + 1, 0);
  for (const auto& [from, to] : arcs_) {
    ++offsets_[from + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  targets_.reserve(arcs_.size());
  for (const auto& arc : arcs_) {
    targets_.push_back(arc.second);
  }
}

std::span<const std::size_t> AuxiliaryGraph::successors(std::size_t v) const {
  return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

AuxiliaryGraph build_auxiliary(const BipartiteGraph& bg, const Matching& m) {
  check_matching(bg, m);
  std::size_t nb = bg.begin_count();
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  arcs.reserve(bg.edge_count());
  for (const auto& [b, e] : bg.edges()) {
    if (m.mate_of_begin[b] == e) {
      arcs.emplace_back(nb + e, b);
    } else {
      arcs.emplace_back(b, nb + e);
    }
  }
  return AuxiliaryGraph(nb, bg.end_count(), std::move(arcs));
}

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> parent;
};

} // namespace

std::vector<Contraction> contractions(const AuxiliaryGraph& aux, const Matching& m) {
  if (m.mate_of_begin.size() != aux.begin_count() || m.mate_of_end.size() != aux.end_count()) {
    throw InconsistencyError("matching does not belong to the auxiliary graph");
  }
  const std::vector<std::size_t> seeds = m.unmatched_begin();
  DisjointSets groups(seeds.size());
  // owner[v]: index into `seeds` of the search that first reached v.
  std::vector<std::size_t> owner(aux.node_count(), kUnmatched);
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    owner[seeds[s]] = s;
    queue.push_back(seeds[s]);
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t w : aux.successors(v)) {
        if (owner[w] == kUnmatched) {
          owner[w] = s;
          queue.push_back(w);
        } else if (owner[w] != s) {
          // Everything beyond w was explored by the earlier search.
          groups.unite(s, owner[w]);
        }
      }
    }
  }

  std::vector<std::size_t> slot(seeds.size(), kUnmatched);
  std::vector<Contraction> out;
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    std::size_t root = groups.find(s);
    if (slot[root] == kUnmatched) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].seeds.push_back(seeds[s]);
  }
  for (std::size_t b = 0; b < aux.begin_count(); ++b) {
    if (owner[b] != kUnmatched) {
      out[slot[groups.find(owner[b])]].members.push_back(b);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Contraction& x, const Contraction& y) { return x.members.front() < y.members.front(); });
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].id = k;
    out[k].witness_unmatched = out[k].seeds.front();
  }
  return out;
}

std::vector<Contraction> contractions_of(const StructuredSystem& sys, bool include_h) {
  BipartiteGraph bg = bipartite_of(sys, include_h);
  Matching m = maximum_matching(bg);
  return contractions(build_auxiliary(bg, m), m);
}

} // namespace obspart
