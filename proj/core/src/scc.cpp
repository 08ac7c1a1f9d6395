#include "obspart/scc.hpp"

#include "obspart/errors.hpp"
#include "obspart/matching.hpp"

#include <algorithm>
#include <limits>

namespace obspart {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Iterative Tarjan over state nodes. Returns raw component labels.
std::vector<std::size_t> tarjan(const SystemDigraph& dg, std::size_t& count) {
  const std::size_t n = dg.state_count();
  std::vector<std::size_t> index(n, kNone), low(n, 0), label(n, kNone);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> frames; // (node, next successor slot)
  std::size_t next_index = 0;
  count = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kNone) {
      continue;
    }
    frames.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, slot] = frames.back();
      auto succ = dg.successors(v);
      if (slot < succ.size()) {
        std::size_t w = succ[slot++];
        if (!dg.is_state(w)) {
          continue;
        }
        if (index[w] == kNone) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) {
        std::size_t up = frames.back().first;
        low[up] = std::min(low[up], low[done]);
      }
      if (low[done] == index[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          label[w] = count;
        } while (w != done);
        ++count;
      }
    }
  }
  return label;
}

} // namespace

bool SccDecomposition::precedes(std::size_t i, std::size_t j) const {
  if (i == j) {
    return true;
  }
  std::vector<char> seen(size(), 0);
  std::vector<std::size_t> todo{i};
  seen[i] = 1;
  while (!todo.empty()) {
    std::size_t c = todo.back();
    todo.pop_back();
    for (std::size_t d : successors[c]) {
      if (d == j) {
        return true;
      }
      if (!seen[d]) {
        seen[d] = 1;
        todo.push_back(d);
      }
    }
  }
  return false;
}

std::vector<std::size_t> SccDecomposition::matched_parents() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < size(); ++c) {
    if (parent[c] && matched[c]) {
      out.push_back(c);
    }
  }
  return out;
}

namespace {

// `local` must hold kNone for every state and is restored before returning.
bool cycle_cover_with(const SystemDigraph& dg, std::span<const std::size_t> states, std::vector<std::size_t>& local) {
  for (std::size_t k = 0; k < states.size(); ++k) {
    local[states[k]] = k;
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t k = 0; k < states.size(); ++k) {
    for (NodeId w : dg.successors(states[k])) {
      if (dg.is_state(w) && local[w] != kNone) {
        edges.emplace_back(k, local[w]);
      }
    }
  }
  for (std::size_t v : states) {
    local[v] = kNone;
  }
  BipartiteGraph bg(states.size(), states.size(), std::move(edges));
  return maximum_matching(bg).size() == states.size();
}

} // namespace

bool has_cycle_cover(const SystemDigraph& dg, std::span<const std::size_t> states) {
  std::vector<std::size_t> local(dg.state_count(), kNone);
  return cycle_cover_with(dg, states, local);
}

SccDecomposition decompose(const SystemDigraph& dg) {
  const std::size_t n = dg.state_count();
  std::size_t count = 0;
  std::vector<std::size_t> raw = tarjan(dg, count);

  // Renumber by smallest member; states are visited in ascending order.
  std::vector<std::size_t> renumber(count, kNone);
  SccDecomposition out;
  out.component_of.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (renumber[raw[v]] == kNone) {
      renumber[raw[v]] = out.components.size();
      out.components.emplace_back();
    }
    out.component_of[v] = renumber[raw[v]];
    out.components[out.component_of[v]].push_back(v);
  }

  out.successors.assign(out.size(), {});
  for (const auto& [from, to] : dg.edges()) {
    if (!dg.is_state(to)) {
      continue;
    }
    std::size_t a = out.component_of[from];
    std::size_t b = out.component_of[to];
    if (a != b) {
      out.successors[a].push_back(b);
    }
  }
  for (auto& succ : out.successors) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }

  out.parent.assign(out.size(), false);
  out.matched.assign(out.size(), false);
  std::vector<std::size_t> local(n, kNone);
  for (std::size_t c = 0; c < out.size(); ++c) {
    out.parent[c] = out.successors[c].empty();
    out.matched[c] = cycle_cover_with(dg, out.components[c], local);
  }
  return out;
}

Accessibility accessibility_check(const SystemDigraph& dg) {
  std::vector<NodeId> targets;
  for (std::size_t i = 0; i < dg.measurement_count(); ++i) {
    targets.push_back(dg.measurement_node(i));
  }
  std::vector<char> reach(dg.node_count(), 0);
  for (NodeId v : reverse_reachable(dg, targets)) {
    reach[v] = 1;
  }
  Accessibility out;
  for (std::size_t v = 0; v < dg.state_count(); ++v) {
    (reach[v] ? out.accessible : out.inaccessible).push_back(v);
  }
  return out;
}

std::vector<std::size_t> block_form_certificate(const StructuredSystem& sys) {
  Accessibility acc = accessibility_check(build_digraph(sys));
  if (acc.inaccessible.empty()) {
    throw PreconditionError("every state is accessible; no block form exists");
  }
  std::vector<std::size_t> order = acc.inaccessible;
  order.insert(order.end(), acc.accessible.begin(), acc.accessible.end());
  if (!has_block_form(sys, order, acc.inaccessible.size())) {
    throw InternalError("inaccessible states do not induce the expected block form");
  }
  return order;
}

bool has_block_form(const StructuredSystem& sys, std::span<const std::size_t> order,
                    std::size_t leading) {
  if (order.size() != sys.n || leading > sys.n) {
    return false;
  }
  std::vector<std::size_t> position(sys.n, kNone);
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (order[k] >= sys.n || position[order[k]] != kNone) {
      return false;
    }
    position[order[k]] = k;
  }
  for (const Entry& e : sys.a_pattern) {
    if (position[e.row] >= leading && position[e.col] < leading) {
      return false;
    }
  }
  for (const Entry& e : sys.h_pattern) {
    if (position[e.col] < leading) {
      return false;
    }
  }
  return true;
}

} // namespace obspart
