#include "obspart/partition.hpp"

#include "obspart/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace obspart {

std::string_view to_string(MeasurementType t) {
  switch (t) {
  case MeasurementType::alpha:
    return "alpha";
  case MeasurementType::beta:
    return "beta";
  case MeasurementType::gamma:
    return "gamma";
  }
  return "?";
}

std::string_view to_string(FailedCondition c) {
  switch (c) {
  case FailedCondition::none:
    return "none";
  case FailedCondition::accessibility:
    return "accessibility";
  case FailedCondition::matching:
    return "matching";
  }
  return "?";
}

TheoremVerdict theorem_check(const StructuredSystem& sys) {
  SystemDigraph dg = build_digraph(sys);
  if (!accessibility_check(dg).inaccessible.empty()) {
    return {false, FailedCondition::accessibility};
  }
  if (s_rank(sys, true) < sys.n) {
    return {false, FailedCondition::matching};
  }
  return {true, FailedCondition::none};
}

EquivalenceClasses equivalence_classes(const StructuredSystem& sys) {
  EquivalenceClasses out;
  for (Contraction& c : contractions_of(sys, false)) {
    out.alpha.push_back({std::move(c.members), c.seeds.size()});
  }
  SccDecomposition scc = decompose(build_digraph(sys));
  for (std::size_t c : scc.matched_parents()) {
    out.beta.push_back(scc.components[c]);
  }
  return out;
}

namespace {

bool intersects(const StateSet& x, const StateSet& y) {
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i == *j) {
      return true;
    }
    (*i < *j) ? ++i : ++j;
  }
  return false;
}

std::size_t lowest_shared(const StateSet& x, const StateSet& y) {
  for (std::size_t s : x) {
    if (std::binary_search(y.begin(), y.end(), s)) {
      return s;
    }
  }
  throw InternalError("classes do not intersect");
}

void require_disjoint(std::span<const StateSet> family, const char* name) {
  std::vector<std::size_t> all;
  for (const StateSet& cls : family) {
    if (cls.empty()) {
      throw InputError(std::string("empty ") + name + " class");
    }
    if (!std::is_sorted(cls.begin(), cls.end()) ||
        std::adjacent_find(cls.begin(), cls.end()) != cls.end()) {
      throw InputError(std::string(name) + " class " + format_states(cls) + " is not a sorted set");
    }
    all.insert(all.end(), cls.begin(), cls.end());
  }
  std::sort(all.begin(), all.end());
  auto dup = std::adjacent_find(all.begin(), all.end());
  if (dup != all.end()) {
    throw InternalError(std::string(name) + " classes overlap at " + state_label(*dup));
  }
}

StateSet sorted_unique(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Class-level matching between alpha (begin side) and beta (end side).
Matching class_overlap_matching(std::span<const StateSet> alpha, std::span<const StateSet> beta) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (std::size_t j = 0; j < beta.size(); ++j) {
      if (intersects(alpha[i], beta[j])) {
        edges.emplace_back(i, j);
      }
    }
  }
  return maximum_matching(BipartiteGraph(alpha.size(), beta.size(), std::move(edges)));
}

std::string describe_class(const char* family, std::size_t index, const StateSet& states) {
  return std::string(family) + " class " + std::to_string(index + 1) + " " + format_states(states);
}

} // namespace

std::vector<MeasurementType> classify_measurements(const StructuredSystem& sys) {
  validate(sys);
  if (sys.p == 0) {
    throw PreconditionError("classification needs at least one measurement");
  }
  std::vector<StateSet> rows(sys.p);
  for (const Entry& e : sys.h_pattern) {
    rows[e.row].push_back(e.col);
  }
  for (std::size_t r = 0; r < sys.p; ++r) {
    if (rows[r].empty()) {
      throw InputError("measurement row " + std::to_string(r + 1) + " measures no state");
    }
    std::sort(rows[r].begin(), rows[r].end());
  }

  std::vector<MeasurementType> labels(sys.p, MeasurementType::gamma);

  // Alpha: rows that extend the matching of [A; H_alpha].
  BipartiteGraph full = bipartite_of(sys, true);
  Matching m(sys.n, sys.n + sys.p);
  {
    Matching ma = maximum_matching(bipartite_of(sys, false));
    std::copy(ma.mate_of_begin.begin(), ma.mate_of_begin.end(), m.mate_of_begin.begin());
    std::copy(ma.mate_of_end.begin(), ma.mate_of_end.end(), m.mate_of_end.begin());
  }
  for (std::size_t r = 0; r < sys.p; ++r) {
    if (augment_from_end(full, m, sys.n + r)) {
      labels[r] = MeasurementType::alpha;
    }
  }

  // Beta: first row to reach each matched parent SCC not already reached.
  SccDecomposition scc = decompose(build_digraph(sys));
  std::vector<char> covered(scc.size(), 0);
  auto touches_open_class = [&](const StateSet& states) {
    for (std::size_t s : states) {
      std::size_t c = scc.component_of[s];
      if (scc.parent[c] && scc.matched[c] && !covered[c]) {
        return true;
      }
    }
    return false;
  };
  auto cover = [&](const StateSet& states) {
    for (std::size_t s : states) {
      covered[scc.component_of[s]] = 1;
    }
  };
  for (std::size_t r = 0; r < sys.p; ++r) {
    if (labels[r] == MeasurementType::alpha) {
      cover(rows[r]);
    }
  }
  for (std::size_t r = 0; r < sys.p; ++r) {
    if (labels[r] != MeasurementType::alpha && touches_open_class(rows[r])) {
      labels[r] = MeasurementType::beta;
      cover(rows[r]);
    }
  }
  return labels;
}

bool is_necessary(const StructuredSystem& sys, std::size_t row) {
  if (!theorem_check(sys).observable) {
    throw PreconditionError("system is not generically observable with all measurements");
  }
  return !theorem_check(drop_measurement(sys, row)).observable;
}

Placement minimal_placement(std::span<const StateSet> alpha, std::span<const StateSet> beta) {
  require_disjoint(alpha, "alpha");
  require_disjoint(beta, "beta");
  Matching m = class_overlap_matching(alpha, beta);

  std::vector<std::size_t> witness;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    std::size_t j = m.mate_of_begin[i];
    witness.push_back(j == kUnmatched ? alpha[i].front() : lowest_shared(alpha[i], beta[j]));
  }
  for (std::size_t j = 0; j < beta.size(); ++j) {
    if (m.mate_of_end[j] == kUnmatched) {
      witness.push_back(beta[j].front());
    }
  }
  Placement out;
  out.count = alpha.size() + beta.size() - m.size();
  out.sets.push_back(sorted_unique(std::move(witness)));
  if (out.sets.front().size() != out.count) {
    throw InternalError("witness size disagrees with the placement count");
  }
  return out;
}

ClassFamilies forbid_states(std::span<const StateSet> alpha, std::span<const StateSet> beta,
                            std::span<const std::size_t> forbidden) {
  StateSet banned = sorted_unique({forbidden.begin(), forbidden.end()});
  auto strip = [&](std::span<const StateSet> family, const char* name) {
    std::vector<StateSet> out;
    for (std::size_t k = 0; k < family.size(); ++k) {
      StateSet kept;
      std::set_difference(family[k].begin(), family[k].end(), banned.begin(), banned.end(),
                          std::back_inserter(kept));
      if (kept.empty()) {
        throw InfeasibleError("forbidding " + format_states(banned) + " empties " +
                              describe_class(name, k, family[k]));
      }
      out.push_back(std::move(kept));
    }
    return out;
  };
  return {strip(alpha, "alpha"), strip(beta, "beta")};
}

namespace {

// Placement through the class arithmetic; valid when every contraction is simple.
SensorPlacement place_by_classes(const EquivalenceClasses& classes,
                                 std::span<const std::size_t> forbidden) {
  std::vector<StateSet> alpha;
  for (const AlphaClass& c : classes.alpha) {
    alpha.push_back(c.states);
  }
  ClassFamilies allowed = forbid_states(alpha, classes.beta, forbidden);
  Matching m = class_overlap_matching(allowed.alpha, allowed.beta);

  SensorPlacement out;
  out.beta_roles.assign(allowed.beta.size(), kUnmatched);
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < allowed.alpha.size(); ++i) {
    std::size_t j = m.mate_of_begin[i];
    std::size_t s = j == kUnmatched ? allowed.alpha[i].front()
                                    : lowest_shared(allowed.alpha[i], allowed.beta[j]);
    out.alpha_roles.push_back({s});
    if (j != kUnmatched) {
      out.beta_roles[j] = s;
    }
    all.push_back(s);
  }
  for (std::size_t j = 0; j < allowed.beta.size(); ++j) {
    if (out.beta_roles[j] == kUnmatched) {
      out.beta_roles[j] = allowed.beta[j].front();
      all.push_back(out.beta_roles[j]);
    }
  }
  out.overlap = m.size();
  out.states = sorted_unique(std::move(all));
  return out;
}

// General placement: a maximum matching of A that keeps forbidden columns
// matched, extended by one virtual row per beta class covering its allowed
// states. Columns taken by virtual rows are alpha sensors that also serve
// a beta class.
SensorPlacement place_by_matching(const StructuredSystem& sys, const EquivalenceClasses& classes,
                                  const StateSet& banned) {
  const std::size_t n = sys.n;
  BipartiteGraph a_graph = bipartite_of(sys, false);
  Matching m(n, n);
  for (std::size_t f : banned) {
    if (!augment_from_begin(a_graph, m, f)) {
      for (std::size_t k = 0; k < classes.alpha.size(); ++k) {
        const AlphaClass& c = classes.alpha[k];
        if (std::binary_search(c.states.begin(), c.states.end(), f)) {
          throw InfeasibleError("forbidding " + format_states(banned) + " leaves " +
                                describe_class("alpha", k, c.states) + " unable to supply " +
                                std::to_string(c.deficiency) + " sensor(s)");
        }
      }
      throw InternalError("forbidden state outside every contraction cannot be matched");
    }
  }
  m = maximum_matching(a_graph, std::move(m));

  std::vector<std::pair<std::size_t, std::size_t>> edges = a_graph.edges();
  std::vector<std::size_t> allowed_front(classes.beta.size(), kUnmatched);
  for (std::size_t j = 0; j < classes.beta.size(); ++j) {
    for (std::size_t s : classes.beta[j]) {
      if (!std::binary_search(banned.begin(), banned.end(), s)) {
        edges.emplace_back(s, n + j);
        if (allowed_front[j] == kUnmatched) {
          allowed_front[j] = s;
        }
      }
    }
    if (allowed_front[j] == kUnmatched) {
      throw InfeasibleError("forbidding " + format_states(banned) + " empties " +
                            describe_class("beta", j, classes.beta[j]));
    }
  }
  BipartiteGraph extended(n, n + classes.beta.size(), std::move(edges));
  Matching mx(n, n + classes.beta.size());
  std::copy(m.mate_of_begin.begin(), m.mate_of_begin.end(), mx.mate_of_begin.begin());
  std::copy(m.mate_of_end.begin(), m.mate_of_end.end(), mx.mate_of_end.begin());
  for (std::size_t j = 0; j < classes.beta.size(); ++j) {
    augment_from_end(extended, mx, n + j);
  }

  SensorPlacement out;
  out.beta_roles.assign(classes.beta.size(), kUnmatched);
  std::vector<std::size_t> all;
  std::vector<char> alpha_sensor(n, 0);
  for (std::size_t b = 0; b < n; ++b) {
    std::size_t e = mx.mate_of_begin[b];
    if (e == kUnmatched || e >= n) {
      alpha_sensor[b] = 1;
      all.push_back(b);
      if (e != kUnmatched) {
        out.beta_roles[e - n] = b;
        ++out.overlap;
      }
    }
  }
  for (const AlphaClass& c : classes.alpha) {
    StateSet roles;
    for (std::size_t s : c.states) {
      if (alpha_sensor[s]) {
        roles.push_back(s);
      }
    }
    if (roles.size() != c.deficiency) {
      throw InternalError("alpha sensors do not match the deficiency of " + format_states(c.states));
    }
    out.alpha_roles.push_back(std::move(roles));
  }
  for (std::size_t j = 0; j < classes.beta.size(); ++j) {
    if (out.beta_roles[j] == kUnmatched) {
      out.beta_roles[j] = allowed_front[j];
      all.push_back(allowed_front[j]);
    }
  }
  out.states = sorted_unique(std::move(all));
  return out;
}

} // namespace

SensorPlacement place_sensors(const StructuredSystem& sys, std::span<const std::size_t> forbidden) {
  validate(sys);
  StateSet banned = sorted_unique({forbidden.begin(), forbidden.end()});
  for (std::size_t f : banned) {
    if (f >= sys.n) {
      throw InputError("forbidden state " + std::to_string(f + 1) + " does not exist");
    }
  }
  EquivalenceClasses classes = equivalence_classes(sys);
  bool simple = std::all_of(classes.alpha.begin(), classes.alpha.end(),
                            [](const AlphaClass& c) { return c.deficiency == 1; });
  SensorPlacement out =
      simple ? place_by_classes(classes, banned) : place_by_matching(sys, classes, banned);

  StructuredSystem measured = with_state_sensors(without_measurements(sys), out.states);
  if (!theorem_check(measured).observable) {
    throw InternalError("placement " + format_states(out.states) + " is not observable");
  }
  return out;
}

std::vector<StateSet> all_minimal_placements(const StructuredSystem& sys,
                                             std::span<const std::size_t> forbidden,
                                             std::size_t max_states) {
  if (sys.n > max_states) {
    throw PreconditionError("witness enumeration is limited to n <= " + std::to_string(max_states));
  }
  const std::size_t k = place_sensors(sys, forbidden).count();
  StateSet candidates;
  for (std::size_t s = 0; s < sys.n; ++s) {
    if (std::find(forbidden.begin(), forbidden.end(), s) == forbidden.end()) {
      candidates.push_back(s);
    }
  }
  StructuredSystem bare = without_measurements(sys);
  std::vector<StateSet> out;
  StateSet pick;
  std::function<void(std::size_t)> walk = [&](std::size_t from) {
    if (pick.size() == k) {
      if (theorem_check(with_state_sensors(bare, pick)).observable) {
        out.push_back(pick);
      }
      return;
    }
    for (std::size_t i = from; i + (k - pick.size()) <= candidates.size(); ++i) {
      pick.push_back(candidates[i]);
      walk(i + 1);
      pick.pop_back();
    }
  };
  walk(0);
  return out;
}

PartitionReport analyze(const StructuredSystem& sys, std::span<const std::size_t> forbidden,
                        bool all_witnesses) {
  PartitionReport report;
  report.verdict = theorem_check(sys);
  EquivalenceClasses classes = equivalence_classes(sys);
  report.alpha_classes = classes.alpha;
  report.beta_classes = classes.beta;
  if (sys.p > 0) {
    report.labels = classify_measurements(sys);
  }
  report.forbidden = sorted_unique({forbidden.begin(), forbidden.end()});
  SensorPlacement placement = place_sensors(sys, report.forbidden);
  report.sensor_count = placement.count();
  report.overlap = placement.overlap;
  if (all_witnesses) {
    report.minimal_sets = all_minimal_placements(sys, report.forbidden);
  } else {
    report.minimal_sets.push_back(placement.states);
  }
  return report;
}

} // namespace obspart
