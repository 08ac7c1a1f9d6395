#pragma once

#include "obspart/matching.hpp"
#include "obspart/scc.hpp"
#include "obspart/system.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace obspart {

enum class MeasurementType { alpha, beta, gamma };
enum class FailedCondition { none, accessibility, matching };

std::string_view to_string(MeasurementType t);
std::string_view to_string(FailedCondition c);

struct TheoremVerdict {
  bool observable = false;
  /// First failing condition; accessibility wins when both fail.
  FailedCondition failed = FailedCondition::none;
};

/// Generic observability: every state reaches a measurement and
/// s_rank([A; H]) = n.
TheoremVerdict theorem_check(const StructuredSystem& sys);

/// States of a contraction of A. A class with deficiency 1 is a Type-alpha
/// equivalence class; deficiency k > 1 marks k coupled rank deficiencies
/// whose members are not pairwise interchangeable.
struct AlphaClass {
  StateSet states;
  std::size_t deficiency = 1;
};

struct EquivalenceClasses {
  std::vector<AlphaClass> alpha;
  /// State sets of the matched parent SCCs.
  std::vector<StateSet> beta;
};

/// Candidate placement classes computed from A alone; H is ignored.
EquivalenceClasses equivalence_classes(const StructuredSystem& sys);

/// Labels every row of H. Rows are offered in index order: a row is alpha
/// if it raises s_rank([A; H_alpha]) by one, then the remaining rows are
/// beta if they reach a matched parent SCC no earlier alpha or beta row
/// touches. Everything else is gamma.
/// Throws PreconditionError when p = 0, InputError for an empty row.
std::vector<MeasurementType> classify_measurements(const StructuredSystem& sys);

/// Whether deleting measurement `row` makes the system structurally
/// unobservable. Throws PreconditionError if it is unobservable already.
bool is_necessary(const StructuredSystem& sys, std::size_t row);

struct Placement {
  std::size_t count = 0;
  std::vector<StateSet> sets;
};

/// Class-level placement arithmetic: |alpha| + |beta| minus a maximum
/// matching between intersecting alpha and beta classes. Matched pairs are
/// served by the lowest shared state, the rest by their lowest state.
/// Throws InternalError if classes within one family overlap. Exact only
/// when every contraction has deficiency 1; place_sensors is exact always.
Placement minimal_placement(std::span<const StateSet> alpha, std::span<const StateSet> beta);

struct ClassFamilies {
  std::vector<StateSet> alpha;
  std::vector<StateSet> beta;
};

/// Removes forbidden states from every class. Throws InfeasibleError when
/// a class loses all of its states.
ClassFamilies forbid_states(std::span<const StateSet> alpha, std::span<const StateSet> beta,
                            std::span<const std::size_t> forbidden);

/// A minimal dedicated-sensor set together with the role of each sensor.
struct SensorPlacement {
  StateSet states;
  /// Per alpha class (order of equivalence_classes): the states covering
  /// its rank deficiency, `deficiency` of them.
  std::vector<StateSet> alpha_roles;
  /// Per beta class: the state that reaches it.
  std::vector<std::size_t> beta_roles;
  /// Alpha sensors that also serve a beta class.
  std::size_t overlap = 0;

  std::size_t count() const { return states.size(); }
};

/// Minimal placement for a whole system, never using a forbidden state.
/// Throws InfeasibleError naming the class that cannot be served.
SensorPlacement place_sensors(const StructuredSystem& sys, std::span<const std::size_t> forbidden = {});

/// Every minimal placement, by exhaustive search. Throws PreconditionError
/// when n exceeds `max_states`.
std::vector<StateSet> all_minimal_placements(const StructuredSystem& sys,
                                             std::span<const std::size_t> forbidden = {},
                                             std::size_t max_states = 15);

struct PartitionReport {
  TheoremVerdict verdict;
  std::vector<AlphaClass> alpha_classes;
  std::vector<StateSet> beta_classes;
  std::vector<MeasurementType> labels;
  StateSet forbidden;
  std::vector<StateSet> minimal_sets;
  std::size_t sensor_count = 0;
  std::size_t overlap = 0;
};

PartitionReport analyze(const StructuredSystem& sys, std::span<const std::size_t> forbidden = {},
                        bool all_witnesses = false);

} // namespace obspart
