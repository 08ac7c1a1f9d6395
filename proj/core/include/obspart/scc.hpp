#pragma once

#include "obspart/digraph.hpp"
#include "obspart/system.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace obspart {

/// Strongly connected components of the state-only part of a digraph.
///
/// Components are numbered by their smallest state. `successors` holds the
/// condensation DAG: j is listed under i when some edge leaves S_i for S_j.
/// Edges into measurement nodes are ignored, so a sensor attached to a
/// parent component does not make it a child.
struct SccDecomposition {
  std::vector<StateSet> components;
  std::vector<std::size_t> component_of;
  std::vector<std::vector<std::size_t>> successors;
  /// No edge leaves the component for another component.
  std::vector<bool> parent;
  /// A disjoint cycle family covers the component.
  std::vector<bool> matched;

  std::size_t size() const { return components.size(); }
  /// S_i ⪯ S_j: some state of S_i has a path to some state of S_j.
  bool precedes(std::size_t i, std::size_t j) const;
  /// Indices of parent components that are also matched.
  std::vector<std::size_t> matched_parents() const;
};

SccDecomposition decompose(const SystemDigraph& dg);

/// True when the restriction of A to `states` admits a perfect matching,
/// i.e. a disjoint cycle family covering them.
bool has_cycle_cover(const SystemDigraph& dg, std::span<const std::size_t> states);

struct Accessibility {
  StateSet accessible;
  StateSet inaccessible;
};

/// Splits the states by whether they begin a path ending in a measurement.
Accessibility accessibility_check(const SystemDigraph& dg);

/// State order putting every inaccessible state first. Under it A is block
/// upper-triangular with a zero lower-left block and H vanishes on the
/// leading columns. Throws PreconditionError when all states are accessible.
std::vector<std::size_t> block_form_certificate(const StructuredSystem& sys);

/// Checks the block pattern for a permutation whose first `leading`
/// entries form the inaccessible block.
bool has_block_form(const StructuredSystem& sys, std::span<const std::size_t> order,
                    std::size_t leading);

} // namespace obspart
