#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace obspart {

/// Sorted list of 0-based state indices.
using StateSet = std::vector<std::size_t>;

/// Position of a structural nonzero, 0-based.
struct Entry {
  std::size_t row = 0;
  std::size_t col = 0;

  friend auto operator<=>(const Entry&, const Entry&) = default;
};

/// Sparsity patterns of the system matrix A (n x n) and measurement
/// matrix H (p x n). Indices are stored 0-based; every user-facing
/// rendering adds one.
struct StructuredSystem {
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<Entry> a_pattern;
  std::vector<Entry> h_pattern;

  friend bool operator==(const StructuredSystem&, const StructuredSystem&) = default;
};

/// Throws InputError when n is zero, an index is out of range, or a
/// pattern holds the same entry twice. The message names the entry
/// with 1-based indices.
void validate(const StructuredSystem& sys);

/// Builds a system from 1-based (row, col) pairs and validates it.
StructuredSystem make_system(std::size_t n, std::size_t p,
                             std::span<const std::pair<std::size_t, std::size_t>> a_one_based,
                             std::span<const std::pair<std::size_t, std::size_t>> h_one_based);

/// Same system with patterns sorted lexicographically.
StructuredSystem canonical(StructuredSystem sys);

/// Copy of `sys` with H removed (p = 0).
StructuredSystem without_measurements(const StructuredSystem& sys);

/// Copy of `sys` keeping only the listed measurement rows, renumbered in
/// the given order.
StructuredSystem select_measurements(const StructuredSystem& sys,
                                     std::span<const std::size_t> rows);

/// Copy of `sys` with measurement row `row` deleted.
StructuredSystem drop_measurement(const StructuredSystem& sys, std::size_t row);

/// Copy of `sys` with one dedicated sensor row appended per state.
StructuredSystem with_state_sensors(const StructuredSystem& sys,
                                    std::span<const std::size_t> states);

/// States touched by measurement row `row`, sorted.
StateSet measured_states(const StructuredSystem& sys, std::size_t row);

/// "x3" for state index 2.
std::string state_label(std::size_t state);

/// "{x1, x4}" style rendering.
std::string format_states(std::span<const std::size_t> states);

} // namespace obspart
