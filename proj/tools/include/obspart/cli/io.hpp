#pragma once

#include "obspart/system.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace obspart::cli {

struct LoadedSystem {
  StructuredSystem sys;
  /// One label per state; empty when the file gives none.
  std::vector<std::string> names;
};

/// Parses a system file: {"n", "p", "a", "h", "names"?} with 1-based
/// [row, col] pairs. Syntax errors carry "line L, column C"; unknown keys
/// and malformed fields raise InputError as well.
LoadedSystem parse_system_json(std::string_view text);

struct PatternMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// 1-based (row, col).
  std::vector<std::pair<std::size_t, std::size_t>> entries;
};

/// "%%MatrixMarket matrix coordinate pattern general" reader. Errors carry
/// the offending line number.
PatternMatrix parse_matrix_market(std::string_view text);

/// A from a Matrix Market file, H from an optional second one.
LoadedSystem system_from_matrix_market(const PatternMatrix& a, const PatternMatrix* h);

std::string read_file(const std::filesystem::path& path);

/// Dispatches on the extension: ".mtx" goes through the Matrix Market
/// importer (with `measurements` as the H file), anything else is JSON.
LoadedSystem load_system(const std::filesystem::path& path, const std::filesystem::path& measurements = {});

std::string label_of(const LoadedSystem& loaded, std::size_t state);

} // namespace obspart::cli
