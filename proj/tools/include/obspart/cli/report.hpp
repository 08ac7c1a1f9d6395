#pragma once

#include "obspart/numeric.hpp"
#include "obspart/partition.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace obspart::cli {

inline constexpr const char* kReportVersion = "obspart/1";

/// Numeric section of a report together with the settings that produced it.
struct NumericSection {
  RankReport rank;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
};

struct ReportFile {
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<std::string> names;
  PartitionReport partition;
  std::optional<NumericSection> numeric;
};

/// State indices are written 1-based. Keys keep a fixed order, so equal
/// reports serialize to identical bytes.
nlohmann::ordered_json to_json(const ReportFile& report);
/// Inverse of to_json. Throws InputError on a wrong version or shape.
ReportFile report_from_json(const nlohmann::ordered_json& j);

/// Human-readable rendering.
std::string to_text(const ReportFile& report);

bool operator==(const ReportFile& x, const ReportFile& y);

} // namespace obspart::cli
