#include "obspart/system.hpp"

#include "obspart/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace obspart {

namespace {

void check_pattern(const std::vector<Entry>& pattern, std::size_t rows, std::size_t cols,
                   char name) {
  std::set<Entry> seen;
  for (const Entry& e : pattern) {
    if (e.row >= rows || e.col >= cols) {
      std::ostringstream msg;
      msg << "entry (" << e.row + 1 << ", " << e.col + 1 << ") of " << name
          << " is outside [1, " << rows << "] x [1, " << cols << "]";
      throw InputError(msg.str());
    }
    if (!seen.insert(e).second) {
      std::ostringstream msg;
      msg << "duplicate entry (" << e.row + 1 << ", " << e.col + 1 << ") in " << name;
      throw InputError(msg.str());
    }
  }
}

std::vector<Entry> from_one_based(std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                  char name) {
  std::vector<Entry> out;
  out.reserve(pairs.size());
  for (auto [i, j] : pairs) {
    if (i == 0 || j == 0) {
      std::ostringstream msg;
      msg << "entry (" << i << ", " << j << ") of " << name << " uses a 0 index; indices are 1-based";
      throw InputError(msg.str());
    }
    out.push_back({i - 1, j - 1});
  }
  return out;
}

} // namespace

void validate(const StructuredSystem& sys) {
  if (sys.n == 0) {
    throw InputError("state count n must be positive");
  }
  check_pattern(sys.a_pattern, sys.n, sys.n, 'A');
  check_pattern(sys.h_pattern, sys.p, sys.n, 'H');
}

StructuredSystem make_system(std::size_t n, std::size_t p,
                             std::span<const std::pair<std::size_t, std::size_t>> a_one_based,
                             std::span<const std::pair<std::size_t, std::size_t>> h_one_based) {
  StructuredSystem sys{n, p, from_one_based(a_one_based, 'A'), from_one_based(h_one_based, 'H')};
  validate(sys);
  return sys;
}

StructuredSystem canonical(StructuredSystem sys) {
  std::sort(sys.a_pattern.begin(), sys.a_pattern.end());
  std::sort(sys.h_pattern.begin(), sys.h_pattern.end());
  return sys;
}

StructuredSystem without_measurements(const StructuredSystem& sys) {
  return StructuredSystem{sys.n, 0, sys.a_pattern, {}};
}

StructuredSystem select_measurements(const StructuredSystem& sys,
                                     std::span<const std::size_t> rows) {
  StructuredSystem out{sys.n, rows.size(), sys.a_pattern, {}};
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] >= sys.p) {
      throw InputError("measurement row " + std::to_string(rows[k] + 1) + " does not exist");
    }
    for (const Entry& e : sys.h_pattern) {
      if (e.row == rows[k]) {
        out.h_pattern.push_back({k, e.col});
      }
    }
  }
  return canonical(std::move(out));
}

StructuredSystem drop_measurement(const StructuredSystem& sys, std::size_t row) {
  if (row >= sys.p) {
    throw InputError("measurement row " + std::to_string(row + 1) + " does not exist");
  }
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < sys.p; ++r) {
    if (r != row) {
      keep.push_back(r);
    }
  }
  return select_measurements(sys, keep);
}

StructuredSystem with_state_sensors(const StructuredSystem& sys,
                                    std::span<const std::size_t> states) {
  StructuredSystem out = sys;
  for (std::size_t s : states) {
    if (s >= sys.n) {
      throw InputError("state " + std::to_string(s + 1) + " does not exist");
    }
    out.h_pattern.push_back({out.p++, s});
  }
  return out;
}

StateSet measured_states(const StructuredSystem& sys, std::size_t row) {
  StateSet out;
  for (const Entry& e : sys.h_pattern) {
    if (e.row == row) {
      out.push_back(e.col);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string state_label(std::size_t state) { return "x" + std::to_string(state + 1); }

std::string format_states(std::span<const std::size_t> states) {
  std::string out = "{";
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (k > 0) {
      out += ", ";
    }
    out += state_label(states[k]);
  }
  return out + "}";
}

} // namespace obspart
