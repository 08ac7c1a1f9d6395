#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace obspart::cli {

enum ExitCode : int {
  kOk = 0,
  /// analyze --require-observable on an unobservable system.
  kUnobservable = 1,
  kInputError = 2,
  kInfeasible = 3,
  kDisagreement = 4,
  kInternalError = 70,
};

/// Runs one command line (args[0] is the program name). Reports go to
/// `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace obspart::cli
