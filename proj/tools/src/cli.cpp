#include "obspart/cli/cli.hpp"

#include "obspart/cli/dot.hpp"
#include "obspart/cli/io.hpp"
#include "obspart/cli/report.hpp"
#include "obspart/errors.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>

namespace obspart::cli {

namespace {

struct Common {
  std::string path;
  std::string measurements;
  std::string out_path;
  std::string format = "json";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("system", c.path, "System file (.json, or .mtx pattern for A)")->required();
  cmd->add_option("--measurements", c.measurements, "Matrix Market pattern file for H (with a .mtx system)");
  cmd->add_option("-o,--out", c.out_path, "Write the result to a file instead of stdout");
}

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "text"}));
}

void emit(const std::string& text, const Common& c, std::ostream& out) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out_path, std::ios::binary);
  if (!file || !(file << text)) {
    throw InputError("cannot write " + c.out_path);
  }
}

std::string render(const ReportFile& report, const Common& c) {
  return c.format == "text" ? to_text(report) : to_json(report).dump(2) + "\n";
}

ReportFile base_report(const LoadedSystem& loaded) {
  ReportFile r;
  r.n = loaded.sys.n;
  r.p = loaded.sys.p;
  r.names = loaded.names;
  return r;
}

std::uint64_t parse_seed(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParameterError(std::string(what) + " must be a non-negative integer");
  }
  return v;
}

StateSet parse_forbidden(const std::vector<std::string>& items, std::size_t n) {
  StateSet out;
  for (const std::string& item : items) {
    if (item == "none") {
      continue;
    }
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || v == 0 || v > n) {
      throw InputError("--forbid: \"" + item + "\" is not a state in 1.." + std::to_string(n));
    }
    out.push_back(v - 1);
  }
  return out;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural observability analysis and sensor placement", "obspart"};
  app.require_subcommand(1);
  Common common;

  bool require_observable = false;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Classify measurements and find a minimal placement");
  add_common(analyze_cmd, common);
  add_format(analyze_cmd, common);
  analyze_cmd->add_flag("--require-observable", require_observable, "Exit 1 if the system is unobservable");

  std::vector<std::string> forbid;
  bool all_witnesses = false;
  CLI::App* place_cmd = app.add_subcommand("place", "Minimal dedicated-sensor placement");
  add_common(place_cmd, common);
  add_format(place_cmd, common);
  place_cmd->add_option("--forbid", forbid, "States (1-based) that cannot carry a sensor, or 'none'")
      ->delimiter(',');
  place_cmd->add_flag("--all-witnesses", all_witnesses, "Enumerate every minimal placement (n <= 15)");

  std::size_t trials = 5;
  std::string seed_text;
  double tol = kDefaultTolerance;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Cross-check the structural verdict numerically");
  add_common(verify_cmd, common);
  add_format(verify_cmd, common);
  verify_cmd->add_option("--trials", trials, "Random realizations");
  verify_cmd->add_option("--seed", seed_text, "RNG seed (default: $OBSPART_SEED, else 0)");
  verify_cmd->add_option("--tol", tol, "Relative singular value threshold");

  std::string color_by = "alpha";
  CLI::App* dot_cmd = app.add_subcommand("export-dot", "Graphviz rendering of the system digraph");
  add_common(dot_cmd, common);
  dot_cmd->add_option("--color-by", color_by, "alpha, beta, scc or none");

  std::vector<std::string> argv_copy(args.rbegin(), args.rend());
  if (!argv_copy.empty()) {
    argv_copy.pop_back();
  }
  try {
    app.parse(argv_copy);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "obspart: " << e.what() << "\n";
    return kInputError;
  }

  try {
    LoadedSystem loaded = load_system(common.path, common.measurements);
    if (analyze_cmd->parsed()) {
      ReportFile report = base_report(loaded);
      report.partition = analyze(loaded.sys);
      emit(render(report, common), common, out);
      if (require_observable && !report.partition.verdict.observable) {
        return kUnobservable;
      }
      return kOk;
    }
    if (place_cmd->parsed()) {
      StateSet forbidden = parse_forbidden(forbid, loaded.sys.n);
      ReportFile report = base_report(loaded);
      report.partition = analyze(loaded.sys, forbidden, all_witnesses);
      emit(render(report, common), common, out);
      return kOk;
    }
    if (verify_cmd->parsed()) {
      if (!(tol > 0.0)) {
        throw ParameterError("--tol must be positive");
      }
      if (trials == 0) {
        throw ParameterError("--trials must be at least 1");
      }
      std::uint64_t seed = 0;
      if (!seed_text.empty()) {
        seed = parse_seed(seed_text, "--seed");
      } else if (const char* env = std::getenv("OBSPART_SEED"); env != nullptr && *env != '\0') {
        seed = parse_seed(env, "OBSPART_SEED");
      }
      ReportFile report = base_report(loaded);
      report.partition = analyze(loaded.sys);
      NumericSection numeric;
      numeric.seed = seed;
      numeric.tol = tol;
      numeric.rank = rank_report(loaded.sys, {seed, trials, tol});
      report.numeric = numeric;
      emit(render(report, common), common, out);
      const RankReport& rank = numeric.rank;
      bool numeric_observable = rank.gramian_rank == loaded.sys.n;
      bool agree = numeric_observable == report.partition.verdict.observable &&
                   rank.gramian_rank == rank.structural_rank && rank.pbh_consistent;
      if (!agree) {
        err << "obspart: structural and numeric results disagree (gramian rank " << rank.gramian_rank
            << ", structural " << rank.structural_rank << ")\n";
        return kDisagreement;
      }
      return kOk;
    }
    if (dot_cmd->parsed()) {
      emit(to_dot(loaded, parse_color_by(color_by)), common, out);
      return kOk;
    }
  } catch (const InfeasibleError& e) {
    err << "obspart: infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const InputError& e) {
    err << "obspart: " << e.what() << "\n";
    return kInputError;
  } catch (const ParameterError& e) {
    err << "obspart: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    err << "obspart: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "obspart: internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}

} // namespace obspart::cli
