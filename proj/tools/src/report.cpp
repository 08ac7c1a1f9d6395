#include "obspart/cli/report.hpp"

#include "obspart/errors.hpp"

#include <cstdio>
#include <sstream>

namespace obspart::cli {

namespace {

using nlohmann::ordered_json;

ordered_json one_based(const StateSet& states) {
  ordered_json out = ordered_json::array();
  for (std::size_t s : states) {
    out.push_back(s + 1);
  }
  return out;
}

StateSet zero_based(const ordered_json& j) {
  StateSet out;
  for (const auto& v : j) {
    std::size_t s = v.get<std::size_t>();
    if (s == 0) {
      throw InputError("report state indices are 1-based");
    }
    out.push_back(s - 1);
  }
  return out;
}

MeasurementType measurement_type(const std::string& s) {
  for (MeasurementType t : {MeasurementType::alpha, MeasurementType::beta, MeasurementType::gamma}) {
    if (to_string(t) == s) {
      return t;
    }
  }
  throw InputError("unknown measurement type \"" + s + "\"");
}

FailedCondition failed_condition(const std::string& s) {
  for (FailedCondition c : {FailedCondition::none, FailedCondition::accessibility, FailedCondition::matching}) {
    if (to_string(c) == s) {
      return c;
    }
  }
  throw InputError("unknown condition \"" + s + "\"");
}

std::string names_of(const ReportFile& r, const StateSet& states) {
  if (r.names.empty()) {
    return format_states(states);
  }
  std::string out = "{";
  for (std::size_t k = 0; k < states.size(); ++k) {
    out += (k ? ", " : "") + r.names[states[k]];
  }
  return out + "}";
}

std::string complex_text(std::complex<double> z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

} // namespace

ordered_json to_json(const ReportFile& r) {
  const PartitionReport& pr = r.partition;
  ordered_json j;
  j["version"] = kReportVersion;
  j["system"] = {{"n", r.n}, {"p", r.p}};
  if (!r.names.empty()) {
    j["system"]["names"] = r.names;
  }
  j["verdict"] = {{"observable", pr.verdict.observable}, {"failed", to_string(pr.verdict.failed)}};
  ordered_json alpha = ordered_json::array();
  for (const AlphaClass& c : pr.alpha_classes) {
    alpha.push_back({{"states", one_based(c.states)}, {"deficiency", c.deficiency}});
  }
  j["alpha_classes"] = alpha;
  ordered_json beta = ordered_json::array();
  for (const StateSet& c : pr.beta_classes) {
    beta.push_back(one_based(c));
  }
  j["beta_classes"] = beta;
  ordered_json labels = ordered_json::array();
  for (MeasurementType t : pr.labels) {
    labels.push_back(to_string(t));
  }
  j["labels"] = labels;
  ordered_json sets = ordered_json::array();
  for (const StateSet& s : pr.minimal_sets) {
    sets.push_back(one_based(s));
  }
  j["placement"] = {{"forbidden", one_based(pr.forbidden)},
                    {"count", pr.sensor_count},
                    {"overlap", pr.overlap},
                    {"witnesses", sets}};
  if (r.numeric) {
    const RankReport& rank = r.numeric->rank;
    ordered_json eig = ordered_json::array();
    for (std::complex<double> z : rank.pbh_rank_deficient_eigenvalues) {
      eig.push_back({z.real(), z.imag()});
    }
    j["numeric"] = {{"seed", r.numeric->seed},
                    {"tol", r.numeric->tol},
                    {"trials", rank.trials},
                    {"gramian_rank", rank.gramian_rank},
                    {"structural_rank", rank.structural_rank},
                    {"agreement", rank.agreement},
                    {"pbh_consistent", rank.pbh_consistent},
                    {"pbh_rank_deficient_eigenvalues", eig}};
  } else {
    j["numeric"] = nullptr;
  }
  return j;
}

ReportFile report_from_json(const ordered_json& j) {
  try {
    if (j.at("version") != kReportVersion) {
      throw InputError("unsupported report version");
    }
    ReportFile r;
    r.n = j.at("system").at("n").get<std::size_t>();
    r.p = j.at("system").at("p").get<std::size_t>();
    if (j["system"].contains("names")) {
      r.names = j["system"]["names"].get<std::vector<std::string>>();
    }
    PartitionReport& pr = r.partition;
    pr.verdict.observable = j.at("verdict").at("observable").get<bool>();
    pr.verdict.failed = failed_condition(j["verdict"].at("failed").get<std::string>());
    for (const auto& c : j.at("alpha_classes")) {
      pr.alpha_classes.push_back({zero_based(c.at("states")), c.at("deficiency").get<std::size_t>()});
    }
    for (const auto& c : j.at("beta_classes")) {
      pr.beta_classes.push_back(zero_based(c));
    }
    for (const auto& l : j.at("labels")) {
      pr.labels.push_back(measurement_type(l.get<std::string>()));
    }
    const auto& pl = j.at("placement");
    pr.forbidden = zero_based(pl.at("forbidden"));
    pr.sensor_count = pl.at("count").get<std::size_t>();
    pr.overlap = pl.at("overlap").get<std::size_t>();
    for (const auto& s : pl.at("witnesses")) {
      pr.minimal_sets.push_back(zero_based(s));
    }
    const auto& num = j.at("numeric");
    if (!num.is_null()) {
      NumericSection ns;
      ns.seed = num.at("seed").get<std::uint64_t>();
      ns.tol = num.at("tol").get<double>();
      ns.rank.trials = num.at("trials").get<std::size_t>();
      ns.rank.gramian_rank = num.at("gramian_rank").get<std::size_t>();
      ns.rank.structural_rank = num.at("structural_rank").get<std::size_t>();
      ns.rank.agreement = num.at("agreement").get<double>();
      ns.rank.pbh_consistent = num.at("pbh_consistent").get<bool>();
      for (const auto& z : num.at("pbh_rank_deficient_eigenvalues")) {
        ns.rank.pbh_rank_deficient_eigenvalues.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
      }
      r.numeric = ns;
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

std::string to_text(const ReportFile& r) {
  const PartitionReport& pr = r.partition;
  std::ostringstream out;
  out << "states " << r.n << ", measurements " << r.p << "\n";
  out << "verdict: " << (pr.verdict.observable ? "observable" : "unobservable");
  if (!pr.verdict.observable) {
    out << " (" << to_string(pr.verdict.failed) << " fails)";
  }
  out << "\n";
  out << "alpha classes:";
  if (pr.alpha_classes.empty()) {
    out << " none";
  }
  for (const AlphaClass& c : pr.alpha_classes) {
    out << " " << names_of(r, c.states);
    if (c.deficiency > 1) {
      out << "x" << c.deficiency;
    }
  }
  out << "\nbeta classes:";
  if (pr.beta_classes.empty()) {
    out << " none";
  }
  for (const StateSet& c : pr.beta_classes) {
    out << " " << names_of(r, c);
  }
  out << "\n";
  for (std::size_t k = 0; k < pr.labels.size(); ++k) {
    out << "y" << k + 1 << ": " << to_string(pr.labels[k]) << "\n";
  }
  if (!pr.forbidden.empty()) {
    out << "forbidden: " << names_of(r, pr.forbidden) << "\n";
  }
  out << "minimal sensor count: " << pr.sensor_count << " (overlap " << pr.overlap << ")\n";
  for (const StateSet& s : pr.minimal_sets) {
    out << "  witness " << names_of(r, s) << "\n";
  }
  if (r.numeric) {
    const RankReport& rank = r.numeric->rank;
    out << "numeric: gramian rank " << rank.gramian_rank << " of " << r.n << " (structural " << rank.structural_rank
        << "), agreement " << rank.agreement << " over " << rank.trials << " trials\n";
    for (std::complex<double> z : rank.pbh_rank_deficient_eigenvalues) {
      out << "  PBH deficient at " << complex_text(z) << "\n";
    }
  }
  return out.str();
}

bool operator==(const ReportFile& x, const ReportFile& y) {
  auto same_partition = [](const PartitionReport& a, const PartitionReport& b) {
    if (a.alpha_classes.size() != b.alpha_classes.size()) {
      return false;
    }
    for (std::size_t k = 0; k < a.alpha_classes.size(); ++k) {
      if (a.alpha_classes[k].states != b.alpha_classes[k].states ||
          a.alpha_classes[k].deficiency != b.alpha_classes[k].deficiency) {
        return false;
      }
    }
    return a.verdict.observable == b.verdict.observable && a.verdict.failed == b.verdict.failed &&
           a.beta_classes == b.beta_classes && a.labels == b.labels && a.forbidden == b.forbidden &&
           a.minimal_sets == b.minimal_sets && a.sensor_count == b.sensor_count && a.overlap == b.overlap;
  };
  auto same_numeric = [](const std::optional<NumericSection>& a, const std::optional<NumericSection>& b) {
    if (a.has_value() != b.has_value()) {
      return false;
    }
    if (!a) {
      return true;
    }
    const RankReport& p = a->rank;
    const RankReport& q = b->rank;
    return a->seed == b->seed && a->tol == b->tol && p.gramian_rank == q.gramian_rank &&
           p.pbh_rank_deficient_eigenvalues == q.pbh_rank_deficient_eigenvalues && p.trials == q.trials &&
           p.agreement == q.agreement && p.structural_rank == q.structural_rank &&
           p.pbh_consistent == q.pbh_consistent;
  };
  return x.n == y.n && x.p == y.p && x.names == y.names && same_partition(x.partition, y.partition) &&
         same_numeric(x.numeric, y.numeric);
}

} // namespace obspart::cli
