#include "obspart/numeric.hpp"

#include "obspart/digraph.hpp"
#include "obspart/errors.hpp"
#include "obspart/matching.hpp"
#include "obspart/partition.hpp"
#include "obspart/scc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace obspart {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// mt19937_64 output is fixed by the standard; the double conversion is done
// by hand so that values do not depend on the library's distributions.
class ValueStream {
public:
  ValueStream(std::uint64_t seed, std::uint64_t trial)
      : engine_(splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632BE59BD9B4E019ULL))) {}

  double next() {
    double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    double magnitude = std::exp2(2.0 * u - 1.0);
    return (engine_() >> 63) ? -magnitude : magnitude;
  }

private:
  std::mt19937_64 engine_;
};

void check_tol(double tol) {
  if (!(tol > 0.0)) {
    throw ParameterError("tolerance must be positive");
  }
}

std::string dump(const Eigen::MatrixXd& m) {
  std::ostringstream out;
  out.precision(17);
  out << m;
  return out.str();
}

double inf_norm(const Eigen::MatrixXd& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().rowwise().sum().maxCoeff();
}

Eigen::MatrixXd normalized(const Eigen::MatrixXd& a) {
  double s = inf_norm(a);
  return s > 0.0 ? Eigen::MatrixXd(a / s) : a;
}

template <typename Matrix>
std::size_t rank_of(const Matrix& m, double tol) {
  check_tol(tol);
  if (m.size() == 0) {
    return 0;
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) {
    return 0;
  }
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > tol * sv(0)) {
      ++r;
    }
  }
  return r;
}

StructuredSystem pattern_of(const Eigen::MatrixXd& a, const Eigen::MatrixXd& h) {
  StructuredSystem sys{static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(h.rows()), {}, {}};
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0.0) {
        sys.a_pattern.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
      }
    }
  }
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      if (h(i, j) != 0.0) {
        sys.h_pattern.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
      }
    }
  }
  return sys;
}

// Largest number of nodes covered by vertex-disjoint cycles of the pattern
// of m (self-loops count). Solved as an assignment problem where a present
// entry costs -1 and an absent diagonal entry (node left uncovered) costs 0.
std::size_t max_cycle_cover(const Eigen::MatrixXd& m) {
  const std::size_t n = static_cast<std::size_t>(m.rows());
  constexpr long kInf = 1L << 40;
  auto cost = [&](std::size_t i, std::size_t j) -> long {
    if (m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0.0) {
      return -1;
    }
    return i == j ? 0 : kInf;
  };
  // Hungarian method with potentials, 1-based internally.
  std::vector<long> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> row_of(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    row_of[0] = i;
    std::size_t j0 = 0;
    std::vector<long> minv(n + 1, kInf * 4);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      std::size_t i0 = row_of[j0];
      std::size_t j1 = 0;
      long delta = kInf * 4;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) {
          continue;
        }
        long cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  long total = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    total += cost(row_of[j] - 1, j - 1);
  }
  return static_cast<std::size_t>(-total);
}

} // namespace

NumericRealization realize(const StructuredSystem& sys, std::uint64_t seed, std::uint64_t trial) {
  validate(sys);
  StructuredSystem sorted = canonical(sys);
  NumericRealization r;
  r.seed = seed;
  r.trial = trial;
  r.a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(sys.n), static_cast<Eigen::Index>(sys.n));
  r.h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(sys.p), static_cast<Eigen::Index>(sys.n));
  ValueStream values(seed, trial);
  for (const Entry& e : sorted.a_pattern) {
    r.a(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = values.next();
  }
  for (const Entry& e : sorted.h_pattern) {
    r.h(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = values.next();
  }
  return r;
}

std::size_t numeric_rank(const Eigen::MatrixXd& m, double tol) { return rank_of(m, tol); }
std::size_t numeric_rank(const Eigen::MatrixXcd& m, double tol) { return rank_of(m, tol); }

Eigen::MatrixXd observability_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& h) {
  const Eigen::Index n = a.rows();
  const Eigen::Index p = h.rows();
  Eigen::MatrixXd scaled = normalized(a);
  Eigen::MatrixXd out(p * n, n);
  Eigen::MatrixXd block = h;
  for (Eigen::Index k = 0; k < n; ++k) {
    // Each block row is rescaled on its own; a positive factor per block
    // leaves the row space alone but stops the powers from fading out.
    double norm = block.norm();
    if (norm > 0.0) {
      block /= norm;
    }
    out.middleRows(k * p, p) = block;
    block = block * scaled;
  }
  return out;
}

std::size_t gramian_rank(const Eigen::MatrixXd& a, const Eigen::MatrixXd& h, double tol) {
  check_tol(tol);
  if (a.rows() == 0) {
    throw PreconditionError("gramian rank needs n >= 1");
  }
  if (h.rows() == 0) {
    return 0;
  }
  return numeric_rank(observability_matrix(a, h), tol);
}

std::size_t gramian_rank(const NumericRealization& r, double tol) { return gramian_rank(r.a, r.h, tol); }

RankVote vote(std::span<const std::size_t> ranks) {
  if (ranks.empty()) {
    throw ParameterError("at least one trial is required");
  }
  std::map<std::size_t, std::size_t> tally;
  for (std::size_t r : ranks) {
    ++tally[r];
  }
  RankVote out;
  std::size_t best = 0;
  for (const auto& [rank, count] : tally) {
    if (count >= best) {
      best = count;
      out.modal_rank = rank;
    }
  }
  out.trials = ranks.size();
  out.agreement = static_cast<double>(best) / static_cast<double>(ranks.size());
  out.ranks.assign(ranks.begin(), ranks.end());
  return out;
}

RankVote gramian_rank_vote(const StructuredSystem& sys, const RankOptions& opts) {
  check_tol(opts.tol);
  std::vector<std::size_t> ranks;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    ranks.push_back(gramian_rank(realize(sys, opts.seed, t), opts.tol));
  }
  return vote(ranks);
}

RankVote matrix_rank_vote(const StructuredSystem& sys, bool include_h, const RankOptions& opts) {
  check_tol(opts.tol);
  std::vector<std::size_t> ranks;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    NumericRealization r = realize(sys, opts.seed, t);
    if (include_h) {
      Eigen::MatrixXd stacked(r.a.rows() + r.h.rows(), r.a.cols());
      stacked << r.a, r.h;
      ranks.push_back(numeric_rank(stacked, opts.tol));
    } else {
      ranks.push_back(numeric_rank(r.a, opts.tol));
    }
  }
  return vote(ranks);
}

std::vector<std::complex<double>> block_eigenvalues(const Eigen::MatrixXd& a) {
  StructuredSystem pattern = pattern_of(a, Eigen::MatrixXd(0, a.cols()));
  SystemDigraph dg = build_digraph(pattern);
  SccDecomposition scc = decompose(dg);
  std::vector<std::complex<double>> out;
  for (const StateSet& comp : scc.components) {
    const auto size = static_cast<Eigen::Index>(comp.size());
    if (size == 1) {
      out.emplace_back(a(static_cast<Eigen::Index>(comp[0]), static_cast<Eigen::Index>(comp[0])), 0.0);
      continue;
    }
    Eigen::MatrixXd block(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
      for (Eigen::Index j = 0; j < size; ++j) {
        block(i, j) = a(static_cast<Eigen::Index>(comp[static_cast<std::size_t>(i)]),
                        static_cast<Eigen::Index>(comp[static_cast<std::size_t>(j)]));
      }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(block, false);
    if (solver.info() != Eigen::Success) {
      throw NumericError("eigensolver failed on block:\n" + dump(block));
    }
    std::vector<std::complex<double>> values(solver.eigenvalues().begin(), solver.eigenvalues().end());
    // Generically, 0 is an eigenvalue of multiplicity (block size - largest
    // cycle-family cover). Computed roots of such a cluster scatter like
    // eps^(1/k), so they are snapped back to the exact value.
    std::size_t zeros = comp.size() - max_cycle_cover(block);
    std::sort(values.begin(), values.end(),
              [](std::complex<double> x, std::complex<double> y) { return std::abs(x) < std::abs(y); });
    for (std::size_t k = 0; k < zeros; ++k) {
      values[k] = 0.0;
    }
    out.insert(out.end(), values.begin(), values.end());
  }
  return out;
}

std::vector<std::complex<double>> pbh_check(const Eigen::MatrixXd& a, const Eigen::MatrixXd& h, double tol) {
  check_tol(tol);
  const Eigen::Index n = a.rows();
  if (n == 0) {
    throw PreconditionError("PBH test needs n >= 1");
  }
  const double scale = inf_norm(a);
  Eigen::MatrixXd scaled = normalized(a);
  std::vector<std::complex<double>> deficient;
  Eigen::MatrixXcd stacked(n + h.rows(), n);
  stacked.bottomRows(h.rows()) = h.cast<std::complex<double>>();
  for (std::complex<double> lambda : block_eigenvalues(scaled)) {
    stacked.topRows(n) = scaled.cast<std::complex<double>>();
    stacked.topRows(n).diagonal().array() -= lambda;
    if (numeric_rank(stacked, tol) < static_cast<std::size_t>(n)) {
      deficient.push_back(scale > 0.0 ? lambda * scale : lambda);
    }
  }
  return deficient;
}

std::vector<std::complex<double>> pbh_check(const NumericRealization& r, double tol) {
  return pbh_check(r.a, r.h, tol);
}

std::size_t structural_gramian_rank(const StructuredSystem& sys) {
  Accessibility acc = accessibility_check(build_digraph(sys));
  std::vector<std::size_t> local(sys.n, kUnmatched);
  for (std::size_t k = 0; k < acc.accessible.size(); ++k) {
    local[acc.accessible[k]] = k;
  }
  const std::size_t m = acc.accessible.size();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const Entry& e : sys.a_pattern) {
    if (local[e.col] != kUnmatched && local[e.row] != kUnmatched) {
      edges.emplace_back(local[e.col], local[e.row]);
    }
  }
  for (const Entry& e : sys.h_pattern) {
    if (local[e.col] != kUnmatched) {
      edges.emplace_back(local[e.col], m + e.row);
    }
  }
  return maximum_matching(BipartiteGraph(m, m + sys.p, std::move(edges))).size();
}

RankReport rank_report(const StructuredSystem& sys, const RankOptions& opts) {
  check_tol(opts.tol);
  if (opts.trials == 0) {
    throw ParameterError("at least one trial is required");
  }
  std::vector<std::size_t> ranks;
  std::vector<std::vector<std::complex<double>>> pbh;
  RankReport out;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    NumericRealization r = realize(sys, opts.seed, t);
    ranks.push_back(gramian_rank(r, opts.tol));
    pbh.push_back(pbh_check(r, opts.tol));
    bool gramian_full = ranks.back() == sys.n;
    if (gramian_full != pbh.back().empty()) {
      out.pbh_consistent = false;
    }
  }
  RankVote v = vote(ranks);
  out.gramian_rank = v.modal_rank;
  out.agreement = v.agreement;
  out.trials = v.trials;
  for (std::size_t t = 0; t < ranks.size(); ++t) {
    if (ranks[t] == v.modal_rank) {
      out.pbh_rank_deficient_eigenvalues = pbh[t];
      break;
    }
  }
  out.structural_rank = structural_gramian_rank(sys);
  return out;
}

bool verify_alpha_equivalence(const StructuredSystem& sys, std::size_t u, std::size_t v,
                              const RankOptions& opts) {
  StructuredSystem base = without_measurements(sys);
  const std::size_t target = s_rank(base, false) + 1;
  const std::size_t uu[] = {u};
  const std::size_t vv[] = {v};
  const std::size_t both[] = {u, v};
  StructuredSystem su = with_state_sensors(base, uu);
  StructuredSystem sv = with_state_sensors(base, vv);
  StructuredSystem suv = with_state_sensors(base, both);
  bool structural = s_rank(su, true) == target && s_rank(sv, true) == target &&
                    s_rank(suv, true) == target;
  bool numeric = matrix_rank_vote(su, true, opts).modal_rank == target &&
                 matrix_rank_vote(sv, true, opts).modal_rank == target &&
                 matrix_rank_vote(suv, true, opts).modal_rank == target;
  return structural && numeric;
}

bool verify_beta_equivalence(const StructuredSystem& sys, std::span<const std::size_t> alpha_rows,
                             std::size_t u, std::size_t v, const RankOptions& opts) {
  StructuredSystem base = select_measurements(sys, alpha_rows);
  const std::size_t uu[] = {u};
  const std::size_t vv[] = {v};
  const std::size_t both[] = {u, v};
  std::size_t r0 = base.p == 0 ? 0 : gramian_rank_vote(base, opts).modal_rank;
  std::size_t ru = gramian_rank_vote(with_state_sensors(base, uu), opts).modal_rank;
  std::size_t rv = gramian_rank_vote(with_state_sensors(base, vv), opts).modal_rank;
  std::size_t ruv = gramian_rank_vote(with_state_sensors(base, both), opts).modal_rank;
  return ru == rv && rv == ruv && ru > r0;
}

double generic_agreement(const StructuredSystem& sys, std::size_t trials, std::uint64_t seed, double tol) {
  check_tol(tol);
  if (trials == 0) {
    throw ParameterError("at least one trial is required");
  }
  const bool structural = theorem_check(sys).observable;
  std::size_t agree = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    bool numeric = gramian_rank(realize(sys, seed, t), tol) == sys.n;
    agree += numeric == structural ? 1 : 0;
  }
  return static_cast<double>(agree) / static_cast<double>(trials);
}

} // namespace obspart
