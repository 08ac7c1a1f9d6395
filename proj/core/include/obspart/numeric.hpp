#pragma once

#include "obspart/system.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace obspart {

/// Dense matrices with the sparsity of a StructuredSystem. Nonzeros have
/// log-uniform magnitude on [0.5, 2] and a random sign; the values depend
/// only on (seed, trial).
struct NumericRealization {
  Eigen::MatrixXd a;
  Eigen::MatrixXd h;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
};

NumericRealization realize(const StructuredSystem& sys, std::uint64_t seed, std::uint64_t trial);

inline constexpr double kDefaultTolerance = 1e-8;

struct RankOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 5;
  double tol = kDefaultTolerance;
};

/// Number of singular values above tol * sigma_max.
std::size_t numeric_rank(const Eigen::MatrixXd& m, double tol);
std::size_t numeric_rank(const Eigen::MatrixXcd& m, double tol);

/// [H; H Â; ...; H Â^(n-1)] with Â = A / ||A||_inf. Scaling A by a positive
/// constant scales each block row by a positive constant, so the rank is
/// that of the unscaled stack.
Eigen::MatrixXd observability_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& h);

/// Numeric rank of the observability matrix of one realization.
/// Throws ParameterError for tol <= 0.
std::size_t gramian_rank(const NumericRealization& r, double tol = kDefaultTolerance);
std::size_t gramian_rank(const Eigen::MatrixXd& a, const Eigen::MatrixXd& h,
                         double tol = kDefaultTolerance);

struct RankVote {
  std::size_t modal_rank = 0;
  /// Fraction of trials that produced the modal rank.
  double agreement = 0.0;
  std::size_t trials = 0;
  std::vector<std::size_t> ranks;
};

/// Majority rank over trials 0..trials-1; ties go to the larger rank.
RankVote vote(std::span<const std::size_t> ranks);
RankVote gramian_rank_vote(const StructuredSystem& sys, const RankOptions& opts = {});
/// Modal numeric rank of realized [A; H] (or A alone).
RankVote matrix_rank_vote(const StructuredSystem& sys, bool include_h, const RankOptions& opts = {});

/// Eigenvalues of A taken block by block over its strongly connected
/// components. Singletons yield their exact diagonal value; in larger
/// blocks the generic multiplicity of 0 (block size minus the largest
/// cycle-family cover) is restored exactly. Throws NumericError if an
/// eigensolve fails.
std::vector<std::complex<double>> block_eigenvalues(const Eigen::MatrixXd& a);

/// PBH test: eigenvalues of A at which [A - lambda I; H] loses column rank.
/// Empty iff the realization is observable.
std::vector<std::complex<double>> pbh_check(const NumericRealization& r, double tol = kDefaultTolerance);
std::vector<std::complex<double>> pbh_check(const Eigen::MatrixXd& a, const Eigen::MatrixXd& h,
                                            double tol = kDefaultTolerance);

struct RankReport {
  std::size_t gramian_rank = 0;
  std::vector<std::complex<double>> pbh_rank_deficient_eigenvalues;
  std::size_t trials = 0;
  double agreement = 0.0;
  /// Generic rank predicted from the graph.
  std::size_t structural_rank = 0;
  /// PBH and Gramian gave the same verdict on every trial.
  bool pbh_consistent = true;
};

RankReport rank_report(const StructuredSystem& sys, const RankOptions& opts = {});

/// Generic rank of the observability matrix read off the graph: the
/// structural rank of the accessible subsystem [A_acc; H_acc].
std::size_t structural_gramian_rank(const StructuredSystem& sys);

/// Type-alpha equivalence of states u and v: measuring either, or both,
/// raises the rank of [A; H] by exactly one. Checked structurally and on
/// realizations; both must agree.
bool verify_alpha_equivalence(const StructuredSystem& sys, std::size_t u, std::size_t v,
                              const RankOptions& opts = {});

/// Type-beta equivalence relative to the alpha rows of H: the Gramian
/// ranks with u, with v, and with both coincide and exceed the rank of
/// the alpha rows alone (an empty row set has rank 0).
bool verify_beta_equivalence(const StructuredSystem& sys, std::span<const std::size_t> alpha_rows,
                             std::size_t u, std::size_t v, const RankOptions& opts = {});

/// Fraction of realizations whose numeric observability verdict equals
/// theorem_check. Throws ParameterError for zero trials.
double generic_agreement(const StructuredSystem& sys, std::size_t trials, std::uint64_t seed = 0,
                         double tol = kDefaultTolerance);

} // namespace obspart
