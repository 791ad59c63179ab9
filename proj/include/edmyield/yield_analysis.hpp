#pragma once

// Yielding / unyielding classification of single entries and their exact
// yielding intervals.
//
// An entry d_kl is yielding when D + t E^kl stays a Euclidean distance matrix
// for some t != 0. With r = n - 1 every entry yields; otherwise d_kl yields
// exactly when the Gale rows z^k and z^l are parallel (two zero rows count as
// parallel). The interval endpoints are closed-form in the dual rows s^k, s^l.

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "edmyield/edm_core.hpp"

namespace edmyield {

enum class ParallelKind { BothZero, OneZero, Parallel, NotParallel };

struct ParallelResult {
  ParallelKind kind = ParallelKind::NotParallel;
  double c = 0.0;         // zk ~= c * zl, meaningful for Parallel
  double residual = 0.0;  // ||zk - c zl|| / ||zk|| when both rows are nonzero
};

// zero_threshold: norm at or below which a row counts as zero.
ParallelResult parallel_test(const Eigen::VectorXd& zk, const Eigen::VectorXd& zl,
                             const Tolerances& tol, double zero_threshold);
inline ParallelResult parallel_test(const Eigen::VectorXd& zk, const Eigen::VectorXd& zl,
                                    const Tolerances& tol) {
  return parallel_test(zk, zl, tol, tol.parallel_rel);
}

enum class EntryStatus { Yielding, Unyielding };

enum class CaseTag { FullRank, ZeroZero, ParallelPos, ParallelNeg, Unyielding, OrderTwo };

std::string_view to_string(EntryStatus s);
std::string_view to_string(CaseTag t);
std::string_view to_string(ParallelKind k);

struct YieldInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool upper_unbounded = false;  // order-two matrices only
  CaseTag tag = CaseTag::Unyielding;

  bool contains(double t) const { return t >= lower && (upper_unbounded || t <= upper); }
};

EntryStatus classify_entry(const EdmDecomposition& dec, Index k, Index l);
YieldInterval yield_interval(const EdmDecomposition& dec, Index k, Index l);

// [2/lambda_r, 2/lambda_1] with (lambda_1, lambda_r) = rank2_eigenpair(a, b).
// Throws InternalInconsistency unless lambda_1 > 0 > lambda_r.
YieldInterval eigenpair_interval(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                                 CaseTag tag);

// Interval for z^k = c z^l with both rows nonzero: [-4c/||sk - c sl||^2, 0]
// for c > 0 and [0, 4|c|/||sk - c sl||^2] for c < 0.
YieldInterval parallel_interval(const Eigen::VectorXd& sk, const Eigen::VectorXd& sl, double c);

struct EntryReport {
  Index k = 0;
  Index l = 0;
  EntryStatus status = EntryStatus::Unyielding;
  YieldInterval interval;
  ParallelKind parallel = ParallelKind::NotParallel;
  std::optional<double> c;         // present for ParallelPos / ParallelNeg
  double parallel_residual = 0.0;  // relative residual of the parallelism fit
  bool near_threshold = false;     // residual within a factor 100 of parallel_rel
};

EntryReport analyze_entry(const EdmDecomposition& dec, Index k, Index l);

struct YieldReport {
  Index n = 0;
  std::vector<EntryReport> entries;  // (k, l), k < l, lexicographic

  const EntryReport& at(Index k, Index l) const;
  std::size_t yielding_count() const;
};

// Evaluates every upper-triangle entry; entries are independent and are
// processed in parallel. The output is identical to reference::analyze_all.
YieldReport analyze_all(const EdmDecomposition& dec);

// Position of (k, l), k < l, in the lexicographic upper-triangle order.
std::size_t upper_triangle_offset(Index n, Index k, Index l);

}  // namespace edmyield
