#include "edmyield/yield_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "edmyield/error.hpp"
#include "parallel_util.hpp"

namespace edmyield {

std::string_view to_string(EntryStatus s) {
  return s == EntryStatus::Yielding ? "yielding" : "unyielding";
}

std::string_view to_string(CaseTag t) {
  switch (t) {
    case CaseTag::FullRank: return "full-rank";
    case CaseTag::ZeroZero: return "zero-zero";
    case CaseTag::ParallelPos: return "parallel-pos";
    case CaseTag::ParallelNeg: return "parallel-neg";
    case CaseTag::Unyielding: return "unyielding";
    case CaseTag::OrderTwo: return "order-two";
  }
  return "unknown";
}

std::string_view to_string(ParallelKind k) {
  switch (k) {
    case ParallelKind::BothZero: return "both-zero";
    case ParallelKind::OneZero: return "one-zero";
    case ParallelKind::Parallel: return "parallel";
    case ParallelKind::NotParallel: return "not-parallel";
  }
  return "unknown";
}

ParallelResult parallel_test(const Eigen::VectorXd& zk, const Eigen::VectorXd& zl,
                             const Tolerances& tol, double zero_threshold) {
  const double nk = zk.norm();
  const double nl = zl.norm();
  const bool k_zero = nk <= zero_threshold;
  const bool l_zero = nl <= zero_threshold;
  if (k_zero && l_zero) {
    return {ParallelKind::BothZero, 0.0, 0.0};
  }
  if (k_zero || l_zero) {
    return {ParallelKind::OneZero, 0.0, 1.0};
  }
  const double c = zk.dot(zl) / (nl * nl);
  const double residual = (zk - c * zl).norm() / nk;
  if (residual <= tol.parallel_rel && std::abs(c) > tol.parallel_rel) {
    return {ParallelKind::Parallel, c, residual};
  }
  return {ParallelKind::NotParallel, c, residual};
}

namespace {

struct OrderedPair {
  Index k;
  Index l;
};

OrderedPair checked_pair(const EdmDecomposition& dec, Index k, Index l) {
  const Index n = dec.order();
  if (k < 1 || k > n || l < 1 || l > n) {
    throw Error(ErrorCode::InvalidIndex, "entry (" + std::to_string(k) + "," +
                                             std::to_string(l) + ") outside a " +
                                             std::to_string(n) + "x" + std::to_string(n) +
                                             " matrix");
  }
  if (k == l) {
    throw Error(ErrorCode::InvalidIndex,
                "diagonal entry (" + std::to_string(k) + "," + std::to_string(l) +
                    ") has no yielding interval");
  }
  return k < l ? OrderedPair{k, l} : OrderedPair{l, k};
}

ParallelResult gale_parallel(const EdmDecomposition& dec, Index k, Index l) {
  return parallel_test(gale_transform(dec, k), gale_transform(dec, l), dec.tolerances(),
                       gale_zero_threshold(dec));
}

}  // namespace

YieldInterval eigenpair_interval(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                                 CaseTag tag) {
  const Rank2Eigenpair ev = rank2_eigenpair(a, b);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * a.norm() * b.norm();
  if (!(ev.largest > floor && ev.smallest < -floor)) {
    throw Error(ErrorCode::InternalInconsistency,
                "dual rows are zero or parallel; expected one positive and one negative "
                "eigenvalue");
  }
  return {2.0 / ev.smallest, 2.0 / ev.largest, false, tag};
}

YieldInterval parallel_interval(const Eigen::VectorXd& sk, const Eigen::VectorXd& sl, double c) {
  const double gap = (sk - c * sl).squaredNorm();
  if (!(gap > 0.0)) {
    throw Error(ErrorCode::InternalInconsistency, "s^k - c s^l vanishes for parallel Gale rows");
  }
  if (c > 0.0) {
    return {-4.0 * c / gap, 0.0, false, CaseTag::ParallelPos};
  }
  return {0.0, 4.0 * std::abs(c) / gap, false, CaseTag::ParallelNeg};
}

EntryReport analyze_entry(const EdmDecomposition& dec, Index k, Index l) {
  const auto [a, b] = checked_pair(dec, k, l);
  const Index n = dec.order();
  const Tolerances& tol = dec.tolerances();

  EntryReport out;
  out.k = a;
  out.l = b;

  if (n == 2) {
    // D + t E^12 is an EDM iff d_12 + t >= 0.
    out.status = EntryStatus::Yielding;
    out.interval = {-dec.distances().entry(1, 2), 0.0, true, CaseTag::OrderTwo};
    return out;
  }

  if (dec.gale_dimension() == 0) {
    out.status = EntryStatus::Yielding;
    out.interval = eigenpair_interval(dual_row(dec, a), dual_row(dec, b), CaseTag::FullRank);
    return out;
  }

  const ParallelResult pr = gale_parallel(dec, a, b);
  out.parallel = pr.kind;
  out.parallel_residual = pr.residual;
  if (pr.kind == ParallelKind::Parallel || pr.kind == ParallelKind::NotParallel) {
    out.near_threshold =
        pr.residual > tol.parallel_rel / 100.0 && pr.residual < tol.parallel_rel * 100.0;
  }

  switch (pr.kind) {
    case ParallelKind::BothZero:
      if (n < 4) {
        throw Error(ErrorCode::InternalInconsistency,
                    "two zero Gale rows cannot occur for n = 3");
      }
      out.status = EntryStatus::Yielding;
      out.interval = eigenpair_interval(dual_row(dec, a), dual_row(dec, b), CaseTag::ZeroZero);
      break;
    case ParallelKind::Parallel:
      out.status = EntryStatus::Yielding;
      out.c = pr.c;
      out.interval = parallel_interval(dual_row(dec, a), dual_row(dec, b), pr.c);
      break;
    case ParallelKind::OneZero:
    case ParallelKind::NotParallel:
      out.status = EntryStatus::Unyielding;
      out.interval = {0.0, 0.0, false, CaseTag::Unyielding};
      break;
  }
  return out;
}

EntryStatus classify_entry(const EdmDecomposition& dec, Index k, Index l) {
  const auto [a, b] = checked_pair(dec, k, l);
  if (dec.order() == 2 || dec.gale_dimension() == 0) {
    return EntryStatus::Yielding;
  }
  const ParallelKind kind = gale_parallel(dec, a, b).kind;
  return kind == ParallelKind::BothZero || kind == ParallelKind::Parallel
             ? EntryStatus::Yielding
             : EntryStatus::Unyielding;
}

YieldInterval yield_interval(const EdmDecomposition& dec, Index k, Index l) {
  return analyze_entry(dec, k, l).interval;
}

std::size_t upper_triangle_offset(Index n, Index k, Index l) {
  // Rows 1..k-1 contribute (n-1) + (n-2) + ... + (n-k+1) entries.
  const auto kk = static_cast<std::size_t>(k - 1);
  const auto nn = static_cast<std::size_t>(n);
  return kk * nn - kk * (kk + 1) / 2 + static_cast<std::size_t>(l - k - 1);
}

const EntryReport& YieldReport::at(Index k, Index l) const {
  if (k > l) {
    std::swap(k, l);
  }
  if (k < 1 || l > n || k == l) {
    throw Error(ErrorCode::InvalidIndex, "no report entry (" + std::to_string(k) + "," +
                                             std::to_string(l) + ")");
  }
  return entries.at(upper_triangle_offset(n, k, l));
}

std::size_t YieldReport::yielding_count() const {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(),
      [](const EntryReport& e) { return e.status == EntryStatus::Yielding; }));
}

YieldReport analyze_all(const EdmDecomposition& dec) {
  const Index n = dec.order();
  YieldReport report;
  report.n = n;
  report.entries.resize(static_cast<std::size_t>(n * (n - 1) / 2));

  // Row k owns a contiguous block of the output, so each slot has one writer.
  detail::ExceptionSlot failure;
#pragma omp parallel for schedule(dynamic)
  for (Index k = 1; k < n; ++k) {
    failure.run([&] {
      for (Index l = k + 1; l <= n; ++l) {
        report.entries[upper_triangle_offset(n, k, l)] = analyze_entry(dec, k, l);
      }
    });
  }
  failure.rethrow();
  return report;
}

}  // namespace edmyield
