#include "edmyield/joint_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edmyield/error.hpp"

namespace edmyield {

std::string_view to_string(JointStatus s) {
  return s == JointStatus::JointlyYielding ? "jointly-yielding" : "jointly-unyielding";
}

std::string_view to_string(JointCase c) {
  return c == JointCase::ZiZero ? "zi-zero" : "zi-nonzero";
}

namespace {

void check_triple(const EdmDecomposition& dec, Index i, Index j, Index k) {
  const Index n = dec.order();
  for (Index x : {i, j, k}) {
    if (x < 1 || x > n) {
      throw Error(ErrorCode::InvalidIndex,
                  "index " + std::to_string(x) + " outside 1.." + std::to_string(n));
    }
  }
  if (i == j || i == k || j == k) {
    throw Error(ErrorCode::InvalidIndex, "joint analysis needs three distinct indices");
  }
  if (n < 4) {
    throw Error(ErrorCode::PreconditionViolated,
                "precondition: joint analysis requires a matrix of order n >= 4");
  }
  if (classify_entry(dec, i, j) != EntryStatus::Unyielding ||
      classify_entry(dec, i, k) != EntryStatus::Unyielding) {
    throw Error(ErrorCode::PreconditionViolated,
                "precondition: both entries must be unyielding");
  }
}

bool zi_is_zero(const EdmDecomposition& dec, Index i) {
  return gale_transform(dec, i).norm() <= gale_zero_threshold(dec);
}

}  // namespace

std::optional<JointCoefficients> joint_coefficients(const EdmDecomposition& dec, Index i, Index j,
                                                    Index k) {
  check_triple(dec, i, j, k);
  const Tolerances& tol = dec.tolerances();
  const double zero = gale_zero_threshold(dec);
  const Eigen::VectorXd zi = gale_transform(dec, i);
  const Eigen::VectorXd zj = gale_transform(dec, j);
  const Eigen::VectorXd zk = gale_transform(dec, k);

  if (zi.norm() <= zero) {
    // Need c1 z^j + c2 z^k = 0 with both coefficients nonzero, i.e. z^k = a z^j.
    const ParallelResult pr = parallel_test(zk, zj, tol, zero);
    if (pr.kind != ParallelKind::Parallel) {
      return std::nullopt;
    }
    JointCoefficients co{-pr.c, 1.0, 0.0};
    co.residual = (co.c1 * zj + co.c2 * zk).norm();
    return co;
  }

  const double accept = tol.parallel_rel * std::max(zi.norm(), 1.0);
  Eigen::MatrixXd a(zi.size(), 2);
  a.col(0) = zj;
  a.col(1) = zk;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double s1 = sv(0);
  const double s2 = sv.size() > 1 ? sv(1) : 0.0;

  if (s2 <= tol.parallel_rel * std::max(s1, zero)) {
    // z^j, z^k span at most a line. z^i on that line would make d_ij or d_ik
    // yielding, contradicting the precondition.
    if (s1 <= zero) {
      return std::nullopt;
    }
    const Eigen::VectorXd u = svd.matrixU().col(0);
    const double off_line = (zi - u * u.dot(zi)).norm();
    if (off_line <= accept) {
      throw Error(ErrorCode::DegenerateGaleRows,
                  "z^j and z^k are linearly dependent and z^i lies in their span");
    }
    return std::nullopt;
  }

  const Eigen::Vector2d c = svd.solve(zi);
  const double residual = (zi - a * c).norm();
  if (residual > accept || std::abs(c(0)) <= tol.parallel_rel ||
      std::abs(c(1)) <= tol.parallel_rel) {
    return std::nullopt;
  }
  return JointCoefficients{c(0), c(1), residual};
}

JointStatus classify_joint(const EdmDecomposition& dec, Index i, Index j, Index k) {
  return joint_coefficients(dec, i, j, k) ? JointStatus::JointlyYielding
                                          : JointStatus::JointlyUnyielding;
}

RayInterval joint_interval_zi_zero(const Eigen::VectorXd& si, const Eigen::VectorXd& sj,
                                   const Eigen::VectorXd& sk, double c1, double c2) {
  const YieldInterval iv = eigenpair_interval(si, c1 * sj + c2 * sk, CaseTag::ZeroZero);
  return {iv.lower, iv.upper};
}

RayInterval joint_interval_zi_nonzero(const Eigen::VectorXd& si, const Eigen::VectorXd& sj,
                                      const Eigen::VectorXd& sk, double c1, double c2) {
  const double gap = (si - c1 * sj - c2 * sk).squaredNorm();
  if (!(gap > 0.0)) {
    throw Error(ErrorCode::InternalInconsistency, "s^i - c1 s^j - c2 s^k vanishes");
  }
  return {-4.0 / gap, 0.0};
}

RayInterval joint_ray_interval(const EdmDecomposition& dec, Index i, Index j, Index k,
                               const JointCoefficients& co) {
  check_triple(dec, i, j, k);
  const Eigen::VectorXd si = dual_row(dec, i);
  const Eigen::VectorXd sj = dual_row(dec, j);
  const Eigen::VectorXd sk = dual_row(dec, k);
  if (zi_is_zero(dec, i)) {
    return joint_interval_zi_zero(si, sj, sk, co.c1, co.c2);
  }
  return joint_interval_zi_nonzero(si, sj, sk, co.c1, co.c2);
}

JointReport analyze_joint(const EdmDecomposition& dec, Index i, Index j, Index k) {
  JointReport out;
  out.i = i;
  out.j = j;
  out.k = k;
  out.coefficients = joint_coefficients(dec, i, j, k);
  out.case_tag = zi_is_zero(dec, i) ? JointCase::ZiZero : JointCase::ZiNonzero;
  if (out.coefficients) {
    out.status = JointStatus::JointlyYielding;
    out.ray = joint_ray_interval(dec, i, j, k, *out.coefficients);
  }
  return out;
}

JointReport analyze_joint_entries(const EdmDecomposition& dec, Index a1, Index b1, Index a2,
                                  Index b2) {
  // E^ij is symmetric, so (d_ij, d_kj) is the pair (j; i, k).
  if (a1 == a2) return analyze_joint(dec, a1, b1, b2);
  if (a1 == b2) return analyze_joint(dec, a1, b1, a2);
  if (b1 == a2) return analyze_joint(dec, b1, a1, b2);
  if (b1 == b2) return analyze_joint(dec, b1, a1, a2);
  throw Error(ErrorCode::InvalidIndex, "the two entries do not share a row or column");
}

JointEnumeration enumerate_joints(const EdmDecomposition& dec, const YieldReport& report,
                                  std::size_t limit) {
  JointEnumeration out;
  const Index n = dec.order();
  if (n < 4) {
    return out;
  }
  for (Index i = 1; i <= n; ++i) {
    for (Index j = 1; j <= n; ++j) {
      if (j == i || report.at(i, j).status != EntryStatus::Unyielding) continue;
      for (Index k = j + 1; k <= n; ++k) {
        if (k == i || report.at(i, k).status != EntryStatus::Unyielding) continue;
        if (out.joints.size() >= limit) {
          out.truncated = true;
          return out;
        }
        out.joints.push_back(analyze_joint(dec, i, j, k));
      }
    }
  }
  return out;
}

}  // namespace edmyield
