#pragma once

// Jointly yielding pairs: two unyielding entries d_ij, d_ik sharing row i.
//
// The pair is jointly yielding iff z^i = c1 z^j + c2 z^k for nonzero c1, c2.
// Along the ray D + t (c1 E^ij + c2 E^ik) the feasible t form a closed
// interval: 0 is interior when z^i = 0 and an endpoint otherwise.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "edmyield/edm_core.hpp"
#include "edmyield/yield_analysis.hpp"

namespace edmyield {

struct JointCoefficients {
  double c1 = 0.0;
  double c2 = 0.0;
  double residual = 0.0;  // ||z^i - c1 z^j - c2 z^k||
};

enum class JointStatus { JointlyYielding, JointlyUnyielding };
enum class JointCase { ZiZero, ZiNonzero };

std::string_view to_string(JointStatus s);
std::string_view to_string(JointCase c);

struct RayInterval {
  double lower = 0.0;
  double upper = 0.0;
};

struct JointReport {
  Index i = 0;
  Index j = 0;
  Index k = 0;
  JointStatus status = JointStatus::JointlyUnyielding;
  std::optional<JointCoefficients> coefficients;
  std::optional<RayInterval> ray;
  JointCase case_tag = JointCase::ZiNonzero;
};

// Throws InvalidIndex for repeated/out-of-range indices and PreconditionViolated
// unless n >= 4 and both d_ij and d_ik are unyielding. When z^i = 0 the
// coefficients are normalised to c2 = 1.
std::optional<JointCoefficients> joint_coefficients(const EdmDecomposition& dec, Index i, Index j,
                                                    Index k);

JointStatus classify_joint(const EdmDecomposition& dec, Index i, Index j, Index k);

RayInterval joint_ray_interval(const EdmDecomposition& dec, Index i, Index j, Index k,
                               const JointCoefficients& co);

JointReport analyze_joint(const EdmDecomposition& dec, Index i, Index j, Index k);

// Same as analyze_joint for entries given as (a1, b1), (a2, b2); the shared
// index becomes the row i. Throws InvalidIndex if the entries share no index.
JointReport analyze_joint_entries(const EdmDecomposition& dec, Index a1, Index b1, Index a2,
                                  Index b2);

// Closed forms, exposed for the reduction checks against the single-entry formulas.
RayInterval joint_interval_zi_zero(const Eigen::VectorXd& si, const Eigen::VectorXd& sj,
                                   const Eigen::VectorXd& sk, double c1, double c2);
RayInterval joint_interval_zi_nonzero(const Eigen::VectorXd& si, const Eigen::VectorXd& sj,
                                      const Eigen::VectorXd& sk, double c1, double c2);

struct JointEnumeration {
  std::vector<JointReport> joints;
  bool truncated = false;
};

// All triples (i; j, k), j < k, whose entries d_ij and d_ik are unyielding in
// `report`, ordered by (i, j, k). Stops after `limit` triples.
JointEnumeration enumerate_joints(const EdmDecomposition& dec, const YieldReport& report,
                                  std::size_t limit = static_cast<std::size_t>(-1));

}  // namespace edmyield
