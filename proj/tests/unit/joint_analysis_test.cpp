#include <cmath>

#include <gtest/gtest.h>

#include "edmyield/joint_analysis.hpp"
#include "edmyield/oracle.hpp"
#include "error_matchers.hpp"
#include "generators.hpp"
#include "reference_instances.hpp"

using namespace edmyield;
using namespace edmyield::testing;

TEST(JointAnalysis, KiteZiZero) {
  const EdmDecomposition dec = decompose(DistanceMatrix(kite4()));
  const JointReport j = analyze_joint(dec, 1, 2, 3);
  EXPECT_EQ(j.status, JointStatus::JointlyYielding);
  EXPECT_EQ(j.case_tag, JointCase::ZiZero);
  EXPECT_NEAR(j.coefficients->c1, 2.0, 1e-12);
  EXPECT_NEAR(j.coefficients->c2, 1.0, 1e-12);
  EXPECT_NEAR(j.ray->lower, -2.0 * (std::sqrt(17.0) - 1.0), 1e-12);
  EXPECT_NEAR(j.ray->upper, 2.0 * (std::sqrt(17.0) + 1.0), 1e-12);
}

TEST(JointAnalysis, CollinearZiNonzero) {
  const EdmDecomposition dec = decompose(DistanceMatrix(line5()));
  const JointReport j = analyze_joint(dec, 1, 3, 4);
  EXPECT_EQ(j.case_tag, JointCase::ZiNonzero);
  EXPECT_NEAR(j.coefficients->c1, 1.0, 1e-12);
  EXPECT_NEAR(j.coefficients->c2, 2.0, 1e-12);
  EXPECT_NEAR(j.ray->lower, -4.0, 1e-12);
  EXPECT_NEAR(j.ray->upper, 0.0, 1e-12);
}

TEST(JointAnalysis, CrossNegativeCoefficients) {
  const EdmDecomposition dec = decompose(DistanceMatrix(cross5()));
  const JointReport j = analyze_joint(dec, 1, 2, 4);
  EXPECT_EQ(j.status, JointStatus::JointlyYielding);
  EXPECT_NEAR(j.coefficients->c1, -0.5, 1e-12);
  EXPECT_NEAR(j.coefficients->c2, -1.0, 1e-12);
  EXPECT_NEAR(j.ray->lower, -8.0, 1e-12);
  EXPECT_NEAR(j.ray->upper, 0.0, 1e-12);
}

TEST(JointAnalysis, Preconditions) {
  const EdmDecomposition tri = decompose(DistanceMatrix(triangle3()));
  EXPECT_EDM_ERROR(analyze_joint(tri, 1, 2, 3), ErrorCode::PreconditionViolated);
  const EdmDecomposition cross = decompose(DistanceMatrix(cross5()));
  EXPECT_EDM_ERROR(analyze_joint(cross, 1, 3, 2), ErrorCode::PreconditionViolated);
  EXPECT_EDM_ERROR(analyze_joint(cross, 1, 1, 2), ErrorCode::InvalidIndex);
  EXPECT_EDM_ERROR(analyze_joint(cross, 1, 2, 9), ErrorCode::InvalidIndex);
}

TEST(JointAnalysis, EntriesSharingAnIndex) {
  const EdmDecomposition dec = decompose(DistanceMatrix(kite4()));
  const JointReport a = analyze_joint_entries(dec, 2, 1, 1, 3);
  EXPECT_EQ(a.i, 1);
  EXPECT_EQ(a.status, JointStatus::JointlyYielding);
  EXPECT_EDM_ERROR(analyze_joint_entries(dec, 1, 2, 3, 4), ErrorCode::InvalidIndex);
}

TEST(JointAnalysis, EnumerationOrderAndLimit) {
  const EdmDecomposition dec = decompose(DistanceMatrix(line5()));
  const YieldReport rep = analyze_all(dec);
  const JointEnumeration all = enumerate_joints(dec, rep);
  EXPECT_FALSE(all.truncated);
  EXPECT_EQ(all.joints.size(), 30u);  // 5 rows x C(4,2) pairs, all unyielding
  for (std::size_t i = 1; i < all.joints.size(); ++i) {
    const auto& p = all.joints[i - 1];
    const auto& q = all.joints[i];
    EXPECT_TRUE(std::tie(p.i, p.j, p.k) < std::tie(q.i, q.j, q.k));
  }
  const JointEnumeration few = enumerate_joints(dec, rep, 7);
  EXPECT_TRUE(few.truncated);
  EXPECT_EQ(few.joints.size(), 7u);
}

// With c2 = 0 the joint formulas collapse to the single-entry ones, up to the
// rescaling t -> c1 t of the ray parameter.
TEST(JointProperties, SingleEntrySpecialisation) {
  Rng rng(41);
  for (int s = 0; s < 100; ++s) {
    const Index r = 2 + s % 4;
    const Eigen::VectorXd si = gaussian_vector(rng, r);
    const Eigen::VectorXd sj = gaussian_vector(rng, r);
    const Eigen::VectorXd sk = gaussian_vector(rng, r);
    const double c = std::uniform_real_distribution<double>(0.2, 3.0)(rng) * (s % 2 ? 1 : -1);
    const RayInterval ray = joint_interval_zi_nonzero(si, sj, sk, c, 0.0);
    const YieldInterval single = parallel_interval(si, sj, c);
    const double lo = std::min(c * ray.lower, c * ray.upper);
    const double hi = std::max(c * ray.lower, c * ray.upper);
    EXPECT_NEAR(lo, single.lower, 1e-10 * (1.0 + std::abs(single.lower)));
    EXPECT_NEAR(hi, single.upper, 1e-10 * (1.0 + std::abs(single.upper)));

    const RayInterval zray = joint_interval_zi_zero(si, sj, sk, c, 0.0);
    const YieldInterval zsingle = eigenpair_interval(si, sj, CaseTag::ZeroZero);
    const double zlo = std::min(c * zray.lower, c * zray.upper);
    const double zhi = std::max(c * zray.lower, c * zray.upper);
    EXPECT_NEAR(zlo, zsingle.lower, 1e-10 * (1.0 + std::abs(zsingle.lower)));
    EXPECT_NEAR(zhi, zsingle.upper, 1e-10 * (1.0 + std::abs(zsingle.upper)));
  }
}

// The closed-form ray interval matches the oracle on the reference instances.
TEST(JointProperties, RaysAgreeWithOracle) {
  for (const auto& inst : reference_instances()) {
    if (inst.d.rows() < 4) continue;
    const DistanceMatrix d(inst.d);
    const EdmDecomposition dec = decompose(d);
    const JointEnumeration joints = enumerate_joints(dec, analyze_all(dec));
    for (const JointReport& j : joints.joints) {
      if (j.status != JointStatus::JointlyYielding) continue;
      const OracleInterval o = feasible_interval(
          d, PerturbationDirection::joint(d.order(), j.i, j.j, j.k, j.coefficients->c1,
                                          j.coefficients->c2));
      EXPECT_NEAR(o.lower, j.ray->lower, 1e-6) << inst.name;
      EXPECT_NEAR(o.upper, j.ray->upper, 1e-6) << inst.name;
    }
  }
}
