#include <cmath>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "edmyield/geometry_predicates.hpp"
#include "edmyield/oracle.hpp"
#include "edmyield/yield_analysis.hpp"
#include "error_matchers.hpp"
#include "generators.hpp"
#include "reference_instances.hpp"

using namespace edmyield;
using namespace edmyield::testing;

TEST(PerturbationDirection, Construction) {
  const PerturbationDirection u = PerturbationDirection::unit(4, 2, 3);
  EXPECT_EQ(u.matrix()(1, 2), 1.0);
  EXPECT_EQ(u.matrix()(2, 1), 1.0);
  EXPECT_EQ(u.matrix().matrix().sum(), 2.0);
  const PerturbationDirection j = PerturbationDirection::joint(4, 1, 2, 4, 2.0, -1.0);
  EXPECT_EQ(j.matrix()(0, 1), 2.0);
  EXPECT_EQ(j.matrix()(3, 0), -1.0);
  EXPECT_EDM_ERROR(PerturbationDirection::unit(4, 2, 2), ErrorCode::InvalidInput);
  EXPECT_EDM_ERROR(PerturbationDirection::unit(4, 0, 2), ErrorCode::InvalidIndex);
}

TEST(IsEdmAt, Membership) {
  const DistanceMatrix cross(cross5());
  const PerturbationDirection e13 = PerturbationDirection::unit(5, 1, 3);
  EXPECT_TRUE(is_edm_at(cross, e13, 0.0));
  EXPECT_TRUE(is_edm_at(cross, e13, -4.0));
  EXPECT_FALSE(is_edm_at(cross, e13, -4.01));
  EXPECT_FALSE(is_edm_at(cross, e13, 0.01));
  const DistanceMatrix kite(kite4());
  const PerturbationDirection ray = PerturbationDirection::joint(4, 1, 2, 3, 2.0, 1.0);
  EXPECT_TRUE(is_edm_at(kite, ray, 2.0 * (std::sqrt(17.0) + 1.0)));
  EXPECT_FALSE(is_edm_at(kite, ray, 2.0 * (std::sqrt(17.0) + 1.0) + 1e-3));
}

TEST(FeasibleInterval, DoubledVertex) {
  const OracleInterval o =
      feasible_interval(DistanceMatrix(pair4()), PerturbationDirection::unit(4, 3, 4));
  EXPECT_NEAR(o.lower, -2.0, 1e-6);
  EXPECT_NEAR(o.upper, 2.0, 1e-6);
}

TEST(FeasibleInterval, Triangle) {
  const DistanceMatrix d(triangle3());
  const OracleInterval o = feasible_interval(d, PerturbationDirection::unit(3, 1, 2));
  EXPECT_NEAR(o.lower, -4.0, 1e-7);
  EXPECT_NEAR(o.upper, 36.0, 1e-7);
  EXPECT_LE(o.achieved_width_tol, 1e-8);
  EXPECT_FALSE(o.bound_violation);
}

TEST(FeasibleInterval, OrderTwoIsUnboundedAbove) {
  Eigen::MatrixXd m(2, 2);
  m << 0, 5, 5, 0;
  const OracleInterval o = feasible_interval(DistanceMatrix(m), PerturbationDirection::unit(2, 1, 2));
  EXPECT_NEAR(o.lower, -5.0, 1e-7);
  EXPECT_TRUE(o.upper_unbounded);
  EXPECT_FALSE(o.lower_unbounded);
  EXPECT_FALSE(o.bound_violation);
}

TEST(FeasibleInterval, UnyieldingEntryCollapses) {
  const DistanceMatrix d(cross5());
  const OracleInterval o = feasible_interval(d, PerturbationDirection::unit(5, 1, 2));
  EXPECT_NEAR(o.lower, 0.0, 1e-6);
  EXPECT_NEAR(o.upper, 0.0, 1e-6);
}

// The feasible set along a line is an interval: on a 101-point grid over
// [lower - 1, upper + 1] membership never goes feasible, infeasible, feasible.
TEST(FeasibleInterval, GridHasNoGaps) {
  Rng rng(81);
  for (int i = 0; i < 50; ++i) {
    const GeneratedInstance g = stream_instance(81, i, 3, 8);
    const Index k = std::uniform_int_distribution<Index>(1, g.n - 1)(rng);
    const Index l = std::uniform_int_distribution<Index>(k + 1, g.n)(rng);
    Index m = 1;
    while (m == k || m == l) ++m;
    const PerturbationDirection dir =
        i % 2 == 0 ? PerturbationDirection::unit(g.n, k, l)
                   : PerturbationDirection(
                         g.n, {{k, l, 1.0}, {k, m, std::normal_distribution<double>()(rng)}});
    const OracleInterval o = feasible_interval(g.d, dir);
    ASSERT_FALSE(o.bound_violation);
    const double a = o.lower - 1.0;
    const double b = o.upper + 1.0;
    int transitions = 0;
    bool prev = is_edm_at(g.d, dir, a);
    for (int s = 1; s <= 100; ++s) {
      const bool cur = is_edm_at(g.d, dir, a + (b - a) * s / 100.0);
      transitions += cur != prev ? 1 : 0;
      prev = cur;
    }
    EXPECT_LE(transitions, 2) << to_string(g.mode) << " #" << i;
    EXPECT_TRUE(is_edm_at(g.d, dir, 0.5 * (o.lower + o.upper)));
  }
}

TEST(OracleSweep, DirectionOrder) {
  const auto dirs = all_unit_directions(5);
  ASSERT_EQ(dirs.size(), 10u);
  EXPECT_EQ(dirs[0].terms()[0].row, 1);
  EXPECT_EQ(dirs[0].terms()[0].col, 2);
  EXPECT_EQ(dirs[9].terms()[0].row, 4);
  EXPECT_EQ(dirs[9].terms()[0].col, 5);
}

TEST(GeneratorModes, NamesRoundTrip) {
  for (GeneratorMode m : all_generator_modes()) {
    EXPECT_EQ(parse_generator_mode(to_string(m)), m);
  }
  EXPECT_EDM_ERROR(parse_generator_mode("sideways"), ErrorCode::InvalidInput);
}

TEST(RandomEdm, InfeasibleRequests) {
  EXPECT_EDM_ERROR(random_edm(1, 1, 0, GeneratorMode::Generic), ErrorCode::InvalidInput);
  EXPECT_EDM_ERROR(random_edm(4, 4, 0, GeneratorMode::Generic), ErrorCode::InvalidInput);
  EXPECT_EDM_ERROR(random_edm(4, 0, 0, GeneratorMode::Generic), ErrorCode::InvalidInput);
  EXPECT_EDM_ERROR(random_edm(4, 3, 0, GeneratorMode::CoincidentPair), ErrorCode::InvalidInput);
  EXPECT_EDM_ERROR(random_edm(5, 1, 0, GeneratorMode::CollinearTriple), ErrorCode::InvalidInput);
  EXPECT_EDM_ERROR(random_edm(4, 3, 0, GeneratorMode::ParallelGale), ErrorCode::InvalidInput);
  EXPECT_EDM_ERROR(random_edm(4, 3, 0, GeneratorMode::ZeroGaleRows), ErrorCode::InvalidInput);
}

TEST(RandomEdm, Deterministic) {
  for (GeneratorMode m : all_generator_modes()) {
    const GeneratedInstance a = random_edm(7, 3, 99, m);
    const GeneratedInstance b = random_edm(7, 3, 99, m);
    EXPECT_EQ(a.d, b.d) << to_string(m);
    EXPECT_EQ(a.marked, b.marked);
    const GeneratedInstance c = random_edm(7, 3, 100, m);
    EXPECT_FALSE(a.d == c.d) << to_string(m);
  }
}

TEST(RandomEdm, ParallelPairYields) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const GeneratedInstance g = random_edm(5, 2, s, GeneratorMode::ParallelGale);
    EXPECT_GE(analyze_all(decompose(g.d)).yielding_count(), 1u);
  }
}

TEST(RandomEdm, ZeroRowsMatchOracle) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const GeneratedInstance g = random_edm(6, 2, s, GeneratorMode::ZeroGaleRows);
    const EntryReport e = analyze_entry(decompose(g.d), g.marked[0], g.marked[1]);
    EXPECT_EQ(e.interval.tag, CaseTag::ZeroZero);
    const OracleInterval o =
        feasible_interval(g.d, PerturbationDirection::unit(6, g.marked[0], g.marked[1]));
    EXPECT_NEAR(o.lower, e.interval.lower, 1e-6);
    EXPECT_NEAR(o.upper, e.interval.upper, 1e-6);
  }
}

TEST(RandomEdm, ModeContracts) {
  for (int s = 0; s < 30; ++s) {
    const Index n = 5 + s % 4;
    const int r = 2 + s % 2;
    for (GeneratorMode m : all_generator_modes()) {
      SCOPED_TRACE(std::string(to_string(m)) + " seed " + std::to_string(s));
      const GeneratedInstance g = random_edm(n, r, static_cast<std::uint64_t>(s), m);
      const EdmDecomposition dec = decompose(g.d);
      EXPECT_EQ(dec.embedding_dimension(), r);
      EXPECT_EQ(g.n, n);
      const double zero = gale_zero_threshold(dec);
      switch (m) {
        case GeneratorMode::GeneralPosition:
          EXPECT_TRUE(general_position_affine(dec).in_general_position);
          break;
        case GeneratorMode::CoincidentPair:
          ASSERT_EQ(g.marked.size(), 2u);
          EXPECT_EQ(g.d.entry(g.marked[0], g.marked[1]), 0.0);
          break;
        case GeneratorMode::CollinearTriple:
          ASSERT_EQ(g.marked.size(), 3u);
          EXPECT_FALSE(general_position_affine(dec).in_general_position);
          break;
        case GeneratorMode::ParallelGale: {
          ASSERT_EQ(g.marked.size(), 2u);
          const ParallelResult p = parallel_test(gale_transform(dec, g.marked[0]),
                                                 gale_transform(dec, g.marked[1]), dec.tolerances(),
                                                 zero);
          EXPECT_EQ(p.kind, ParallelKind::Parallel);
          break;
        }
        case GeneratorMode::ZeroGaleRows:
          ASSERT_EQ(g.marked.size(), 2u);
          for (Index i : g.marked) EXPECT_LE(gale_transform(dec, i).norm(), zero);
          break;
        case GeneratorMode::Generic:
          break;
      }
    }
  }
}
