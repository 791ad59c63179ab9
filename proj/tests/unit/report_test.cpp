#include <gtest/gtest.h>

#include "edmyield/error.hpp"
#include "report.hpp"
#include "generators.hpp"
#include "reference_instances.hpp"

using namespace edmyield;
using namespace edmyield::cli;
using namespace edmyield::testing;

TEST(Report, RoundTripOnRandomInstances) {
  ReportOptions opts;
  opts.joints = true;
  opts.joint_limit = 50;
  for (int i = 0; i < 40; ++i) {
    const GeneratedInstance g = stream_instance(71, i, 2, 8);
    opts.oracle_check = i % 4 == 0;
    const ReportDocument doc = build_report(decompose(g.d), opts);
    EXPECT_EQ(parse_report(emit_json(doc)), doc);
    EXPECT_EQ(emit_json(parse_report(emit_json(doc))), emit_json(doc));
  }
}

TEST(Report, MatrixHash) {
  const std::string h = matrix_hash(cross5());
  EXPECT_EQ(h.size(), 16u);
  EXPECT_EQ(h, matrix_hash(cross5()));
  Eigen::MatrixXd other = cross5();
  other(0, 1) = other(1, 0) = 1.0000000001;
  EXPECT_NE(h, matrix_hash(other));
}

TEST(Report, ParseErrors) {
  EXPECT_THROW(parse_report("{"), Error);
  EXPECT_THROW(parse_report("{\"schema_version\": \"1\"}"), Error);
}
