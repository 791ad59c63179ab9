#pragma once

#include <algorithm>
#include <vector>

#include <Eigen/Dense>

#include "edmyield/edm_core.hpp"

namespace edmyield::detail {

inline double smallest_singular_value(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

inline double largest_singular_value(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

// Square submatrix of Z on the given rows is (numerically) singular.
struct GaleSubsetTest {
  const Eigen::MatrixXd& z;
  double cutoff;

  GaleSubsetTest(const EdmDecomposition& dec)
      : z(dec.gale()), cutoff(dec.tolerances().rank_rel * largest_singular_value(dec.gale())) {}

  bool violates(const std::vector<int>& rows) const {
    const auto m = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd sub(m, z.cols());
    for (Eigen::Index a = 0; a < m; ++a) sub.row(a) = z.row(rows[static_cast<std::size_t>(a)]);
    return smallest_singular_value(sub) <= cutoff;
  }
};

// The given r+1 points are affinely dependent.
struct AffineSubsetTest {
  const Eigen::MatrixXd& p;
  double cutoff;

  AffineSubsetTest(const EdmDecomposition& dec)
      : p(dec.configuration()),
        cutoff(dec.tolerances().rank_rel *
               std::max(1.0, largest_singular_value(dec.configuration()))) {}

  bool violates(const std::vector<int>& pts) const {
    const Eigen::Index r = p.cols();
    if (r == 0) return false;
    Eigen::MatrixXd diff(r, r);
    for (Eigen::Index a = 0; a < r; ++a) {
      diff.row(a) = p.row(pts[static_cast<std::size_t>(a + 1)]) - p.row(pts[0]);
    }
    return smallest_singular_value(diff) <= cutoff;
  }
};

}  // namespace edmyield::detail
