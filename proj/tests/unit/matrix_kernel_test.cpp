#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "edmyield/matrix_kernel.hpp"
#include "error_matchers.hpp"
#include "generators.hpp"

using namespace edmyield;
using namespace edmyield::testing;

TEST(Tolerances, DefaultsValidate) { EXPECT_NO_THROW(Tolerances{}.validate()); }

TEST(Tolerances, RejectsNonPositiveAndNonFinite) {
  Tolerances t;
  t.rank_rel = 0.0;
  EXPECT_EDM_ERROR(t.validate(), ErrorCode::InvalidInput);
  t = {};
  t.oracle_abs = -1.0;
  EXPECT_EDM_ERROR(t.validate(), ErrorCode::InvalidInput);
  t = {};
  t.psd_rel = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EDM_ERROR(t.validate(), ErrorCode::InvalidInput);
}

TEST(SymMatrix, StoresSymmetricPart) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 4, 3;
  const SymMatrix s(m);
  EXPECT_EQ(s(0, 1), 3.0);
  EXPECT_EQ(s(1, 0), 3.0);
}

TEST(SymMatrix, RejectsNonSquare) {
  EXPECT_EDM_ERROR(SymMatrix(Eigen::MatrixXd::Zero(2, 3)), ErrorCode::InvalidInput);
}

TEST(SpectralDecompose, ReconstructsRandomMatrices) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + trial % 12;
    const Eigen::MatrixXd a = gaussian_matrix(rng, n, n);
    const SymMatrix m(a + a.transpose());
    const Spectrum s = spectral_decompose(m);
    for (Index i = 1; i < n; ++i) EXPECT_GE(s.eigenvalues(i - 1), s.eigenvalues(i));
    const Eigen::MatrixXd back =
        s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.transpose();
    EXPECT_LT((back - m.matrix()).norm(), 1e-12 * std::max(1.0, m.matrix().norm()));
    EXPECT_LT((s.eigenvectors.transpose() * s.eigenvectors - Eigen::MatrixXd::Identity(n, n))
                  .norm(),
              1e-12);
    EXPECT_LT((eigenvalues(m) - s.eigenvalues).norm(), 1e-12 * std::max(1.0, m.matrix().norm()));
  }
}

TEST(SpectralDecompose, RejectsNonFinite) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_EDM_ERROR(spectral_decompose(SymMatrix(m)), ErrorCode::InvalidInput);
}

TEST(NumericalRank, RelativeCutoff) {
  Eigen::VectorXd v(4);
  v << 10.0, 1.0, 1e-12, -1e-15;
  EXPECT_EQ(numerical_rank(v, Tolerances{}), 2);
  Eigen::VectorXd small(2);
  small << 1e-10, 0.0;
  EXPECT_EQ(numerical_rank(small, Tolerances{}), 0);  // floor of 1 in the scale
}

TEST(IsPsd, FloorAndMinimum) {
  Eigen::VectorXd d(3);
  d << 2.0, 1.0, -1e-12;
  const PsdResult ok = is_psd(SymMatrix::diagonal(d), Tolerances{});
  EXPECT_TRUE(ok.psd);
  EXPECT_DOUBLE_EQ(ok.min_eigenvalue, -1e-12);
  d(2) = -1e-3;
  EXPECT_FALSE(is_psd(SymMatrix::diagonal(d), Tolerances{}).psd);
}

TEST(CenteringBasis, OrthonormalAndCentered) {
  for (Index n = 2; n <= 50; ++n) {
    const Eigen::MatrixXd v = centering_basis(n);
    ASSERT_EQ(v.rows(), n);
    ASSERT_EQ(v.cols(), n - 1);
    EXPECT_LT((v.transpose() * v - Eigen::MatrixXd::Identity(n - 1, n - 1)).norm(), 1e-13) << n;
    EXPECT_LT((v.transpose() * Eigen::VectorXd::Ones(n)).norm(), 1e-13) << n;
    const Eigen::MatrixXd j =
        Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    EXPECT_LT((v * v.transpose() - j).norm(), 1e-13) << n;
  }
  EXPECT_EDM_ERROR(centering_basis(1), ErrorCode::InvalidInput);
}

TEST(NullspaceBasis, SpansKernel) {
  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const Index rows = 1 + trial % 5;
    const Index cols = rows + 1 + trial % 4;
    const Eigen::MatrixXd m = gaussian_matrix(rng, rows, cols);
    const Eigen::MatrixXd nb = nullspace_basis(m, Tolerances{});
    EXPECT_EQ(nb.cols(), cols - rows);
    EXPECT_LT((m * nb).norm(), 1e-12 * std::max(1.0, m.norm()));
    EXPECT_LT((nb.transpose() * nb - Eigen::MatrixXd::Identity(nb.cols(), nb.cols())).norm(),
              1e-12);
  }
}

TEST(NullspaceBasis, RankDeficientInput) {
  Eigen::MatrixXd m(3, 3);
  m << 1, 2, 3, 2, 4, 6, 1, 1, 1;
  EXPECT_EQ(nullspace_basis(m, Tolerances{}).cols(), 1);
}

TEST(Rank2Eigenpair, MatchesEigensolver) {
  Rng rng(13);
  int pairs = 0;
  while (pairs < 100) {
    const Index d = 2 + pairs % 7;
    const Eigen::VectorXd a = gaussian_vector(rng, d);
    const Eigen::VectorXd b = gaussian_vector(rng, d);
    if (std::abs(a.dot(b)) > 0.99 * a.norm() * b.norm()) continue;
    ++pairs;
    const Rank2Eigenpair p = rank2_eigenpair(a, b);
    const Eigen::VectorXd ev = eigenvalues(SymMatrix(a * b.transpose() + b * a.transpose()));
    EXPECT_NEAR(p.largest, ev(0), 1e-10 * std::abs(ev(0)));
    EXPECT_NEAR(p.smallest, ev(d - 1), 1e-10 * std::abs(ev(d - 1)));
    EXPECT_GT(p.largest, 0.0);
    EXPECT_LT(p.smallest, 0.0);
  }
}
