#pragma once

// Distance matrices and the decomposition D -> B -> X -> (r, P, Z, S).
//
// Every index taken by a public function in this library is 1-based.

#include <Eigen/Dense>

#include "edmyield/matrix_kernel.hpp"

namespace edmyield {

// Symmetric, hollow, nonnegative n x n matrix of squared distances, n >= 2.
class DistanceMatrix {
 public:
  // Validates the input. Off-diagonal asymmetry and diagonal entries up to
  // 1e-12 * max(1, max |d_ij|) are absorbed (symmetrized / zeroed); anything
  // larger is rejected with AsymmetricMatrix / NonzeroDiagonal.
  explicit DistanceMatrix(const Eigen::MatrixXd& d);

  // Squared distances between the rows of `points`.
  static DistanceMatrix from_points(const Eigen::MatrixXd& points);

  Index order() const { return d_.rows(); }
  const Eigen::MatrixXd& matrix() const { return d_; }
  double entry(Index k, Index l) const { return d_(k - 1, l - 1); }

  bool operator==(const DistanceMatrix& other) const { return d_ == other.d_; }

 private:
  Eigen::MatrixXd d_;
};

// B = -1/2 J M J for any square M (no EDM checks).
SymMatrix gram_matrix(const Eigen::MatrixXd& m);

struct EdmValidation {
  bool is_edm = false;
  double min_eigenvalue = 0.0;
  int embedding_dimension = 0;  // meaningful only when is_edm
};

EdmValidation validate_edm(const DistanceMatrix& d, const Tolerances& tol = {});

class EdmDecomposition {
 public:
  Index order() const { return d_.order(); }
  int embedding_dimension() const { return r_; }
  // n - r - 1; zero when the points are affinely independent.
  Index gale_dimension() const { return order() - r_ - 1; }

  const DistanceMatrix& distances() const { return d_; }
  const SymMatrix& gram() const { return b_; }
  const SymMatrix& projected_gram() const { return x_; }
  const Eigen::VectorXd& projected_gram_eigenvalues() const { return x_eigenvalues_; }
  const Eigen::MatrixXd& configuration() const { return p_; }
  const Eigen::MatrixXd& gale() const { return z_; }
  const Eigen::MatrixXd& dual_configuration() const { return s_; }
  const Tolerances& tolerances() const { return tol_; }

  // Copy with the Gale matrix replaced by Z * g (g nonsingular, square of order n-r-1).
  EdmDecomposition with_gale_basis(const Eigen::MatrixXd& g) const;

 private:
  friend EdmDecomposition decompose(const DistanceMatrix& d, const Tolerances& tol);

  explicit EdmDecomposition(DistanceMatrix d) : d_(std::move(d)) {}

  DistanceMatrix d_;
  SymMatrix b_;
  SymMatrix x_;
  Eigen::VectorXd x_eigenvalues_;
  int r_ = 0;
  Eigen::MatrixXd p_;
  Eigen::MatrixXd z_;
  Eigen::MatrixXd s_;
  Tolerances tol_;
};

// Throws NotEuclideanError when D fails the Schoenberg test.
EdmDecomposition decompose(const DistanceMatrix& d, const Tolerances& tol = {});

// Row i of Z. Throws NoGaleSpace when r = n - 1.
Eigen::VectorXd gale_transform(const EdmDecomposition& dec, Index i);

// Row i of S = P (P^T P)^{-1}. Throws DegenerateConfiguration when r = 0.
Eigen::VectorXd dual_row(const EdmDecomposition& dec, Index i);

// Norm below which a Gale row counts as zero: parallel_rel * max(1, largest row norm of Z).
double gale_zero_threshold(const EdmDecomposition& dec);

}  // namespace edmyield
