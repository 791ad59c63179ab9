#pragma once

// Dense symmetric linear-algebra primitives shared by every analysis module.
//
// All rank, definiteness and parallelism decisions go through a single
// Tolerances record that callers thread through explicitly.

#include <Eigen/Dense>

namespace edmyield {

using Index = Eigen::Index;

struct Tolerances {
  double rank_rel = 1e-9;       // eigen/singular value cutoff, relative to max(1, largest magnitude)
  double psd_rel = 1e-9;        // "PSD within tolerance" floor, relative to max(1, ||M||_2)
  double parallel_rel = 1e-9;   // relative residual for parallelism / zero-vector tests
  double oracle_abs = 1e-8;     // bisection width target for the feasibility oracle
  double oracle_psd_rel = 1e-13;  // PSD floor used by the oracle's membership test

  // Throws InvalidInput unless every field is finite and strictly positive.
  void validate() const;

  bool operator==(const Tolerances&) const = default;
};

// Symmetric matrix; the constructor stores (M + M^T)/2 so entries(i,j) == entries(j,i) exactly.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Eigen::MatrixXd& m);

  static SymMatrix identity(Index n);
  static SymMatrix diagonal(const Eigen::VectorXd& d);

  Index order() const { return m_.rows(); }
  const Eigen::MatrixXd& matrix() const { return m_; }
  double operator()(Index i, Index j) const { return m_(i, j); }

 private:
  Eigen::MatrixXd m_;
};

// Eigenvalues sorted descending; column i of `eigenvectors` pairs with eigenvalues(i).
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

Spectrum spectral_decompose(const SymMatrix& m);

// Eigenvalues only, descending. Cheaper than spectral_decompose.
Eigen::VectorXd eigenvalues(const SymMatrix& m);

// Count of |lambda| > rank_rel * max(1, max |lambda|).
int numerical_rank(const Eigen::VectorXd& values, const Tolerances& tol);
int numerical_rank(const Spectrum& s, const Tolerances& tol);

struct PsdResult {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

// psd iff lambda_min >= -floor_rel * max(1, ||M||_2).
PsdResult is_psd(const SymMatrix& m, double floor_rel);
inline PsdResult is_psd(const SymMatrix& m, const Tolerances& tol) {
  return is_psd(m, tol.psd_rel);
}

// n x (n-1) matrix V with V^T e = 0 and V^T V = I, taken from columns 2..n of
// the Householder reflector that maps e onto a multiple of the first axis.
Eigen::MatrixXd centering_basis(Index n);

// Orthonormal basis of null(m) from a full SVD; singular values at or below
// rank_rel * max(1, sigma_max) count as zero.
Eigen::MatrixXd nullspace_basis(const Eigen::MatrixXd& m, const Tolerances& tol);

// The two nonzero eigenvalues of a b^T + b a^T for nonzero, nonparallel a, b.
struct Rank2Eigenpair {
  double largest = 0.0;   // a^T b + ||a|| ||b||
  double smallest = 0.0;  // a^T b - ||a|| ||b||
};

Rank2Eigenpair rank2_eigenpair(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace edmyield
