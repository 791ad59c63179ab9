#include "edmyield/matrix_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edmyield/error.hpp"

namespace edmyield {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::InvalidInput, std::string(what) + ": matrix has non-finite entries");
  }
}

void require_square(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::InvalidInput,
                "symmetric matrix must be square, got " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()));
  }
}

}  // namespace

void Tolerances::validate() const {
  const auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw Error(ErrorCode::InvalidInput, std::string("tolerance ") + name + " must be positive");
    }
  };
  check(rank_rel, "rank_rel");
  check(psd_rel, "psd_rel");
  check(parallel_rel, "parallel_rel");
  check(oracle_abs, "oracle_abs");
  check(oracle_psd_rel, "oracle_psd_rel");
}

SymMatrix::SymMatrix(const Eigen::MatrixXd& m) {
  require_square(m);
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::identity(Index n) {
  return SymMatrix(Eigen::MatrixXd::Identity(n, n));
}

SymMatrix SymMatrix::diagonal(const Eigen::VectorXd& d) {
  return SymMatrix(Eigen::MatrixXd(d.asDiagonal()));
}

Spectrum spectral_decompose(const SymMatrix& m) {
  require_finite(m.matrix(), "spectral_decompose");
  const Index n = m.order();
  Spectrum out;
  if (n == 0) {
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::InternalInconsistency, "symmetric eigensolver did not converge");
  }
  // Eigen sorts ascending.
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

Eigen::VectorXd eigenvalues(const SymMatrix& m) {
  require_finite(m.matrix(), "eigenvalues");
  if (m.order() == 0) {
    return {};
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::InternalInconsistency, "symmetric eigensolver did not converge");
  }
  return solver.eigenvalues().reverse();
}

int numerical_rank(const Eigen::VectorXd& values, const Tolerances& tol) {
  if (values.size() == 0) {
    return 0;
  }
  const double cutoff = tol.rank_rel * std::max(1.0, values.cwiseAbs().maxCoeff());
  return static_cast<int>((values.array().abs() > cutoff).count());
}

int numerical_rank(const Spectrum& s, const Tolerances& tol) {
  return numerical_rank(s.eigenvalues, tol);
}

PsdResult is_psd(const SymMatrix& m, double floor_rel) {
  const Eigen::VectorXd values = eigenvalues(m);
  if (values.size() == 0) {
    return {true, 0.0};
  }
  const double lmin = values(values.size() - 1);
  const double norm2 = std::max(std::abs(values(0)), std::abs(lmin));
  return {lmin >= -floor_rel * std::max(1.0, norm2), lmin};
}

Eigen::MatrixXd centering_basis(Index n) {
  if (n < 2) {
    throw Error(ErrorCode::InvalidInput, "centering_basis needs n >= 2");
  }
  // H = I - 2 v v^T / (v^T v) with v = e + sqrt(n) e_1 sends e to -sqrt(n) e_1,
  // so its remaining columns are orthonormal and orthogonal to e.
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
  v(0) += std::sqrt(static_cast<double>(n));
  const double scale = 2.0 / v.squaredNorm();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) - scale * v * v.transpose();
  return h.rightCols(n - 1);
}

Eigen::MatrixXd nullspace_basis(const Eigen::MatrixXd& m, const Tolerances& tol) {
  require_finite(m, "nullspace_basis");
  const Index cols = m.cols();
  if (m.rows() == 0 || cols == 0) {
    return Eigen::MatrixXd::Identity(cols, cols);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = tol.rank_rel * std::max(1.0, sv.size() ? sv(0) : 0.0);
  const Index rank = (sv.array() > cutoff).count();
  return svd.matrixV().rightCols(cols - rank);
}

Rank2Eigenpair rank2_eigenpair(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double inner = a.dot(b);
  const double norms = a.norm() * b.norm();
  return {inner + norms, inner - norms};
}

}  // namespace edmyield
