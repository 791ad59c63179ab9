#include "edmyield/edm_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "edmyield/error.hpp"

namespace edmyield {

namespace {

std::string position(Index i, Index j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void check_index(const EdmDecomposition& dec, Index i) {
  if (i < 1 || i > dec.order()) {
    throw Error(ErrorCode::InvalidIndex, "index " + std::to_string(i) + " outside 1.." +
                                             std::to_string(dec.order()));
  }
}

}  // namespace

DistanceMatrix::DistanceMatrix(const Eigen::MatrixXd& d) {
  if (d.rows() != d.cols()) {
    throw Error(ErrorCode::InvalidInput, "distance matrix must be square, got " +
                                             std::to_string(d.rows()) + "x" +
                                             std::to_string(d.cols()));
  }
  if (d.rows() < 2) {
    throw Error(ErrorCode::InvalidInput, "distance matrix needs order n >= 2");
  }
  if (!d.allFinite()) {
    throw Error(ErrorCode::NonFiniteEntry, "distance matrix has non-finite entries");
  }
  const Index n = d.rows();
  const double slack = 1e-12 * std::max(1.0, d.cwiseAbs().maxCoeff());
  for (Index i = 0; i < n; ++i) {
    if (std::abs(d(i, i)) > slack) {
      throw Error(ErrorCode::NonzeroDiagonal, "nonzero diagonal entry at " + position(i, i));
    }
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(d(i, j) - d(j, i)) > slack) {
        throw Error(ErrorCode::AsymmetricMatrix,
                    "matrix is not symmetric at " + position(i, j));
      }
      if (d(i, j) < 0.0 || d(j, i) < 0.0) {
        throw Error(ErrorCode::NegativeEntry, "negative entry at " + position(i, j));
      }
    }
  }
  d_ = 0.5 * (d + d.transpose());
  d_.diagonal().setZero();
}

DistanceMatrix DistanceMatrix::from_points(const Eigen::MatrixXd& points) {
  const Index n = points.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = (points.row(i) - points.row(j)).squaredNorm();
    }
  }
  return DistanceMatrix(d);
}

SymMatrix gram_matrix(const Eigen::MatrixXd& m) {
  // Double centering: -1/2 (m_ij - rowmean_i - colmean_j + mean).
  const Eigen::VectorXd row_mean = m.rowwise().mean();
  const Eigen::RowVectorXd col_mean = m.colwise().mean();
  const double mean = m.mean();
  Eigen::MatrixXd b = m;
  b.colwise() -= row_mean;
  b.rowwise() -= col_mean;
  b.array() += mean;
  return SymMatrix(-0.5 * b);
}

EdmValidation validate_edm(const DistanceMatrix& d, const Tolerances& tol) {
  const SymMatrix b = gram_matrix(d.matrix());
  const Eigen::VectorXd values = eigenvalues(b);
  const double lmin = values(values.size() - 1);
  const double norm2 = std::max(std::abs(values(0)), std::abs(lmin));
  EdmValidation out;
  out.min_eigenvalue = lmin;
  out.is_edm = lmin >= -tol.psd_rel * std::max(1.0, norm2);
  out.embedding_dimension = numerical_rank(values, tol);
  return out;
}

EdmDecomposition decompose(const DistanceMatrix& d, const Tolerances& tol) {
  tol.validate();
  const EdmValidation check = validate_edm(d, tol);
  if (!check.is_edm) {
    throw NotEuclideanError("matrix is not a Euclidean distance matrix: min eigenvalue of "
                            "-1/2 J D J is " + std::to_string(check.min_eigenvalue),
                            check.min_eigenvalue);
  }

  const Index n = d.order();
  EdmDecomposition dec(d);
  dec.tol_ = tol;
  dec.b_ = gram_matrix(d.matrix());

  const Eigen::MatrixXd v = centering_basis(n);
  dec.x_ = SymMatrix(v.transpose() * dec.b_.matrix() * v);
  const Spectrum spec = spectral_decompose(dec.x_);
  dec.x_eigenvalues_ = spec.eigenvalues;
  const int r = numerical_rank(spec, tol);
  for (int i = 0; i < r; ++i) {
    if (spec.eigenvalues(i) <= 0.0) {
      throw NotEuclideanError("projected Gram matrix has a significant negative eigenvalue",
                              spec.eigenvalues(i));
    }
  }
  dec.r_ = r;

  // P = V W Lambda^{1/2}, so P^T P = Lambda and S = P Lambda^{-1}.
  const Eigen::VectorXd lambda = spec.eigenvalues.head(r);
  const Eigen::MatrixXd vw = v * spec.eigenvectors.leftCols(r);
  dec.p_ = vw * lambda.cwiseSqrt().asDiagonal();
  dec.s_ = dec.p_ * lambda.cwiseInverse().asDiagonal();

  // V U spans null([P^T; e^T]) with orthonormal columns (U = null eigenvectors of X).
  dec.z_ = v * spec.eigenvectors.rightCols(n - 1 - r);
  return dec;
}

EdmDecomposition EdmDecomposition::with_gale_basis(const Eigen::MatrixXd& g) const {
  const Index m = gale_dimension();
  if (g.rows() != m || g.cols() != m) {
    throw Error(ErrorCode::InvalidInput, "Gale basis change must be square of order n-r-1");
  }
  if (m > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv(m - 1) <= tol_.rank_rel * std::max(1.0, sv(0))) {
      throw Error(ErrorCode::InvalidInput, "Gale basis change must be nonsingular");
    }
  }
  EdmDecomposition out = *this;
  out.z_ = z_ * g;
  return out;
}

Eigen::VectorXd gale_transform(const EdmDecomposition& dec, Index i) {
  check_index(dec, i);
  if (dec.gale_dimension() == 0) {
    throw Error(ErrorCode::NoGaleSpace,
                "embedding dimension is n-1: the points are affinely independent and have no "
                "Gale transform");
  }
  return dec.gale().row(i - 1).transpose();
}

Eigen::VectorXd dual_row(const EdmDecomposition& dec, Index i) {
  check_index(dec, i);
  if (dec.embedding_dimension() == 0) {
    throw Error(ErrorCode::DegenerateConfiguration,
                "embedding dimension 0: all points coincide");
  }
  return dec.dual_configuration().row(i - 1).transpose();
}

double gale_zero_threshold(const EdmDecomposition& dec) {
  double largest = 0.0;
  if (dec.gale_dimension() > 0) {
    largest = dec.gale().rowwise().norm().maxCoeff();
  }
  return dec.tolerances().parallel_rel * std::max(1.0, largest);
}

}  // namespace edmyield
