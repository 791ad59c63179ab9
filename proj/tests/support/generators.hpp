#pragma once

// Seeded generators for property tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "edmyield/oracle.hpp"

namespace edmyield::testing {

using Rng = std::mt19937_64;

inline Eigen::MatrixXd gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

inline Eigen::VectorXd gaussian_vector(Rng& rng, Eigen::Index size) {
  return gaussian_matrix(rng, size, 1).col(0);
}

// Square matrix with condition number below `max_cond`.
inline Eigen::MatrixXd well_conditioned(Rng& rng, Eigen::Index m, double max_cond = 50.0) {
  for (;;) {
    Eigen::MatrixXd g = gaussian_matrix(rng, m, m);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
    const auto& sv = svd.singularValues();
    if (sv(m - 1) > 0.0 && sv(0) / sv(m - 1) < max_cond) return g;
  }
}

// perm[i] = image of point i (0-based).
inline std::vector<Eigen::Index> random_permutation(Rng& rng, Eigen::Index n) {
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

// D'(perm[i], perm[j]) = D(i, j).
inline Eigen::MatrixXd permute(const Eigen::MatrixXd& d, const std::vector<Eigen::Index>& perm) {
  const Eigen::Index n = d.rows();
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) = d(i, j);
    }
  }
  return out;
}

// Valid embedding dimensions for a generator mode at order n.
inline std::vector<int> valid_dimensions(GeneratorMode mode, Eigen::Index n) {
  std::vector<int> out;
  for (int r = 1; r <= n - 1; ++r) {
    bool ok = true;
    switch (mode) {
      case GeneratorMode::Generic:
      case GeneratorMode::GeneralPosition:
        break;
      case GeneratorMode::CoincidentPair:
      case GeneratorMode::ZeroGaleRows:
        ok = r <= n - 2;
        break;
      case GeneratorMode::CollinearTriple:
        ok = r >= 2 && r <= n - 2;
        break;
      case GeneratorMode::ParallelGale:
        ok = r <= n - 2 && n >= 3;
        break;
    }
    if (ok) out.push_back(r);
  }
  return out;
}

// Instance `index` of a reproducible stream cycling through every generator
// mode, with n in [n_min, n_max] and r uniform over the valid dimensions.
inline GeneratedInstance stream_instance(std::uint64_t seed, int index, Eigen::Index n_min,
                                         Eigen::Index n_max) {
  const auto& modes = all_generator_modes();
  const GeneratorMode mode = modes[static_cast<std::size_t>(index) % modes.size()];
  Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(index));
  for (;;) {
    const Eigen::Index n = std::uniform_int_distribution<Eigen::Index>(n_min, n_max)(rng);
    const std::vector<int> dims = valid_dimensions(mode, n);
    if (dims.empty()) continue;
    const int r = dims[std::uniform_int_distribution<std::size_t>(0, dims.size() - 1)(rng)];
    return random_edm(n, r, rng(), mode);
  }
}

}  // namespace edmyield::testing
