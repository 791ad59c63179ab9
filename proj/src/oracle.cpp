#include "edmyield/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "edmyield/error.hpp"
#include "edmyield/geometry_predicates.hpp"
#include "parallel_util.hpp"

namespace edmyield {

PerturbationDirection::PerturbationDirection(Index n, std::vector<Term> terms)
    : terms_(std::move(terms)) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const Term& t : terms_) {
    if (t.row < 1 || t.row > n || t.col < 1 || t.col > n) {
      throw Error(ErrorCode::InvalidIndex, "perturbation position outside the matrix");
    }
    if (t.row == t.col) {
      throw Error(ErrorCode::InvalidInput, "perturbation directions must be hollow");
    }
    m(t.row - 1, t.col - 1) += t.weight;
    m(t.col - 1, t.row - 1) += t.weight;
  }
  delta_ = SymMatrix(m);
}

PerturbationDirection PerturbationDirection::unit(Index n, Index k, Index l) {
  return PerturbationDirection(n, {{k, l, 1.0}});
}

PerturbationDirection PerturbationDirection::joint(Index n, Index i, Index j, Index k, double c1,
                                                   double c2) {
  return PerturbationDirection(n, {{i, j, c1}, {i, k, c2}});
}

GramSpectrumEnds gram_spectrum_at(const DistanceMatrix& d, const PerturbationDirection& delta,
                                  double t) {
  const Eigen::VectorXd values =
      eigenvalues(gram_matrix(d.matrix() + t * delta.matrix().matrix()));
  const double lmin = values(values.size() - 1);
  return {lmin, std::max(std::abs(values(0)), std::abs(lmin))};
}

bool is_edm_at(const DistanceMatrix& d, const PerturbationDirection& delta, double t,
               const Tolerances& tol) {
  const GramSpectrumEnds ends = gram_spectrum_at(d, delta, t);
  return ends.min_eigenvalue >= -tol.oracle_psd_rel * std::max(1.0, ends.norm);
}

namespace {

constexpr double kExpansionCap = 1152921504606846976.0;  // 2^60

struct SideResult {
  double endpoint = 0.0;
  bool unbounded = false;
  double width = 0.0;
};

template <class Feasible>
SideResult search_side(const Feasible& feasible, double sign, double width_target) {
  double inside = 0.0;
  double step = 1.0;
  while (feasible(sign * step)) {
    inside = step;
    if (step >= kExpansionCap) {
      return {sign * inside, true, 0.0};
    }
    step *= 2.0;
  }
  double outside = step;
  while (outside - inside > width_target) {
    const double mid = 0.5 * (inside + outside);
    if (mid <= inside || mid >= outside) break;  // width below double resolution
    if (feasible(sign * mid)) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return {sign * inside, false, outside - inside};
}

}  // namespace

OracleInterval feasible_interval(const DistanceMatrix& d, const PerturbationDirection& delta,
                                 const Tolerances& tol) {
  const auto feasible = [&](double t) { return is_edm_at(d, delta, t, tol); };
  const SideResult up = search_side(feasible, 1.0, tol.oracle_abs);
  const SideResult down = search_side(feasible, -1.0, tol.oracle_abs);

  OracleInterval out;
  out.lower = down.endpoint;
  out.upper = up.endpoint;
  out.lower_unbounded = down.unbounded;
  out.upper_unbounded = up.unbounded;
  out.achieved_width_tol = std::max(up.width, down.width);
  out.bound_violation = d.order() >= 3 && (up.unbounded || down.unbounded);
  return out;
}

std::vector<OracleInterval> oracle_sweep(const DistanceMatrix& d,
                                         const std::vector<PerturbationDirection>& directions,
                                         const Tolerances& tol) {
  std::vector<OracleInterval> out(directions.size());
  detail::ExceptionSlot failure;
  const auto count = static_cast<std::ptrdiff_t>(directions.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    failure.run([&] {
      out[static_cast<std::size_t>(i)] =
          feasible_interval(d, directions[static_cast<std::size_t>(i)], tol);
    });
  }
  failure.rethrow();
  return out;
}

std::vector<PerturbationDirection> all_unit_directions(Index n) {
  std::vector<PerturbationDirection> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index k = 1; k < n; ++k) {
    for (Index l = k + 1; l <= n; ++l) {
      out.push_back(PerturbationDirection::unit(n, k, l));
    }
  }
  return out;
}

std::string_view to_string(GeneratorMode m) {
  switch (m) {
    case GeneratorMode::Generic: return "generic";
    case GeneratorMode::GeneralPosition: return "general-position";
    case GeneratorMode::CoincidentPair: return "coincident-pair";
    case GeneratorMode::CollinearTriple: return "collinear-triple";
    case GeneratorMode::ParallelGale: return "parallel-gale";
    case GeneratorMode::ZeroGaleRows: return "zero-gale-rows";
  }
  return "unknown";
}

const std::vector<GeneratorMode>& all_generator_modes() {
  static const std::vector<GeneratorMode> modes = {
      GeneratorMode::Generic,         GeneratorMode::GeneralPosition,
      GeneratorMode::CoincidentPair,  GeneratorMode::CollinearTriple,
      GeneratorMode::ParallelGale,    GeneratorMode::ZeroGaleRows};
  return modes;
}

GeneratorMode parse_generator_mode(std::string_view name) {
  for (GeneratorMode m : all_generator_modes()) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorCode::InvalidInput, "unknown generator mode '" + std::string(name) + "'");
}

namespace {

using Rng = std::mt19937_64;

Eigen::MatrixXd gaussian(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

// k distinct indices from 0..n-1, in draw order.
std::vector<Index> distinct_indices(Rng& rng, Index n, int k) {
  std::vector<Index> out;
  std::uniform_int_distribution<Index> pick(0, n - 1);
  while (static_cast<int>(out.size()) < k) {
    const Index v = pick(rng);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

// Points whose Gale matrix spans the columns of y (y^T e must be 0): an
// orthonormal basis of the complement of span(y, e), mixed by a random
// well-conditioned r x r matrix.
Eigen::MatrixXd points_from_gale(Rng& rng, const Eigen::MatrixXd& y, int r) {
  const Index n = y.rows();
  Eigen::MatrixXd constraints(y.cols() + 1, n);
  constraints.topRows(y.cols()) = y.transpose();
  constraints.bottomRows(1).setOnes();
  const Eigen::MatrixXd c = nullspace_basis(constraints, Tolerances{});
  if (c.cols() != r) {
    return {};
  }
  for (;;) {
    const Eigen::MatrixXd mix = gaussian(rng, r, r) * std::sqrt(static_cast<double>(n));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(mix);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv(r - 1) > 0.0 && sv(0) / sv(r - 1) < 100.0) {
      return c * mix;
    }
  }
}

std::vector<Index> one_based_sorted(std::vector<Index> v) {
  for (Index& x : v) ++x;
  std::sort(v.begin(), v.end());
  return v;
}

void check_shape(Index n, int r, GeneratorMode mode) {
  const auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::InvalidInput, "random_edm: mode " + std::string(to_string(mode)) +
                                             " with n=" + std::to_string(n) +
                                             ", r=" + std::to_string(r) + ": " + why);
  };
  if (n < 2) fail("n must be at least 2");
  if (r < 1 || r > n - 1) fail("need 1 <= r <= n-1");
  switch (mode) {
    case GeneratorMode::Generic:
    case GeneratorMode::GeneralPosition:
      break;
    case GeneratorMode::CoincidentPair:
    case GeneratorMode::ZeroGaleRows:
      if (r > n - 2) fail("need r <= n-2");
      break;
    case GeneratorMode::CollinearTriple:
      if (r < 2 || r > n - 2) fail("need 2 <= r <= n-2");
      break;
    case GeneratorMode::ParallelGale:
      if (r > n - 2 || n < 3) fail("need r <= n-2 and n >= 3");
      break;
  }
}

struct Draw {
  Eigen::MatrixXd points;
  std::vector<Index> marked;
};

Draw draw_points(Rng& rng, Index n, int r, GeneratorMode mode) {
  Draw out;
  switch (mode) {
    case GeneratorMode::Generic:
    case GeneratorMode::GeneralPosition:
      out.points = gaussian(rng, n, r);
      break;
    case GeneratorMode::CoincidentPair: {
      out.points = gaussian(rng, n, r);
      const auto idx = distinct_indices(rng, n, 2);
      out.points.row(idx[1]) = out.points.row(idx[0]);
      out.marked = one_based_sorted(idx);
      break;
    }
    case GeneratorMode::CollinearTriple: {
      out.points = gaussian(rng, n, r);
      const auto idx = distinct_indices(rng, n, 3);
      const double lambda = std::uniform_real_distribution<double>(0.2, 0.8)(rng);
      out.points.row(idx[2]) =
          out.points.row(idx[0]) + lambda * (out.points.row(idx[1]) - out.points.row(idx[0]));
      out.marked = one_based_sorted(idx);
      break;
    }
    case GeneratorMode::ParallelGale: {
      const Index m = n - r - 1;
      Eigen::MatrixXd y = gaussian(rng, n, m);
      const auto idx = distinct_indices(rng, n, 3);
      const double magnitude = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
      const double c = std::bernoulli_distribution(0.5)(rng) ? magnitude : -magnitude;
      y.row(idx[0]) = c * y.row(idx[1]);
      y.row(idx[2]) -= y.colwise().sum();
      out.points = points_from_gale(rng, y, r);
      out.marked = one_based_sorted({idx[0], idx[1]});
      break;
    }
    case GeneratorMode::ZeroGaleRows: {
      const Index m = n - r - 1;
      const int zeros = std::min(2, r);
      Eigen::MatrixXd y = gaussian(rng, n, m);
      auto idx = distinct_indices(rng, n, zeros + 1);
      for (int z = 0; z < zeros; ++z) y.row(idx[static_cast<std::size_t>(z)]).setZero();
      y.row(idx.back()) -= y.colwise().sum();
      out.points = points_from_gale(rng, y, r);
      idx.pop_back();
      out.marked = one_based_sorted(idx);
      break;
    }
  }
  return out;
}

}  // namespace

GeneratedInstance random_edm(Index n, int r, std::uint64_t seed, GeneratorMode mode,
                             const Tolerances& tol) {
  check_shape(n, r, mode);
  Rng rng(seed);
  constexpr int kAttempts = 64;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Draw draw = draw_points(rng, n, r, mode);
    if (draw.points.size() == 0) continue;
    DistanceMatrix d = DistanceMatrix::from_points(draw.points);
    const EdmDecomposition dec = decompose(d, tol);
    if (dec.embedding_dimension() != r) continue;
    if (mode == GeneratorMode::GeneralPosition && !general_position_affine(dec).in_general_position) {
      continue;
    }
    GeneratedInstance out{std::move(d), std::move(draw.points), n, r, seed, mode,
                          std::move(draw.marked)};
    return out;
  }
  throw Error(ErrorCode::InternalInconsistency,
              "random_edm could not produce an instance with the requested embedding dimension");
}

}  // namespace edmyield
