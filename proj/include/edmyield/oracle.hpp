#pragma once

// Formula-free ground truth for perturbation intervals, and seeded test
// instances with controlled degeneracies.
//
// Membership of D + t*Delta is decided by the Schoenberg test alone:
// lambda_min(-1/2 J (D + t Delta) J) >= -oracle_psd_rel * max(1, ||.||_2).
// lambda_min is concave in t, so the feasible set is a closed interval
// containing 0; its endpoints are bracketed by doubling and then bisected.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "edmyield/edm_core.hpp"

namespace edmyield {

// Symmetric hollow perturbation direction.
class PerturbationDirection {
 public:
  struct Term {
    Index row;  // 1-based
    Index col;
    double weight;
  };

  PerturbationDirection(Index n, std::vector<Term> terms);

  // E^kl.
  static PerturbationDirection unit(Index n, Index k, Index l);
  // c1 E^ij + c2 E^ik.
  static PerturbationDirection joint(Index n, Index i, Index j, Index k, double c1, double c2);

  const SymMatrix& matrix() const { return delta_; }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  SymMatrix delta_;
  std::vector<Term> terms_;
};

// lambda_min(-1/2 J (D + t Delta) J) together with the norm used for the floor.
struct GramSpectrumEnds {
  double min_eigenvalue = 0.0;
  double norm = 0.0;
};

GramSpectrumEnds gram_spectrum_at(const DistanceMatrix& d, const PerturbationDirection& delta,
                                  double t);

bool is_edm_at(const DistanceMatrix& d, const PerturbationDirection& delta, double t,
               const Tolerances& tol = {});

struct OracleInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool lower_unbounded = false;
  bool upper_unbounded = false;
  double achieved_width_tol = 0.0;  // widest final bisection bracket
  // Set when an unbounded side was found on a matrix of order >= 3, which
  // cannot happen for a valid EDM and signals corrupted input.
  bool bound_violation = false;
};

// Endpoints are the feasible ends of the final brackets.
OracleInterval feasible_interval(const DistanceMatrix& d, const PerturbationDirection& delta,
                                 const Tolerances& tol = {});

// feasible_interval for each direction; directions are processed in parallel.
std::vector<OracleInterval> oracle_sweep(const DistanceMatrix& d,
                                         const std::vector<PerturbationDirection>& directions,
                                         const Tolerances& tol = {});

// E^kl for every k < l in lexicographic order.
std::vector<PerturbationDirection> all_unit_directions(Index n);

enum class GeneratorMode {
  Generic,
  GeneralPosition,
  CoincidentPair,
  CollinearTriple,
  ParallelGale,
  ZeroGaleRows,
};

std::string_view to_string(GeneratorMode m);
GeneratorMode parse_generator_mode(std::string_view name);
const std::vector<GeneratorMode>& all_generator_modes();

struct GeneratedInstance {
  DistanceMatrix d;
  Eigen::MatrixXd points;
  Index n = 0;
  int r = 0;
  std::uint64_t seed = 0;
  GeneratorMode mode = GeneratorMode::Generic;
  // 1-based indices the mode acted on: the coincident pair, the collinear
  // triple, the two parallel Gale rows, or the zeroed Gale rows.
  std::vector<Index> marked;
};

// D has embedding dimension exactly r (checked with `tol`). Mode contracts:
//   Generic          Gaussian points in R^r
//   GeneralPosition  resampled until the affine-subset test passes
//   CoincidentPair   one point duplicated (r <= n-2)
//   CollinearTriple  three points on a line (2 <= r <= n-2)
//   ParallelGale     Gale rows i, j with z^i = c z^j, c != 0 (r <= n-2, n >= 3)
//   ZeroGaleRows     min(2, r) Gale rows forced to zero (r <= n-2)
// Infeasible (n, r, mode) combinations throw InvalidInput.
GeneratedInstance random_edm(Index n, int r, std::uint64_t seed, GeneratorMode mode,
                             const Tolerances& tol = {});

}  // namespace edmyield
