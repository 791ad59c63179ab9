#include "edmyield/reference.hpp"

#include "combinations.hpp"
#include "edmyield/error.hpp"
#include "position_predicates.hpp"

namespace edmyield::reference {

YieldReport analyze_all(const EdmDecomposition& dec) {
  YieldReport report;
  report.n = dec.order();
  for (Index k = 1; k < report.n; ++k) {
    for (Index l = k + 1; l <= report.n; ++l) {
      report.entries.push_back(analyze_entry(dec, k, l));
    }
  }
  return report;
}

namespace {

template <class Test>
std::optional<std::vector<Index>> first_violation(int n, int k, const Test& test) {
  const std::uint64_t total = detail::binomial(n, k);
  if (total == 0) return std::nullopt;
  std::vector<int> combo = detail::unrank_combination(n, k, 0);
  for (std::uint64_t rank = 0; rank < total; ++rank) {
    if (test.violates(combo)) {
      std::vector<Index> out;
      for (int x : combo) out.push_back(Index{x} + 1);
      return out;
    }
    detail::next_combination(combo, n);
  }
  return std::nullopt;
}

}  // namespace

GeneralPositionResult general_position_gale(const EdmDecomposition& dec) {
  const Index m = dec.gale_dimension();
  if (m == 0) {
    throw Error(ErrorCode::NoGaleSpace, "embedding dimension is n-1; use the affine-subset route");
  }
  GeneralPositionResult out;
  out.route = PositionRoute::GaleSubmatrices;
  out.witness = first_violation(static_cast<int>(dec.order()), static_cast<int>(m),
                                detail::GaleSubsetTest(dec));
  out.in_general_position = !out.witness;
  return out;
}

GeneralPositionResult general_position_affine(const EdmDecomposition& dec) {
  GeneralPositionResult out;
  out.route = PositionRoute::AffineSubsets;
  out.witness = first_violation(static_cast<int>(dec.order()), dec.embedding_dimension() + 1,
                                detail::AffineSubsetTest(dec));
  out.in_general_position = !out.witness;
  return out;
}

std::vector<OracleInterval> oracle_sweep(const DistanceMatrix& d,
                                         const std::vector<PerturbationDirection>& directions,
                                         const Tolerances& tol) {
  std::vector<OracleInterval> out;
  out.reserve(directions.size());
  for (const auto& delta : directions) out.push_back(feasible_interval(d, delta, tol));
  return out;
}

}  // namespace edmyield::reference
