#pragma once

// General-position tests by two independent routes, and a consistency audit
// of the general-position consequences for a computed yield report.
//
// Both routes enumerate subsets: C(n, n-r-1) Gale submatrices or C(n, r+1)
// point subsets. That is exponential in the smaller of the two subset sizes
// and intended for n up to roughly 30 with small corank.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edmyield/edm_core.hpp"
#include "edmyield/yield_analysis.hpp"

namespace edmyield {

enum class PositionRoute { GaleSubmatrices, AffineSubsets };

std::string_view to_string(PositionRoute r);

struct GeneralPositionResult {
  bool in_general_position = true;
  PositionRoute route = PositionRoute::AffineSubsets;
  // First violating subset in lexicographic order (1-based): rows of Z for the
  // Gale route, points for the affine route.
  std::optional<std::vector<Index>> witness;

  // Points that are affinely dependent. For the Gale route this is the
  // complement of the singular row set.
  std::vector<Index> witness_points(Index n) const;
};

// Every (n-r-1)-row submatrix of Z nonsingular; smallest singular value must
// exceed rank_rel * sigma_max(Z). Throws NoGaleSpace when r = n - 1.
GeneralPositionResult general_position_gale(const EdmDecomposition& dec);

// Every (r+1)-subset of points affinely independent.
GeneralPositionResult general_position_affine(const EdmDecomposition& dec);

// Gale route when a Gale matrix exists, otherwise the affine route.
GeneralPositionResult general_position(const EdmDecomposition& dec);

struct ConsistencyCheck {
  std::string name;
  bool applicable = false;  // hypothesis holds on this instance
  bool holds = true;        // conclusion verified (true when not applicable)
  std::string detail;
};

struct ConsistencyAudit {
  bool in_general_position = false;
  std::vector<ConsistencyCheck> checks;

  bool all_hold() const;
  const ConsistencyCheck& find(std::string_view name) const;
};

// Check names:
//   full_rank_all_yielding                         r = n-1 => every entry yielding
//   corank1_general_position_iff_all_yielding      r = n-2: general position <=> all yielding
//   corank2plus_general_position_all_unyielding    r <= n-3, general position => all unyielding
//   corank2_general_position_jointly_yielding      r = n-3, general position => every same-row pair jointly yielding
//   corank3plus_general_position_jointly_unyielding  r <= n-4, general position => every same-row pair jointly unyielding
//   position_routes_agree                          Gale and affine routes return the same verdict
ConsistencyAudit consistency_audit(const EdmDecomposition& dec, const YieldReport& report);

}  // namespace edmyield
