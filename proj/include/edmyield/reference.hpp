#pragma once

// Serial implementations of the parallel kernels. They share the per-item
// logic with the parallel versions and differ only in scheduling, so their
// results must be identical.

#include <vector>

#include "edmyield/edm_core.hpp"
#include "edmyield/geometry_predicates.hpp"
#include "edmyield/oracle.hpp"
#include "edmyield/yield_analysis.hpp"

namespace edmyield::reference {

YieldReport analyze_all(const EdmDecomposition& dec);

GeneralPositionResult general_position_gale(const EdmDecomposition& dec);
GeneralPositionResult general_position_affine(const EdmDecomposition& dec);

std::vector<OracleInterval> oracle_sweep(const DistanceMatrix& d,
                                         const std::vector<PerturbationDirection>& directions,
                                         const Tolerances& tol = {});

}  // namespace edmyield::reference
