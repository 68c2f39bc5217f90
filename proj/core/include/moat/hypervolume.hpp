#pragma once

#include <vector>

#include "moat/types.hpp"

namespace moat {

/// Hypervolume of the region dominated by `points` and bounded by `ref`
/// (minimization). Only points strictly below the reference point in every
/// coordinate contribute; the rest are filtered, never an error. Dispatches
/// to a sorted sweep in 2D, a dimension sweep in 3D and an exclusive-volume
/// recursion for m >= 4 (exact but exponential in m; fine up to m = 8).
double hypervolume(const std::vector<ObjectiveVector>& points,
                   const ObjectiveVector& ref);
double hypervolume(const ParetoSet& points, const ObjectiveVector& ref);

namespace hv_detail {

// The three routes, each self-contained (each filters its own input), so
// they can be cross-checked against one another on overlapping dimensions.
double sweep_2d(const std::vector<ObjectiveVector>& points,
                const ObjectiveVector& ref);
double sweep_3d(const std::vector<ObjectiveVector>& points,
                const ObjectiveVector& ref);
double wfg_recursive(const std::vector<ObjectiveVector>& points,
                     const ObjectiveVector& ref);

}  // namespace hv_detail

}  // namespace moat
