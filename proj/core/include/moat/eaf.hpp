#pragma once

#include <vector>

#include "moat/types.hpp"

namespace moat {

/// One half-open rectangle [x_lo, x_hi) x [y_lo, y_hi) attained by exactly
/// `count` of the n runs (a location is attained by a run when some point of
/// the run weakly dominates it).
struct EafCell {
  double x_lo = 0, y_lo = 0, x_hi = 0, y_hi = 0;
  int count = 0;
};

/// Exact rectangular decomposition of a 2D empirical attainment function.
/// Cells are disjoint and cover the attained part of the (padded) bounding
/// box; the never-attained region carries no cell.
struct EafGrid {
  int n_runs = 0;
  std::vector<EafCell> cells;
  // Padded box enclosing all input points; cells are capped at (x_hi, y_hi).
  double x_lo = 0, y_lo = 0, x_hi = 0, y_hi = 0;
};

/// Attainment counts over 2D runs (each run is one point set; only its
/// non-dominated front matters). Throws DimensionError unless m == 2 —
/// exact EAFs are supported in two dimensions only.
EafGrid eaf(const std::vector<std::vector<ObjectiveVector>>& runs);

/// Number of runs attaining location (x, y) according to the grid (0 outside
/// every cell).
int attainment_count(const EafGrid& grid, double x, double y);

/// Lower-left boundary of the region attained by at least `level` of the n
/// runs (level=1: best surface, level=n: worst). Throws ConfigError when
/// level is out of range.
ParetoSet attainment_surface(const EafGrid& grid, int level);

/// Signed overlay of two EAFs: per cell, fraction_a - fraction_b in [-1, 1].
struct EafDiffCell {
  double x_lo = 0, y_lo = 0, x_hi = 0, y_hi = 0;
  double value = 0;
};

struct EafDiffGrid {
  std::vector<EafDiffCell> cells;
  double x_lo = 0, y_lo = 0, x_hi = 0, y_hi = 0;
};

EafDiffGrid eaf_diff(const std::vector<std::vector<ObjectiveVector>>& runs_a,
                     const std::vector<std::vector<ObjectiveVector>>& runs_b);

/// Signed fraction at a location (0 outside every cell).
double diff_value(const EafDiffGrid& grid, double x, double y);

}  // namespace moat
