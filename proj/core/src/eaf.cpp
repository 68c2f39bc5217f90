#include "moat/eaf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "moat/errors.hpp"
#include "moat/pareto.hpp"

namespace moat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Front of one run as a staircase: x strictly ascending, y strictly
// descending. May be empty.
using Staircase = std::vector<std::pair<double, double>>;

Staircase staircase_of(const std::vector<ObjectiveVector>& run) {
  for (const auto& p : run) {
    if (p.size() != 2) {
      throw DimensionError(
          "eaf: exact attainment functions are supported for m = 2 only");
    }
  }
  auto front = nondominated_filter(run).points;
  std::sort(front.begin(), front.end());
  Staircase stair;
  stair.reserve(front.size());
  for (const auto& p : front) {
    // Duplicates collapse; y is strictly descending afterwards.
    if (stair.empty() || p[1] < stair.back().second) {
      stair.emplace_back(p[0], p[1]);
    }
  }
  return stair;
}

// Lowest y this run attains at abscissa x (+inf when it attains nothing).
double attained_y(const Staircase& stair, double x) {
  auto it = std::upper_bound(
      stair.begin(), stair.end(), x,
      [](double v, const std::pair<double, double>& e) { return v < e.first; });
  if (it == stair.begin()) return kInf;
  return std::prev(it)->second;
}

struct Layout {
  std::vector<Staircase> stairs;
  std::vector<double> x_breaks;  // sorted distinct x coordinates
  double x_lo = 0, y_lo = 0, x_hi = 0, y_hi = 0;  // padded box
};

Layout make_layout(const std::vector<const std::vector<ObjectiveVector>*>& runs) {
  Layout layout;
  std::set<double> xs;
  double x_min = kInf, x_max = -kInf, y_min = kInf, y_max = -kInf;
  bool any = false;
  for (const auto* run : runs) {
    layout.stairs.push_back(staircase_of(*run));
    for (const auto& [x, y] : layout.stairs.back()) {
      xs.insert(x);
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
      any = true;
    }
  }
  if (!any) throw CoverageError("eaf: no points in any run");
  layout.x_breaks.assign(xs.begin(), xs.end());
  const double x_pad = x_max > x_min ? 0.05 * (x_max - x_min) : 1.0;
  const double y_pad = y_max > y_min ? 0.05 * (y_max - y_min) : 1.0;
  layout.x_lo = x_min;
  layout.y_lo = y_min;
  layout.x_hi = x_max + x_pad;
  layout.y_hi = y_max + y_pad;
  return layout;
}

// Sorted finite y-levels of all runs within the slab starting at x.
std::vector<double> slab_levels(const Layout& layout, double x) {
  std::vector<double> ys;
  for (const auto& stair : layout.stairs) {
    const double y = attained_y(stair, x);
    if (y < kInf) ys.push_back(y);
  }
  std::sort(ys.begin(), ys.end());
  return ys;
}

}  // namespace

EafGrid eaf(const std::vector<std::vector<ObjectiveVector>>& runs) {
  if (runs.empty()) throw CoverageError("eaf: need at least one run");
  std::vector<const std::vector<ObjectiveVector>*> ptrs;
  ptrs.reserve(runs.size());
  for (const auto& r : runs) ptrs.push_back(&r);
  const Layout layout = make_layout(ptrs);

  EafGrid grid;
  grid.n_runs = static_cast<int>(runs.size());
  grid.x_lo = layout.x_lo;
  grid.y_lo = layout.y_lo;
  grid.x_hi = layout.x_hi;
  grid.y_hi = layout.y_hi;

  for (std::size_t j = 0; j < layout.x_breaks.size(); ++j) {
    const double x_lo = layout.x_breaks[j];
    const double x_hi = j + 1 < layout.x_breaks.size() ? layout.x_breaks[j + 1]
                                                       : layout.x_hi;
    if (x_hi <= x_lo) continue;
    const auto ys = slab_levels(layout, x_lo);
    for (std::size_t i = 0; i < ys.size(); ++i) {
      const double y_hi = i + 1 < ys.size() ? ys[i + 1] : layout.y_hi;
      if (y_hi <= ys[i]) continue;  // coincident levels merge upward
      grid.cells.push_back(
          EafCell{x_lo, ys[i], x_hi, y_hi, static_cast<int>(i + 1)});
    }
  }
  return grid;
}

int attainment_count(const EafGrid& grid, double x, double y) {
  // Counts are constant beyond the last break in each axis, so queries at or
  // past the padded cap are answered just inside it.
  x = std::min(x, std::nextafter(grid.x_hi, -kInf));
  y = std::min(y, std::nextafter(grid.y_hi, -kInf));
  for (const auto& c : grid.cells) {
    if (x >= c.x_lo && x < c.x_hi && y >= c.y_lo && y < c.y_hi) return c.count;
  }
  return 0;
}

ParetoSet attainment_surface(const EafGrid& grid, int level) {
  if (level < 1 || level > grid.n_runs) {
    throw ConfigError("attainment level " + std::to_string(level) +
                      " out of range [1, " + std::to_string(grid.n_runs) + "]");
  }
  std::vector<ObjectiveVector> corners;
  // Cells of one slab share x_lo and are stacked with increasing counts;
  // the lowest cell reaching `level` contributes its lower-left corner.
  for (const auto& c : grid.cells) {
    if (c.count < level) continue;
    if (!corners.empty() && corners.back()[0] == c.x_lo) continue;
    corners.push_back({c.x_lo, c.y_lo});
  }
  return nondominated_filter(corners);
}

EafDiffGrid eaf_diff(const std::vector<std::vector<ObjectiveVector>>& runs_a,
                     const std::vector<std::vector<ObjectiveVector>>& runs_b) {
  if (runs_a.empty() || runs_b.empty()) {
    throw CoverageError("eaf_diff: both sides need at least one run");
  }
  std::vector<const std::vector<ObjectiveVector>*> ptrs;
  for (const auto& r : runs_a) ptrs.push_back(&r);
  for (const auto& r : runs_b) ptrs.push_back(&r);
  const Layout layout = make_layout(ptrs);
  const std::size_t na = runs_a.size();
  const std::size_t nb = runs_b.size();

  EafDiffGrid grid;
  grid.x_lo = layout.x_lo;
  grid.y_lo = layout.y_lo;
  grid.x_hi = layout.x_hi;
  grid.y_hi = layout.y_hi;

  for (std::size_t j = 0; j < layout.x_breaks.size(); ++j) {
    const double x_lo = layout.x_breaks[j];
    const double x_hi = j + 1 < layout.x_breaks.size() ? layout.x_breaks[j + 1]
                                                       : layout.x_hi;
    if (x_hi <= x_lo) continue;

    // y-levels of both sides in this slab, walked bottom-up while tracking
    // each side's attainment count.
    std::vector<double> ya, yb;
    for (std::size_t r = 0; r < na; ++r) {
      const double y = attained_y(layout.stairs[r], x_lo);
      if (y < kInf) ya.push_back(y);
    }
    for (std::size_t r = na; r < na + nb; ++r) {
      const double y = attained_y(layout.stairs[r], x_lo);
      if (y < kInf) yb.push_back(y);
    }
    std::sort(ya.begin(), ya.end());
    std::sort(yb.begin(), yb.end());
    std::vector<double> breaks;
    breaks.reserve(ya.size() + yb.size());
    std::merge(ya.begin(), ya.end(), yb.begin(), yb.end(),
               std::back_inserter(breaks));
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    std::size_t ia = 0, ib = 0;
    for (std::size_t i = 0; i < breaks.size(); ++i) {
      const double y_lo = breaks[i];
      const double y_hi = i + 1 < breaks.size() ? breaks[i + 1] : layout.y_hi;
      while (ia < ya.size() && ya[ia] <= y_lo) ++ia;
      while (ib < yb.size() && yb[ib] <= y_lo) ++ib;
      if (y_hi <= y_lo) continue;
      const double value = static_cast<double>(ia) / static_cast<double>(na) -
                           static_cast<double>(ib) / static_cast<double>(nb);
      grid.cells.push_back(EafDiffCell{x_lo, y_lo, x_hi, y_hi, value});
    }
  }
  return grid;
}

double diff_value(const EafDiffGrid& grid, double x, double y) {
  x = std::min(x, std::nextafter(grid.x_hi, -kInf));
  y = std::min(y, std::nextafter(grid.y_hi, -kInf));
  for (const auto& c : grid.cells) {
    if (x >= c.x_lo && x < c.x_hi && y >= c.y_lo && y < c.y_hi) return c.value;
  }
  return 0.0;
}

}  // namespace moat
