#include "moat/hypervolume.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "moat/errors.hpp"
#include "moat/pareto.hpp"

namespace moat {

namespace {

// Non-dominated subset of the points strictly dominating the reference
// point, sorted ascending by the first objective (canonical evaluation
// order for all three routes).
std::vector<ObjectiveVector> contributing_front(
    const std::vector<ObjectiveVector>& points, const ObjectiveVector& ref) {
  if (!std::all_of(ref.begin(), ref.end(),
                   [](double v) { return std::isfinite(v); })) {
    throw DimensionError("hypervolume: reference point must be finite");
  }
  std::vector<ObjectiveVector> inside;
  for (const auto& p : points) {
    if (p.size() != ref.size()) {
      throw DimensionError(
          "hypervolume: point dimension " + std::to_string(p.size()) +
          " does not match reference dimension " + std::to_string(ref.size()));
    }
    bool strict = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!(p[i] < ref[i])) {
        strict = false;
        break;
      }
    }
    if (strict) inside.push_back(p);
  }
  auto front = nondominated_filter(inside).points;
  std::sort(front.begin(), front.end());
  return front;
}

}  // namespace

namespace hv_detail {

double sweep_2d(const std::vector<ObjectiveVector>& points,
                const ObjectiveVector& ref) {
  auto front = contributing_front(points, ref);
  // Sorted ascending in x; non-dominated, so y is strictly descending.
  double hv = 0.0;
  double prev_y = ref[1];
  for (const auto& p : front) {
    hv += (ref[0] - p[0]) * (prev_y - p[1]);
    prev_y = p[1];
  }
  return hv;
}

namespace {

// Staircase of 2D-minimal (x, y) pairs: keys ascending, values strictly
// descending. Inserting a pair returns the area it adds to the region
// dominated below (ref_x, ref_y).
class Staircase2d {
 public:
  Staircase2d(double ref_x, double ref_y) : ref_x_(ref_x), ref_y_(ref_y) {}

  double insert(double x, double y) {
    auto it = stair_.lower_bound(x);
    double level = (it == stair_.begin()) ? ref_y_ : std::prev(it)->second;
    if (level <= y) return 0.0;  // covered already
    double delta = 0.0;
    double x_cur = x;
    while (it != stair_.end() && it->second >= y) {
      delta += (it->first - x_cur) * (level - y);
      x_cur = it->first;
      level = it->second;
      it = stair_.erase(it);
    }
    const double x_stop = (it == stair_.end()) ? ref_x_ : it->first;
    delta += (x_stop - x_cur) * (level - y);
    stair_.insert_or_assign(x, y);
    return delta;
  }

 private:
  double ref_x_, ref_y_;
  std::map<double, double> stair_;
};

}  // namespace

double sweep_3d(const std::vector<ObjectiveVector>& points,
                const ObjectiveVector& ref) {
  auto front = contributing_front(points, ref);
  std::sort(front.begin(), front.end(),
            [](const ObjectiveVector& a, const ObjectiveVector& b) {
              if (a[2] != b[2]) return a[2] < b[2];
              return a < b;
            });
  Staircase2d stair(ref[0], ref[1]);
  double hv = 0.0;
  double area = 0.0;
  double z_prev = front.empty() ? 0.0 : front[0][2];
  for (const auto& p : front) {
    hv += area * (p[2] - z_prev);
    area += stair.insert(p[0], p[1]);
    z_prev = p[2];
  }
  hv += area * (ref[2] - z_prev);
  return hv;
}

namespace {

double inclusive_volume(const ObjectiveVector& p, const ObjectiveVector& ref) {
  double v = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) v *= ref[i] - p[i];
  return v;
}

// Exclusive-volume recursion over an already non-dominated, canonically
// sorted front.
double wfg_front(const std::vector<ObjectiveVector>& front,
                 const ObjectiveVector& ref) {
  if (front.empty()) return 0.0;
  if (front.size() == 1) return inclusive_volume(front[0], ref);
  double hv = 0.0;
  for (std::size_t i = 0; i < front.size(); ++i) {
    const auto& p = front[i];
    // Limit the tail to the part of space dominated by p, then measure it.
    std::vector<ObjectiveVector> limited;
    limited.reserve(front.size() - i - 1);
    for (std::size_t j = i + 1; j < front.size(); ++j) {
      ObjectiveVector q = front[j];
      for (std::size_t d = 0; d < q.size(); ++d) q[d] = std::max(q[d], p[d]);
      limited.push_back(std::move(q));
    }
    auto tail = nondominated_filter(limited).points;
    std::sort(tail.begin(), tail.end());
    hv += inclusive_volume(p, ref) - wfg_front(tail, ref);
  }
  return hv;
}

}  // namespace

double wfg_recursive(const std::vector<ObjectiveVector>& points,
                     const ObjectiveVector& ref) {
  return wfg_front(contributing_front(points, ref), ref);
}

}  // namespace hv_detail

double hypervolume(const std::vector<ObjectiveVector>& points,
                   const ObjectiveVector& ref) {
  switch (ref.size()) {
    case 2:
      return hv_detail::sweep_2d(points, ref);
    case 3:
      return hv_detail::sweep_3d(points, ref);
    default:
      return hv_detail::wfg_recursive(points, ref);
  }
}

double hypervolume(const ParetoSet& points, const ObjectiveVector& ref) {
  return hypervolume(points.points, ref);
}

}  // namespace moat
