#include "moat/pareto.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "moat/errors.hpp"

namespace moat {

namespace {

void check_same_dim(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("objective vectors of dimension " +
                         std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " are not comparable");
  }
}

}  // namespace

bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  check_same_dim(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  check_same_dim(a, b);
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

namespace detail {

std::vector<std::size_t> nondominated_pairwise(
    const std::vector<ObjectiveVector>& points) {
  std::vector<std::size_t> survivors;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      if (j != i && dominates(points[j], points[i])) dominated = true;
    }
    if (!dominated) survivors.push_back(i);
  }
  return survivors;
}

namespace {

std::vector<std::size_t> sweep_2d(const std::vector<ObjectiveVector>& points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a][0] != points[b][0]) return points[a][0] < points[b][0];
    if (points[a][1] != points[b][1]) return points[a][1] < points[b][1];
    return a < b;
  });

  std::vector<char> keep(points.size(), 0);
  double min_y_before = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < order.size()) {
    // Process one group of equal x together: within the group only a
    // strictly smaller y dominates; across groups y <= suffices.
    std::size_t j = i;
    const double x = points[order[i]][0];
    const double group_min_y = points[order[i]][1];  // sorted ascending
    while (j < order.size() && points[order[j]][0] == x) ++j;
    for (std::size_t k = i; k < j; ++k) {
      const double y = points[order[k]][1];
      if (y < min_y_before && y == group_min_y) keep[order[k]] = 1;
    }
    min_y_before = std::min(min_y_before, group_min_y);
    i = j;
  }

  std::vector<std::size_t> survivors;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (keep[k]) survivors.push_back(k);
  }
  return survivors;
}

std::vector<std::size_t> sweep_3d(const std::vector<ObjectiveVector>& points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& p = points[a];
    const auto& q = points[b];
    if (p[0] != q[0]) return p[0] < q[0];
    if (p[1] != q[1]) return p[1] < q[1];
    if (p[2] != q[2]) return p[2] < q[2];
    return a < b;
  });

  // Staircase over (y, z) of already-processed points: keys ascending in y,
  // values strictly descending in z (2D-nondominated pairs only).
  std::map<double, double> stair;
  auto dominated_2d = [&](double y, double z) {
    auto it = stair.upper_bound(y);
    if (it == stair.begin()) return false;
    --it;  // largest key <= y; its value is the min z among keys <= y
    return it->second <= z;
  };
  auto insert_2d = [&](double y, double z) {
    auto it = stair.upper_bound(y);
    if (it != stair.begin()) {
      auto prev = std::prev(it);
      if (prev->second <= z) return;  // already covered
    }
    it = stair.insert_or_assign(y, z).first;
    // Drop entries to the right made redundant by the new pair.
    auto next = std::next(it);
    while (next != stair.end() && next->second >= z) next = stair.erase(next);
  };

  std::vector<char> keep(points.size(), 0);
  std::size_t i = 0;
  while (i < order.size()) {
    // Groups of identical points must be judged before any of them is
    // inserted, so exact duplicates all survive.
    std::size_t j = i;
    while (j < order.size() && points[order[j]] == points[order[i]]) ++j;
    const auto& p = points[order[i]];
    if (!dominated_2d(p[1], p[2])) {
      for (std::size_t k = i; k < j; ++k) keep[order[k]] = 1;
    }
    insert_2d(p[1], p[2]);
    i = j;
  }

  std::vector<std::size_t> survivors;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (keep[k]) survivors.push_back(k);
  }
  return survivors;
}

}  // namespace

std::vector<std::size_t> nondominated_sweep(
    const std::vector<ObjectiveVector>& points) {
  if (points.empty()) return {};
  const std::size_t m = points[0].size();
  if (m == 2) return sweep_2d(points);
  if (m == 3) return sweep_3d(points);
  return nondominated_pairwise(points);
}

}  // namespace detail

std::vector<std::size_t> nondominated_indices(
    const std::vector<ObjectiveVector>& points) {
  if (points.empty()) return {};
  const std::size_t m = points[0].size();
  for (const auto& p : points) check_same_dim(points[0], p);
  if (points.size() <= 1000 || m > 3) {
    return detail::nondominated_pairwise(points);
  }
  return detail::nondominated_sweep(points);
}

ParetoSet nondominated_filter(const std::vector<ObjectiveVector>& points) {
  ParetoSet result;
  for (std::size_t i : nondominated_indices(points)) {
    result.points.push_back(points[i]);
  }
  return result;
}

std::pair<ObjectiveVector, ObjectiveVector> ideal_and_worst(
    const std::vector<ObjectiveVector>& points) {
  if (points.empty()) {
    throw CoverageError("ideal_and_worst: no points");
  }
  ObjectiveVector ideal = points[0];
  ObjectiveVector worst = points[0];
  for (const auto& p : points) {
    check_same_dim(points[0], p);
    for (std::size_t i = 0; i < p.size(); ++i) {
      ideal[i] = std::min(ideal[i], p[i]);
      worst[i] = std::max(worst[i], p[i]);
    }
  }
  return {std::move(ideal), std::move(worst)};
}

bool ParetoArchive::would_reject(const ObjectiveVector& p) const {
  for (const auto& q : front_) {
    if (dominates(q, p)) return true;
  }
  return false;
}

bool ParetoArchive::offer(const ObjectiveVector& p) {
  if (would_reject(p)) return false;
  std::erase_if(front_, [&](const ObjectiveVector& q) {
    return dominates(p, q);
  });
  front_.push_back(p);
  return true;
}

}  // namespace moat
