#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "moat/types.hpp"

namespace moat {

/// Weak Pareto dominance (minimization): a <= b componentwise and a < b in at
/// least one component. Equal vectors do not dominate each other.
/// Throws DimensionError on mismatched dimensions.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// a <= b in every component (equality allowed everywhere).
bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Indices of the points not dominated by any other input point, in input
/// order. Duplicates all survive. Uses the pairwise algorithm up to 1000
/// points and a sort-based sweep in 2D/3D above that; both routes give
/// identical results.
std::vector<std::size_t> nondominated_indices(
    const std::vector<ObjectiveVector>& points);

/// The non-dominated subset of `points`, input order preserved, duplicates
/// kept. Empty input yields an empty set.
ParetoSet nondominated_filter(const std::vector<ObjectiveVector>& points);

/// Componentwise minimum (ideal) and maximum (worst) over a non-empty set.
/// Throws CoverageError on empty input, DimensionError on ragged input.
std::pair<ObjectiveVector, ObjectiveVector> ideal_and_worst(
    const std::vector<ObjectiveVector>& points);

namespace detail {

// Both exposed so tests can cross-check them against each other.
std::vector<std::size_t> nondominated_pairwise(
    const std::vector<ObjectiveVector>& points);
std::vector<std::size_t> nondominated_sweep(
    const std::vector<ObjectiveVector>& points);

}  // namespace detail

/// Online non-dominated archive: observes a stream of points and maintains
/// the current front in insertion order.
class ParetoArchive {
 public:
  /// Returns true (and keeps the point) iff `p` is not dominated by any
  /// previously kept point. Kept points dominated by `p` are evicted from
  /// the front, preserving the relative order of survivors.
  bool offer(const ObjectiveVector& p);

  /// True iff `p` is dominated by the current front (no insertion).
  [[nodiscard]] bool would_reject(const ObjectiveVector& p) const;

  [[nodiscard]] const std::vector<ObjectiveVector>& front() const {
    return front_;
  }
  [[nodiscard]] std::size_t size() const { return front_.size(); }
  [[nodiscard]] bool empty() const { return front_.empty(); }

 private:
  std::vector<ObjectiveVector> front_;
};

}  // namespace moat
