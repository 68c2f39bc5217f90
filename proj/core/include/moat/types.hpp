#pragma once

#include <cstdint>
#include <vector>

namespace moat {

/// A point in m-dimensional objective space (m >= 2, all components finite).
/// Minimization is the universal convention; maximization problems must be
/// negated at ingestion.
using ObjectiveVector = std::vector<double>;

/// One evaluated solution of a run.
struct Solution {
  /// 1-based evaluation counter, strictly increasing within a run.
  std::int64_t eval_index = 0;
  ObjectiveVector objectives;
  /// Decision variables (bits stored as 0/1). Empty when not recorded.
  std::vector<double> decision;

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// A set of mutually non-dominating objective vectors. Duplicates are legal
/// (equal points do not dominate each other).
struct ParetoSet {
  std::vector<ObjectiveVector> points;

  [[nodiscard]] bool empty() const { return points.empty(); }
  [[nodiscard]] std::size_t size() const { return points.size(); }

  friend bool operator==(const ParetoSet&, const ParetoSet&) = default;
};

}  // namespace moat
