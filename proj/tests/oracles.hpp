#pragma once

// Test-only oracles, deliberately independent of the library's algorithmic
// paths: brute-force dominance, Monte-Carlo and inclusion-exclusion volume,
// grid-sampled attainment counts and exhaustive bootstrap enumeration.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "moat/rng.hpp"
#include "moat/types.hpp"

namespace oracles {

using moat::ObjectiveVector;

// Plain componentwise dominance, written out once more on purpose.
inline bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

inline std::vector<ObjectiveVector> filter(
    const std::vector<ObjectiveVector>& points) {
  std::vector<ObjectiveVector> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j != i && dominates(points[j], points[i])) dominated = true;
    }
    if (!dominated) out.push_back(points[i]);
  }
  return out;
}

// Volume of the union of boxes [p, ref] by inclusion-exclusion; fine for
// |points| <= ~15.
inline double inclusion_exclusion_hv(const std::vector<ObjectiveVector>& points,
                                     const ObjectiveVector& ref) {
  std::vector<ObjectiveVector> inside;
  for (const auto& p : points) {
    bool ok = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!(p[i] < ref[i])) ok = false;
    }
    if (ok) inside.push_back(p);
  }
  const std::size_t n = inside.size();
  double total = 0.0;
  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
    ObjectiveVector corner(ref.size(), -1e308);
    int bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ULL << i)) {
        ++bits;
        for (std::size_t d = 0; d < ref.size(); ++d) {
          corner[d] = std::max(corner[d], inside[i][d]);
        }
      }
    }
    double vol = 1.0;
    for (std::size_t d = 0; d < ref.size(); ++d) vol *= ref[d] - corner[d];
    total += (bits % 2 == 1 ? 1.0 : -1.0) * vol;
  }
  return total;
}

// Monte-Carlo box-membership estimate of the dominated volume below ref,
// sampling the box [lo, ref] with lo the componentwise minimum of the
// contributing points. 2D uses a staircase lookup, 3D a pruned scan.
inline double mc_hypervolume(const std::vector<ObjectiveVector>& points,
                             const ObjectiveVector& ref, std::size_t samples,
                             std::uint64_t seed) {
  std::vector<ObjectiveVector> front;
  for (const auto& p : points) {
    bool ok = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!(p[i] < ref[i])) ok = false;
    }
    if (ok) front.push_back(p);
  }
  front = filter(front);
  if (front.empty()) return 0.0;
  const std::size_t m = ref.size();
  ObjectiveVector lo(m, 1e308);
  for (const auto& p : front) {
    for (std::size_t d = 0; d < m; ++d) lo[d] = std::min(lo[d], p[d]);
  }
  double box = 1.0;
  for (std::size_t d = 0; d < m; ++d) box *= ref[d] - lo[d];

  std::sort(front.begin(), front.end());
  moat::Rng rng(seed);
  std::size_t hits = 0;
  ObjectiveVector z(m);
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t d = 0; d < m; ++d) z[d] = rng.uniform(lo[d], ref[d]);
    if (m == 2) {
      // Last front point with x <= z[0]; its y is the minimum reachable.
      std::size_t a = 0, b = front.size();
      while (a < b) {
        std::size_t mid = (a + b) / 2;
        if (front[mid][0] <= z[0]) a = mid + 1; else b = mid;
      }
      if (a > 0 && front[a - 1][1] <= z[1]) ++hits;
    } else {
      for (const auto& p : front) {
        if (p[0] > z[0]) break;  // sorted by x
        bool dom = true;
        for (std::size_t d = 1; d < m; ++d) {
          if (p[d] > z[d]) { dom = false; break; }
        }
        if (dom) { ++hits; break; }
      }
    }
  }
  return box * static_cast<double>(hits) / static_cast<double>(samples);
}

// Direct double-loop R2 (mirrors the published definition).
inline double naive_r2(const std::vector<ObjectiveVector>& points,
                       const std::vector<ObjectiveVector>& weights,
                       const ObjectiveVector& utopian) {
  double sum = 0.0;
  for (const auto& w : weights) {
    double best = 1e308;
    for (const auto& a : points) {
      double u = -1e308;
      for (std::size_t i = 0; i < w.size(); ++i) {
        u = std::max(u, w[i] * std::fabs(a[i] - utopian[i]));
      }
      best = std::min(best, u);
    }
    sum += best;
  }
  return sum / static_cast<double>(weights.size());
}

// Number of runs with some point weakly dominating (x, y).
inline int eaf_count_at(const std::vector<std::vector<ObjectiveVector>>& runs,
                        double x, double y) {
  int count = 0;
  for (const auto& run : runs) {
    for (const auto& p : run) {
      if (p[0] <= x && p[1] <= y) {
        ++count;
        break;
      }
    }
  }
  return count;
}

// Exhaustive bootstrap: every ordered resample of the instance indices.
struct EnumeratedRanking {
  std::vector<std::vector<double>> win_fraction;
  std::vector<double> mean_rank;
};

inline EnumeratedRanking enumerate_bootstrap(
    const std::vector<std::vector<double>>& values, bool maximize, bool mean) {
  const std::size_t k = values.size();
  const std::size_t m = values[0].size();
  EnumeratedRanking out;
  out.win_fraction.assign(k, std::vector<double>(k, 0.0));
  out.mean_rank.assign(k, 0.0);
  std::vector<std::size_t> tuple(m, 0);
  std::size_t total = 0;
  while (true) {
    ++total;
    std::vector<double> agg(k);
    for (std::size_t a = 0; a < k; ++a) {
      std::vector<double> vals;
      for (std::size_t i : tuple) vals.push_back(values[a][i]);
      if (mean) {
        double s = 0;
        for (double v : vals) s += v;
        agg[a] = s / static_cast<double>(m);
      } else {
        std::sort(vals.begin(), vals.end());
        agg[a] = m % 2 ? vals[m / 2] : 0.5 * (vals[m / 2 - 1] + vals[m / 2]);
      }
    }
    for (std::size_t a = 0; a < k; ++a) {
      double rank = 1.0;
      double ties = 0.0;
      for (std::size_t b = 0; b < k; ++b) {
        if (b == a) continue;
        const bool b_better = maximize ? agg[b] > agg[a] : agg[b] < agg[a];
        if (b_better) rank += 1.0;
        if (agg[b] == agg[a]) ties += 1.0;
      }
      out.mean_rank[a] += rank + ties / 2.0;
      for (std::size_t b = 0; b < k; ++b) {
        if (b == a) continue;
        const bool a_better = maximize ? agg[a] > agg[b] : agg[a] < agg[b];
        const bool b_better = maximize ? agg[b] > agg[a] : agg[b] < agg[a];
        out.win_fraction[a][b] += a_better ? 1.0 : (b_better ? 0.0 : 0.5);
      }
    }
    std::size_t pos = m;
    while (pos > 0 && ++tuple[pos - 1] == m) tuple[--pos] = 0;
    if (pos == 0) break;
  }
  for (std::size_t a = 0; a < k; ++a) {
    out.mean_rank[a] /= static_cast<double>(total);
    for (std::size_t b = 0; b < k; ++b) {
      if (a != b) out.win_fraction[a][b] /= static_cast<double>(total);
    }
    out.win_fraction[a][a] = 0.5;
  }
  return out;
}

// Random point helpers.
inline ObjectiveVector random_point(moat::Rng& rng, std::size_t m, double lo = 0.0,
                                    double hi = 1.0) {
  ObjectiveVector p(m);
  for (auto& v : p) v = rng.uniform(lo, hi);
  return p;
}

inline std::vector<ObjectiveVector> random_points(moat::Rng& rng, std::size_t n,
                                                  std::size_t m, double lo = 0.0,
                                                  double hi = 1.0) {
  std::vector<ObjectiveVector> pts(n);
  for (auto& p : pts) p = random_point(rng, m, lo, hi);
  return pts;
}

}  // namespace oracles
