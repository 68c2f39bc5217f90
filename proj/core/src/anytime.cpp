#include "moat/anytime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "moat/algorithms.hpp"
#include "moat/errors.hpp"
#include "moat/hypervolume.hpp"
#include "moat/pareto.hpp"

namespace moat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double indicator_of_front(const std::vector<ObjectiveVector>& front,
                          const IndicatorSpec& spec,
                          const ParetoSet& normalized_reference,
                          std::size_t m) {
  switch (spec.kind) {
    case IndicatorKind::hypervolume:
      return hypervolume(front, spec.resolved_reference_point(m));
    case IndicatorKind::igd_plus:
      if (front.empty()) return kInf;
      return igd_plus(front, normalized_reference);
    case IndicatorKind::eps_additive:
      if (front.empty()) return kInf;
      return epsilon_additive(front, normalized_reference);
    case IndicatorKind::eps_multiplicative:
      if (front.empty()) return kInf;
      return epsilon_multiplicative(front, normalized_reference);
    case IndicatorKind::r2:
      if (front.empty()) return kInf;
      return r2(front, spec.weights);
  }
  return 0.0;
}

}  // namespace

GridScale grid_scale_from_string(const std::string& s) {
  if (s == "log") return GridScale::log;
  if (s == "lin" || s == "linear") return GridScale::linear;
  throw ConfigError("unknown grid scale '" + s + "' (use log or lin)");
}

BudgetGrid make_budget_grid(std::int64_t lo, std::int64_t hi, int count,
                            GridScale scale) {
  if (lo < 1 || lo >= hi) {
    throw ConfigError("budget grid needs 1 <= lo < hi");
  }
  if (count < 2) throw ConfigError("budget grid needs at least 2 points");
  std::vector<std::int64_t> budgets;
  budgets.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    double v;
    if (scale == GridScale::log) {
      v = std::exp(std::log(static_cast<double>(lo)) +
                   t * (std::log(static_cast<double>(hi)) -
                        std::log(static_cast<double>(lo))));
    } else {
      v = static_cast<double>(lo) + t * static_cast<double>(hi - lo);
    }
    budgets.push_back(std::llround(v));
  }
  budgets.front() = lo;
  budgets.back() = hi;
  for (auto& b : budgets) b = std::clamp(b, lo, hi);
  std::sort(budgets.begin(), budgets.end());
  budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());
  return BudgetGrid{std::move(budgets)};
}

TrajectorySeries trajectory(const RunArchive& run, const IndicatorSpec& spec,
                            const BudgetGrid& grid,
                            const NormalizationBounds& bounds) {
  return trajectory(run.meta, run.records, spec, grid, bounds);
}

TrajectorySeries trajectory(const RunMeta& meta,
                            const std::vector<Solution>& records,
                            const IndicatorSpec& spec, const BudgetGrid& grid,
                            const NormalizationBounds& bounds) {
  const std::size_t m = static_cast<std::size_t>(meta.m);
  if (bounds.ideal.size() != m) {
    throw DimensionError("trajectory: bounds dimension does not match run");
  }
  spec.validate(m);
  if (grid.budgets.empty()) throw ConfigError("trajectory: empty budget grid");
  for (std::size_t i = 0; i + 1 < grid.budgets.size(); ++i) {
    if (grid.budgets[i] >= grid.budgets[i + 1]) {
      throw ConfigError("trajectory: budgets must be strictly increasing");
    }
  }

  ParetoSet normalized_reference;
  for (const auto& z : spec.reference_set.points) {
    normalized_reference.points.push_back(normalize(z, bounds));
  }

  const bool maximizing = is_maximizing(spec.kind);
  // R2 is only guaranteed monotone when every archive point stays at or
  // above the utopian point; tracked as the archive is consumed.
  bool r2_monotone = spec.kind == IndicatorKind::r2;

  TrajectorySeries series;
  series.kind = spec.kind;
  series.budgets = grid.budgets;
  series.values.reserve(grid.budgets.size());

  ParetoArchive front;
  std::size_t next_record = 0;
  double previous = maximizing ? -kInf : kInf;
  for (std::int64_t budget : grid.budgets) {
    while (next_record < records.size() &&
           records[next_record].eval_index <= budget) {
      ObjectiveVector p = normalize(records[next_record].objectives, bounds);
      if (r2_monotone) {
        for (std::size_t i = 0; i < m; ++i) {
          if (p[i] < spec.weights.utopian[i]) r2_monotone = false;
        }
      }
      front.offer(p);
      ++next_record;
    }
    double value = indicator_of_front(front.front(), spec,
                                      normalized_reference, m);
    // The exact value is monotone over a cumulative archive; pin the
    // computed one so sub-ulp rounding noise cannot break that.
    if (spec.kind != IndicatorKind::r2 || r2_monotone) {
      value = maximizing ? std::max(value, previous)
                         : std::min(value, previous);
    }
    previous = value;
    series.values.push_back(value);
  }
  return series;
}

AggregatedCurve aggregate(const std::vector<TrajectorySeries>& series,
                          double confidence) {
  if (series.empty()) throw CoverageError("aggregate: no series");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw ConfigError("aggregate: confidence must be in (0, 1)");
  }
  const auto& budgets = series[0].budgets;
  for (const auto& s : series) {
    if (s.budgets != budgets) {
      throw ConfigError("aggregate: series have mismatched budget grids");
    }
  }

  const std::size_t n = series.size();
  AggregatedCurve curve;
  curve.budgets = budgets;
  curve.mean.reserve(budgets.size());
  curve.lo.reserve(budgets.size());
  curve.hi.reserve(budgets.size());

  double t_factor = 0.0;
  if (n > 1) {
    boost::math::students_t dist(static_cast<double>(n - 1));
    t_factor = boost::math::quantile(dist, 1.0 - (1.0 - confidence) / 2.0);
  }

  for (std::size_t b = 0; b < budgets.size(); ++b) {
    double sum = 0.0;
    for (const auto& s : series) sum += s.values[b];
    const double mean = sum / static_cast<double>(n);
    double half = 0.0;
    if (n > 1) {
      double ss = 0.0;
      for (const auto& s : series) {
        const double d = s.values[b] - mean;
        ss += d * d;
      }
      const double sd = std::sqrt(ss / static_cast<double>(n - 1));
      half = t_factor * sd / std::sqrt(static_cast<double>(n));
    }
    curve.mean.push_back(mean);
    curve.lo.push_back(mean - half);
    curve.hi.push_back(mean + half);
  }
  return curve;
}

EcdfCurves ecdf(const DataSet& dataset, const BudgetGrid& grid,
                const std::map<std::string, NormalizationBounds>& bounds) {
  EcdfCurves curves;
  curves.budgets = grid.budgets;
  curves.algorithms = dataset.algorithms();
  curves.values.assign(curves.algorithms.size(),
                       std::vector<double>(grid.budgets.size(), 0.0));
  std::vector<std::size_t> cells(curves.algorithms.size(), 0);

  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const RunMeta& meta = dataset.meta(i);
    auto bit = bounds.find(meta.problem);
    if (bit == bounds.end()) {
      throw CoverageError("ecdf: no normalization bounds for problem " +
                          meta.problem);
    }
    const auto alg_it = std::lower_bound(curves.algorithms.begin(),
                                         curves.algorithms.end(),
                                         meta.algorithm);
    const std::size_t a =
        static_cast<std::size_t>(alg_it - curves.algorithms.begin());
    auto series = trajectory(dataset.meta(i), dataset.records(i),
                             IndicatorSpec::hypervolume(), grid, bit->second);
    const double max_hv = std::pow(1.1, static_cast<double>(meta.m));
    for (std::size_t b = 0; b < series.values.size(); ++b) {
      curves.values[a][b] += series.values[b] / max_hv;
    }
    ++cells[a];
  }

  for (std::size_t a = 0; a < curves.algorithms.size(); ++a) {
    if (cells[a] == 0) continue;
    for (double& v : curves.values[a]) v /= static_cast<double>(cells[a]);
  }
  return curves;
}

std::vector<Solution> final_population(const RunArchive& run, std::size_t mu) {
  if (run.meta.store_mode == StoreMode::nondominated_only) {
    throw Error(
        "final_population: not reconstructible from a nondominated_only log");
  }
  if (mu < 1 || run.records.size() < mu) {
    throw Error("final_population: run has " +
                std::to_string(run.records.size()) +
                " records, need at least mu = " + std::to_string(mu));
  }

  if (run.meta.algorithm.rfind("nsga2", 0) == 0) {
    // Replay the environmental selection generation by generation; a
    // trailing partial generation never replaces the population.
    std::vector<std::size_t> pop(mu);
    for (std::size_t i = 0; i < mu; ++i) pop[i] = i;
    std::size_t next = mu;
    while (next + mu <= run.records.size()) {
      std::vector<std::size_t> candidates = pop;
      for (std::size_t i = 0; i < mu; ++i) candidates.push_back(next + i);
      std::vector<ObjectiveVector> objs(candidates.size());
      std::vector<std::int64_t> idx(candidates.size());
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        objs[i] = run.records[candidates[i]].objectives;
        idx[i] = run.records[candidates[i]].eval_index;
      }
      auto keep = nsga2_environmental_selection(objs, idx, mu);
      std::vector<std::size_t> selected;
      selected.reserve(mu);
      for (std::size_t i : keep) selected.push_back(candidates[i]);
      pop = std::move(selected);
      next += mu;
    }
    std::vector<Solution> result;
    result.reserve(mu);
    for (std::size_t i : pop) result.push_back(run.records[i]);
    return result;
  }

  // Fallback for foreign data and random search: the last mu records.
  return {run.records.end() - static_cast<std::ptrdiff_t>(mu),
          run.records.end()};
}

}  // namespace moat
