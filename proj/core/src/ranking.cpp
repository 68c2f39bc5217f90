#include "moat/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "moat/errors.hpp"
#include "moat/rng.hpp"

namespace moat {

namespace {

// Demsar-style Nemenyi constants: q_alpha of the studentized range at
// infinite degrees of freedom, divided by sqrt(2); k = 2..20.
constexpr double kQ005[] = {1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031,
                            3.102, 3.164, 3.219, 3.268, 3.313, 3.354, 3.391,
                            3.426, 3.458, 3.489, 3.517, 3.544};
constexpr double kQ001[] = {2.576, 2.913, 3.113, 3.255, 3.364, 3.452, 3.526,
                            3.590, 3.646, 3.696, 3.741, 3.781, 3.818, 3.852,
                            3.884, 3.914, 3.941, 3.967, 3.991};
constexpr double kQ010[] = {1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780,
                            2.855, 2.920, 2.978, 3.030, 3.077, 3.120, 3.159,
                            3.196, 3.230, 3.261, 3.291, 3.319};

// All resamples shared between robust_rank and bootstrap_ci. Enumerates the
// full m^m outcome space when it fits within n_samples; otherwise draws
// n_samples resamples, each from its own derived seed so parallel and
// sequential evaluation agree.
std::vector<std::vector<std::size_t>> make_resamples(
    std::size_t n_instances, const BootstrapConfig& config) {
  if (config.n_samples < 1) {
    throw ConfigError("bootstrap needs n_samples >= 1");
  }
  const std::size_t m = n_instances;
  double full = std::pow(static_cast<double>(m), static_cast<double>(m));
  if (m <= 15 && full <= static_cast<double>(config.n_samples)) {
    std::vector<std::vector<std::size_t>> out;
    out.reserve(static_cast<std::size_t>(full));
    std::vector<std::size_t> tuple(m, 0);
    while (true) {
      out.push_back(tuple);
      std::size_t pos = m;
      while (pos > 0 && ++tuple[pos - 1] == m) tuple[--pos] = 0;
      if (pos == 0) break;
    }
    return out;
  }
  std::vector<std::vector<std::size_t>> out(
      static_cast<std::size_t>(config.n_samples));
  for (std::size_t r = 0; r < out.size(); ++r) {
    Rng rng(mix64(config.seed, r));
    out[r].resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      out[r][i] = static_cast<std::size_t>(rng.below(m));
    }
  }
  return out;
}

double aggregate_of(const std::vector<double>& row,
                    const std::vector<std::size_t>& resample,
                    Aggregator aggregator) {
  if (aggregator == Aggregator::mean) {
    double sum = 0.0;
    for (std::size_t i : resample) sum += row[i];
    return sum / static_cast<double>(resample.size());
  }
  std::vector<double> values;
  values.reserve(resample.size());
  for (std::size_t i : resample) values.push_back(row[i]);
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// [resample][algorithm] aggregates.
std::vector<std::vector<double>> resample_aggregates(
    const PerformanceTable& table,
    const std::vector<std::vector<std::size_t>>& resamples,
    Aggregator aggregator) {
  std::vector<std::vector<double>> agg(
      resamples.size(), std::vector<double>(table.algorithms.size()));
  for (std::size_t r = 0; r < resamples.size(); ++r) {
    for (std::size_t a = 0; a < table.algorithms.size(); ++a) {
      agg[r][a] = aggregate_of(table.values[a], resamples[r], aggregator);
    }
  }
  return agg;
}

void check_uniform_kind(const std::map<std::string, IndicatorSpec>& specs) {
  for (const auto& [problem, spec] : specs) {
    if (spec.kind != specs.begin()->second.kind) {
      throw ConfigError("per-problem indicator specs must share one kind");
    }
  }
}

void validate_table(const PerformanceTable& table) {
  if (table.algorithms.empty() || table.instances.empty()) {
    throw CoverageError("performance table is empty");
  }
  if (table.values.size() != table.algorithms.size()) {
    throw ConfigError("performance table shape mismatch");
  }
  for (const auto& row : table.values) {
    if (row.size() != table.instances.size()) {
      throw ConfigError("performance table shape mismatch");
    }
  }
}

// Quantile with linear interpolation between order statistics.
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double h = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

Aggregator aggregator_from_string(const std::string& s) {
  if (s == "mean") return Aggregator::mean;
  if (s == "median") return Aggregator::median;
  throw ConfigError("unknown aggregator '" + s + "' (use mean or median)");
}

std::string to_string(Aggregator a) {
  return a == Aggregator::mean ? "mean" : "median";
}

std::vector<double> fractional_ranks(const std::vector<double>& values,
                                     bool maximize) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return maximize ? values[a] > values[b] : values[a] < values[b];
  });
  std::vector<double> ranks(values.size(), 0.0);
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double shared =
        0.5 * static_cast<double>(i + 1 + j);  // average of ranks i+1..j
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = shared;
    i = j;
  }
  return ranks;
}

PerformanceTable performance_table(
    const DataSet& dataset, const std::map<std::string, IndicatorSpec>& specs,
    std::int64_t budget,
    const std::map<std::string, NormalizationBounds>& bounds) {
  if (specs.empty()) throw CoverageError("no indicator specs given");
  check_uniform_kind(specs);
  PerformanceTable table;
  table.algorithms = dataset.algorithms();
  table.instances = dataset.problems();
  table.values.assign(table.algorithms.size(),
                      std::vector<double>(table.instances.size(), 0.0));
  const BudgetGrid grid{{budget}};
  for (std::size_t p = 0; p < table.instances.size(); ++p) {
    auto sit = specs.find(table.instances[p]);
    if (sit == specs.end()) {
      throw CoverageError("no indicator spec for problem " +
                          table.instances[p]);
    }
    table.maximize = is_maximizing(sit->second.kind);
    auto bit = bounds.find(table.instances[p]);
    if (bit == bounds.end()) {
      throw CoverageError("no normalization bounds for problem " +
                          table.instances[p]);
    }
    for (std::size_t a = 0; a < table.algorithms.size(); ++a) {
      const auto runs =
          dataset.runs_for(table.instances[p], table.algorithms[a]);
      if (runs.empty()) {
        throw CoverageError("no runs of algorithm " + table.algorithms[a] +
                            " on problem " + table.instances[p]);
      }
      double sum = 0.0;
      for (std::size_t r : runs) {
        sum += trajectory(dataset.meta(r), dataset.records(r), sit->second,
                          grid, bit->second)
                   .values[0];
      }
      table.values[a][p] = sum / static_cast<double>(runs.size());
    }
  }
  return table;
}

PerformanceTable performance_table(
    const DataSet& dataset, const IndicatorSpec& spec, std::int64_t budget,
    const std::map<std::string, NormalizationBounds>& bounds) {
  std::map<std::string, IndicatorSpec> specs;
  for (const auto& problem : dataset.problems()) specs.emplace(problem, spec);
  return performance_table(dataset, specs, budget, bounds);
}

RankingResult robust_rank(const PerformanceTable& table,
                          const BootstrapConfig& config) {
  validate_table(table);
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw ConfigError("bootstrap alpha must be in (0, 1)");
  }
  const std::size_t k = table.algorithms.size();
  const auto resamples = make_resamples(table.instances.size(), config);
  const auto agg = resample_aggregates(table, resamples, config.aggregator);
  const double n_resamples = static_cast<double>(resamples.size());

  RankingResult result;
  result.algorithms = table.algorithms;
  result.win_fraction.assign(k, std::vector<double>(k, 0.0));
  result.mean_rank.assign(k, 0.0);

  for (const auto& row : agg) {
    auto ranks = fractional_ranks(row, table.maximize);
    for (std::size_t a = 0; a < k; ++a) result.mean_rank[a] += ranks[a];
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        const bool a_better =
            table.maximize ? row[a] > row[b] : row[a] < row[b];
        const bool b_better =
            table.maximize ? row[b] > row[a] : row[b] < row[a];
        result.win_fraction[a][b] += a_better ? 1.0 : (b_better ? 0.0 : 0.5);
        result.win_fraction[b][a] += b_better ? 1.0 : (a_better ? 0.0 : 0.5);
      }
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    result.mean_rank[a] /= n_resamples;
    result.win_fraction[a][a] = 0.5;
    for (std::size_t b = 0; b < k; ++b) {
      if (a != b) result.win_fraction[a][b] /= n_resamples;
    }
  }

  // Seed groups in mean-rank order, then merge every stretch whose head
  // group fails to beat some later member, until the chain is consistent.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (result.mean_rank[a] != result.mean_rank[b]) {
      return result.mean_rank[a] < result.mean_rank[b];
    }
    return table.algorithms[a] < table.algorithms[b];
  });
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i : order) groups.push_back({i});
  const double threshold = 1.0 - config.alpha;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < groups.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < groups.size() && !changed; ++j) {
        bool separated = true;
        for (std::size_t a : groups[i]) {
          for (std::size_t b : groups[j]) {
            if (result.win_fraction[a][b] < threshold) separated = false;
          }
        }
        if (!separated) {
          // Merge groups i..j.
          std::vector<std::size_t> merged;
          for (std::size_t g = i; g <= j; ++g) {
            merged.insert(merged.end(), groups[g].begin(), groups[g].end());
          }
          groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(i),
                       groups.begin() + static_cast<std::ptrdiff_t>(j + 1));
          groups.insert(groups.begin() + static_cast<std::ptrdiff_t>(i),
                        std::move(merged));
          changed = true;
        }
      }
    }
  }
  for (const auto& group : groups) {
    std::vector<std::string> names;
    names.reserve(group.size());
    for (std::size_t a : group) names.push_back(table.algorithms[a]);
    result.groups.push_back(std::move(names));
  }
  return result;
}

std::vector<BootstrapInterval> bootstrap_ci(const PerformanceTable& table,
                                            const BootstrapConfig& config,
                                            double confidence) {
  validate_table(table);
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw ConfigError("bootstrap confidence must be in (0, 1)");
  }
  const auto resamples = make_resamples(table.instances.size(), config);
  const auto agg = resample_aggregates(table, resamples, config.aggregator);
  std::vector<BootstrapInterval> out(table.algorithms.size());
  std::vector<double> column(resamples.size());
  for (std::size_t a = 0; a < table.algorithms.size(); ++a) {
    for (std::size_t r = 0; r < resamples.size(); ++r) column[r] = agg[r][a];
    std::sort(column.begin(), column.end());
    out[a].lo = quantile_sorted(column, (1.0 - confidence) / 2.0);
    out[a].median = quantile_sorted(column, 0.5);
    out[a].hi = quantile_sorted(column, 1.0 - (1.0 - confidence) / 2.0);
  }
  return out;
}

FriedmanResult friedman_cd(
    const DataSet& dataset, const std::map<std::string, IndicatorSpec>& specs,
    std::int64_t budget, double alpha,
    const std::map<std::string, NormalizationBounds>& bounds) {
  if (specs.empty()) throw CoverageError("no indicator specs given");
  check_uniform_kind(specs);
  FriedmanResult result;
  result.algorithms = dataset.algorithms();
  const std::size_t k = result.algorithms.size();
  if (k < 2) throw CoverageError("friedman_cd needs at least 2 algorithms");

  // One block per (problem, run); every algorithm must cover every block.
  const BudgetGrid grid{{budget}};
  bool maximize = true;
  std::map<std::pair<std::string, int>, std::vector<double>> blocks;
  for (std::size_t a = 0; a < k; ++a) {
    for (const auto& problem : dataset.problems()) {
      auto sit = specs.find(problem);
      if (sit == specs.end()) {
        throw CoverageError("no indicator spec for problem " + problem);
      }
      maximize = is_maximizing(sit->second.kind);
      auto bit = bounds.find(problem);
      if (bit == bounds.end()) {
        throw CoverageError("no normalization bounds for problem " + problem);
      }
      const auto runs = dataset.runs_for(problem, result.algorithms[a]);
      if (runs.empty()) {
        throw CoverageError("no runs of algorithm " + result.algorithms[a] +
                            " on problem " + problem);
      }
      for (std::size_t r : runs) {
        auto& row = blocks[{problem, dataset.meta(r).run_id}];
        if (row.size() != a) {
          throw CoverageError("run coverage of problem " + problem +
                              " differs between algorithms");
        }
        row.push_back(trajectory(dataset.meta(r), dataset.records(r),
                                 sit->second, grid, bit->second)
                          .values[0]);
      }
    }
  }
  const std::size_t n_blocks = blocks.size();
  if (n_blocks < 2) throw CoverageError("friedman_cd needs at least 2 blocks");

  result.n_blocks = static_cast<int>(n_blocks);
  result.avg_ranks.assign(k, 0.0);
  for (const auto& [key, row] : blocks) {
    if (row.size() != k) {
      throw CoverageError("block (" + key.first + ", r" +
                          std::to_string(key.second) +
                          ") is missing some algorithm");
    }
    auto ranks = fractional_ranks(row, maximize);
    for (std::size_t a = 0; a < k; ++a) result.avg_ranks[a] += ranks[a];
  }
  for (double& r : result.avg_ranks) r /= static_cast<double>(n_blocks);

  const double kd = static_cast<double>(k);
  const double nd = static_cast<double>(n_blocks);
  double sum_sq = 0.0;
  for (double r : result.avg_ranks) sum_sq += r * r;
  result.statistic = std::max(
      0.0, 12.0 * nd / (kd * (kd + 1.0)) *
               (sum_sq - kd * (kd + 1.0) * (kd + 1.0) / 4.0));
  boost::math::chi_squared dist(kd - 1.0);
  result.p_value = boost::math::cdf(boost::math::complement(dist, result.statistic));
  result.critical_difference =
      studentized_range_q(alpha, static_cast<int>(k)) *
      std::sqrt(kd * (kd + 1.0) / (6.0 * nd));
  return result;
}

FriedmanResult friedman_cd(
    const DataSet& dataset, const IndicatorSpec& spec, std::int64_t budget,
    double alpha, const std::map<std::string, NormalizationBounds>& bounds) {
  std::map<std::string, IndicatorSpec> specs;
  for (const auto& problem : dataset.problems()) specs.emplace(problem, spec);
  return friedman_cd(dataset, specs, budget, alpha, bounds);
}

std::vector<RankingResult> rank_over_time(
    const DataSet& dataset, const std::map<std::string, IndicatorSpec>& specs,
    const BudgetGrid& grid, const BootstrapConfig& config,
    const std::map<std::string, NormalizationBounds>& bounds) {
  std::vector<RankingResult> results;
  results.reserve(grid.budgets.size());
  for (std::int64_t budget : grid.budgets) {
    auto table = performance_table(dataset, specs, budget, bounds);
    auto ranking = robust_rank(table, config);
    ranking.budget = budget;
    results.push_back(std::move(ranking));
  }
  return results;
}

std::vector<RankingResult> rank_over_time(
    const DataSet& dataset, const IndicatorSpec& spec, const BudgetGrid& grid,
    const BootstrapConfig& config,
    const std::map<std::string, NormalizationBounds>& bounds) {
  std::map<std::string, IndicatorSpec> specs;
  for (const auto& problem : dataset.problems()) specs.emplace(problem, spec);
  return rank_over_time(dataset, specs, grid, config, bounds);
}

double studentized_range_q(double alpha, int k) {
  if (k < 2 || k > 20) {
    throw ConfigError("critical-difference table covers 2 <= k <= 20");
  }
  const double* table = nullptr;
  if (std::fabs(alpha - 0.05) < 1e-9) table = kQ005;
  if (std::fabs(alpha - 0.01) < 1e-9) table = kQ001;
  if (std::fabs(alpha - 0.10) < 1e-9) table = kQ010;
  if (!table) {
    throw ConfigError(
        "critical-difference table covers alpha in {0.01, 0.05, 0.10}");
  }
  return table[k - 2];
}

}  // namespace moat
