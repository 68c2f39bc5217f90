#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "moat/anytime.hpp"
#include "moat/indicators.hpp"
#include "moat/logging.hpp"

namespace moat {

enum class Aggregator { mean, median };

Aggregator aggregator_from_string(const std::string& s);
std::string to_string(Aggregator a);

struct BootstrapConfig {
  int n_samples = 10000;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  Aggregator aggregator = Aggregator::mean;
};

/// algorithm x instance matrix of mean-over-runs indicator values at one
/// budget, plus the optimization direction of the indicator.
struct PerformanceTable {
  std::vector<std::string> algorithms;
  std::vector<std::string> instances;
  std::vector<std::vector<double>> values;  // [algorithm][instance]
  bool maximize = true;
};

/// Builds the table from a data set: cell (a, p) is the mean over runs of
/// the trajectory value at `budget`. Throws CoverageError naming the first
/// missing (algorithm, problem) cell. The map overload supplies one spec per
/// problem (reference sets are problem-specific).
PerformanceTable performance_table(
    const DataSet& dataset, const IndicatorSpec& spec, std::int64_t budget,
    const std::map<std::string, NormalizationBounds>& bounds);
PerformanceTable performance_table(
    const DataSet& dataset, const std::map<std::string, IndicatorSpec>& specs,
    std::int64_t budget,
    const std::map<std::string, NormalizationBounds>& bounds);

/// Ordered groups of statistically tied algorithms at one budget.
struct RankingResult {
  std::int64_t budget = 0;
  std::vector<std::string> algorithms;             // matrix order
  std::vector<std::vector<double>> win_fraction;   // [a][b], diagonal 0.5
  std::vector<double> mean_rank;                   // mean aggregate rank
  std::vector<std::vector<std::string>> groups;    // best group first
};

/// Bootstrap robust ranking. Resamples the instance set uniformly with
/// replacement (n_samples draws, seeded); when every possible resample fits
/// inside n_samples (m^m <= n_samples for m instances) the full enumeration
/// is used instead, which makes the win fractions exact. Algorithm a beats b
/// significantly when win_fraction(a, b) >= 1 - alpha; exact aggregate ties
/// contribute 0.5 to both sides. Groups are built over the mean-aggregate-
/// rank order and merged until every algorithm of an earlier group beats
/// every algorithm of every later group.
RankingResult robust_rank(const PerformanceTable& table,
                          const BootstrapConfig& config);

/// Percentile interval and median of each algorithm's per-resample
/// aggregates (linear-interpolation quantiles); shares the resamples of
/// robust_rank under an equal seed.
struct BootstrapInterval {
  double lo = 0, median = 0, hi = 0;
};
std::vector<BootstrapInterval> bootstrap_ci(const PerformanceTable& table,
                                            const BootstrapConfig& config,
                                            double confidence);

/// Friedman test over (problem, run) blocks plus the Nemenyi critical
/// difference at the given alpha.
struct FriedmanResult {
  std::vector<std::string> algorithms;
  std::vector<double> avg_ranks;
  int n_blocks = 0;
  double statistic = 0;
  double p_value = 1;
  double critical_difference = 0;
};

FriedmanResult friedman_cd(
    const DataSet& dataset, const IndicatorSpec& spec, std::int64_t budget,
    double alpha, const std::map<std::string, NormalizationBounds>& bounds);
FriedmanResult friedman_cd(
    const DataSet& dataset, const std::map<std::string, IndicatorSpec>& specs,
    std::int64_t budget, double alpha,
    const std::map<std::string, NormalizationBounds>& bounds);

/// One RankingResult per grid budget, reusing the identical seed per budget.
std::vector<RankingResult> rank_over_time(
    const DataSet& dataset, const IndicatorSpec& spec, const BudgetGrid& grid,
    const BootstrapConfig& config,
    const std::map<std::string, NormalizationBounds>& bounds);
std::vector<RankingResult> rank_over_time(
    const DataSet& dataset, const std::map<std::string, IndicatorSpec>& specs,
    const BudgetGrid& grid, const BootstrapConfig& config,
    const std::map<std::string, NormalizationBounds>& bounds);

/// Critical values of the two-tailed Nemenyi test (studentized range over
/// sqrt(2), infinite degrees of freedom), embedded for alpha in
/// {0.01, 0.05, 0.10} and k in [2, 20].
double studentized_range_q(double alpha, int k);

/// Direction-aware fractional ranks: the best value gets rank 1, exact ties
/// share the average of their ranks.
std::vector<double> fractional_ranks(const std::vector<double>& values,
                                     bool maximize);

}  // namespace moat
