#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "moat/indicators.hpp"
#include "moat/logging.hpp"
#include "moat/types.hpp"

namespace moat {

struct BudgetGrid {
  std::vector<std::int64_t> budgets;  // strictly increasing, deduplicated
};

enum class GridScale { log, linear };

GridScale grid_scale_from_string(const std::string& s);

/// count points rounded from a log- or linearly spaced range, endpoints
/// included, deduplicated. Requires 1 <= lo < hi and count >= 2.
BudgetGrid make_budget_grid(std::int64_t lo, std::int64_t hi, int count,
                            GridScale scale);

/// Anytime indicator values of one run at the grid budgets.
struct TrajectorySeries {
  IndicatorKind kind = IndicatorKind::hypervolume;
  std::vector<std::int64_t> budgets;
  std::vector<double> values;
};

/// Indicator of the non-dominated subset of the records with
/// eval_index <= budget, in normalized space, for each grid budget. The
/// indicator's reference set is normalized alongside the data; the
/// reference point and utopian point are already in normalized space.
/// Budgets beyond the run's records evaluate the full archive. Budgets
/// before the first record give 0 for hypervolume and +infinity for the
/// minimized indicators.
///
/// Values over a cumulative archive are mathematically monotone (HV
/// non-decreasing, the rest non-increasing); the implementation pins the
/// computed sequence to that, absorbing sub-ulp rounding asymmetries
/// between consecutive front recomputations.
TrajectorySeries trajectory(const RunArchive& run, const IndicatorSpec& spec,
                            const BudgetGrid& grid,
                            const NormalizationBounds& bounds);

/// Same computation without materializing a RunArchive; heavy callers pass
/// the DataSet's record storage by reference.
TrajectorySeries trajectory(const RunMeta& meta,
                            const std::vector<Solution>& records,
                            const IndicatorSpec& spec, const BudgetGrid& grid,
                            const NormalizationBounds& bounds);

/// Mean and Student-t confidence band across runs, per budget.
struct AggregatedCurve {
  std::vector<std::int64_t> budgets;
  std::vector<double> mean;
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Per budget: sample mean and the two-sided Student-t interval
/// mean +- t_{(1-confidence)/2, n-1} * s / sqrt(n). One series collapses the
/// band onto the mean. All series must share the same budget grid.
AggregatedCurve aggregate(const std::vector<TrajectorySeries>& series,
                          double confidence);

/// Target-free ECDF aggregation: per algorithm and budget, the mean over all
/// (problem, run) cells of the hypervolume fraction of the archive prefix.
struct EcdfCurves {
  std::vector<std::int64_t> budgets;
  std::vector<std::string> algorithms;
  std::vector<std::vector<double>> values;  // [algorithm][budget], in [0,1]
};

EcdfCurves ecdf(const DataSet& dataset, const BudgetGrid& grid,
                const std::map<std::string, NormalizationBounds>& bounds);

/// The population held by the generating algorithm at termination. For the
/// NSGA-II baseline (algorithm name starting with "nsga2") the environmental
/// selection is replayed over the logged stream; anything else falls back to
/// the last mu records. Requires store_mode=all and at least mu records.
std::vector<Solution> final_population(const RunArchive& run, std::size_t mu);

}  // namespace moat
