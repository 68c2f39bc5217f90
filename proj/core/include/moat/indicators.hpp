#pragma once

#include <string>
#include <vector>

#include "moat/logging.hpp"
#include "moat/types.hpp"

namespace moat {

/// Per-problem min-max normalization bounds (ideal and worst attained point
/// across all runs of the problem).
struct NormalizationBounds {
  ObjectiveVector ideal;
  ObjectiveVector worst;

  /// Bounds that make normalize() the identity (ideal 0, worst 1).
  static NormalizationBounds identity(std::size_t m);
};

/// Componentwise min/max over every logged objective vector of `problem`
/// across all runs and algorithms in the data set.
NormalizationBounds compute_bounds(const DataSet& dataset,
                                   const std::string& problem);

/// y_i = (f_i - ideal_i) / (worst_i - ideal_i); a degenerate coordinate
/// (worst == ideal) maps to 0.
ObjectiveVector normalize(const ObjectiveVector& point,
                          const NormalizationBounds& bounds);

enum class IndicatorKind { hypervolume, igd_plus, r2, eps_additive, eps_multiplicative };

/// Hypervolume is maximized; every other indicator is minimized.
bool is_maximizing(IndicatorKind kind);

std::string to_string(IndicatorKind kind);
IndicatorKind indicator_from_string(const std::string& name);

/// Tchebycheff weight vectors plus the utopian point they are anchored at.
struct WeightVectorSet {
  std::vector<ObjectiveVector> vectors;
  ObjectiveVector utopian;
};

/// Simplex-lattice design: all m-tuples of nonnegative integers summing to
/// `partitions`, divided by `partitions`. C(partitions+m-1, m-1) vectors.
/// The utopian point defaults to the origin (the normalized ideal).
WeightVectorSet generate_weights(std::size_t m, int partitions);

/// Smallest partition count whose lattice has at least `min_count` vectors.
int partitions_for_weight_count(std::size_t m, std::size_t min_count);

/// Which indicator to compute plus its problem-specific inputs. Reference
/// sets are given in raw objective space and are normalized alongside the
/// data; the reference point and utopian point live in normalized space.
struct IndicatorSpec {
  IndicatorKind kind = IndicatorKind::hypervolume;
  ObjectiveVector reference_point;  // empty: 1.1 in every coordinate
  ParetoSet reference_set;
  WeightVectorSet weights;

  static IndicatorSpec hypervolume(ObjectiveVector reference_point = {});
  static IndicatorSpec igd_plus(ParetoSet reference_set);
  static IndicatorSpec r2(WeightVectorSet weights);
  static IndicatorSpec eps_additive(ParetoSet reference_set);
  static IndicatorSpec eps_multiplicative(ParetoSet reference_set);

  /// Reference point resolved to dimension m (default 1.1 repeated).
  [[nodiscard]] ObjectiveVector resolved_reference_point(std::size_t m) const;

  /// Throws IndicatorInputError when the inputs required by kind are absent.
  void validate(std::size_t m) const;
};

/// Hypervolume of the normalized points with reference [1.1]^m, divided by
/// 1.1^m (the volume between the normalized ideal and the reference point).
double hv_fraction(const std::vector<ObjectiveVector>& points,
                   const NormalizationBounds& bounds);

/// Mean over z in `reference` of min over a in `points` of the dominance-
/// aware distance sqrt(sum_i max(a_i - z_i, 0)^2).
double igd_plus(const std::vector<ObjectiveVector>& points,
                const ParetoSet& reference);

/// max over r in R of min over a in A of max_i (a_i - r_i).
double epsilon_additive(const std::vector<ObjectiveVector>& a,
                        const ParetoSet& r);

/// max over r in R of min over a in A of max_i (a_i / r_i). All coordinates
/// of both sets must be strictly positive.
double epsilon_multiplicative(const std::vector<ObjectiveVector>& a,
                              const ParetoSet& r);

/// (1/|W|) sum over w of min over a of max_i w_i * |a_i - utopian_i|.
double r2(const std::vector<ObjectiveVector>& points,
          const WeightVectorSet& weights);

}  // namespace moat
