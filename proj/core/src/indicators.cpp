#include "moat/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "moat/errors.hpp"
#include "moat/hypervolume.hpp"
#include "moat/pareto.hpp"

namespace moat {

NormalizationBounds NormalizationBounds::identity(std::size_t m) {
  return {ObjectiveVector(m, 0.0), ObjectiveVector(m, 1.0)};
}

NormalizationBounds compute_bounds(const DataSet& dataset,
                                   const std::string& problem) {
  auto run_ids = dataset.runs_for(problem);
  if (run_ids.empty()) {
    throw CoverageError("problem " + problem + " not present in the data set");
  }
  NormalizationBounds bounds;
  bool first = true;
  for (std::size_t i : run_ids) {
    for (const Solution& s : dataset.records(i)) {
      if (first) {
        bounds.ideal = s.objectives;
        bounds.worst = s.objectives;
        first = false;
        continue;
      }
      for (std::size_t d = 0; d < s.objectives.size(); ++d) {
        bounds.ideal[d] = std::min(bounds.ideal[d], s.objectives[d]);
        bounds.worst[d] = std::max(bounds.worst[d], s.objectives[d]);
      }
    }
  }
  if (first) {
    throw CoverageError("problem " + problem + " has no logged points");
  }
  return bounds;
}

ObjectiveVector normalize(const ObjectiveVector& point,
                          const NormalizationBounds& bounds) {
  if (point.size() != bounds.ideal.size()) {
    throw DimensionError("normalize: point and bounds dimensions differ");
  }
  ObjectiveVector out(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double range = bounds.worst[i] - bounds.ideal[i];
    out[i] = range == 0.0 ? 0.0 : (point[i] - bounds.ideal[i]) / range;
  }
  return out;
}

bool is_maximizing(IndicatorKind kind) {
  return kind == IndicatorKind::hypervolume;
}

std::string to_string(IndicatorKind kind) {
  switch (kind) {
    case IndicatorKind::hypervolume: return "hv";
    case IndicatorKind::igd_plus: return "igdplus";
    case IndicatorKind::r2: return "r2";
    case IndicatorKind::eps_additive: return "epsadd";
    case IndicatorKind::eps_multiplicative: return "epsmul";
  }
  return "hv";
}

IndicatorKind indicator_from_string(const std::string& name) {
  if (name == "hv" || name == "hypervolume") return IndicatorKind::hypervolume;
  if (name == "igdplus" || name == "igd+") return IndicatorKind::igd_plus;
  if (name == "r2") return IndicatorKind::r2;
  if (name == "epsadd") return IndicatorKind::eps_additive;
  if (name == "epsmul") return IndicatorKind::eps_multiplicative;
  throw IndicatorInputError("unknown indicator '" + name + "'");
}

WeightVectorSet generate_weights(std::size_t m, int partitions) {
  if (m < 1) throw DimensionError("generate_weights: m must be positive");
  if (partitions < 1) {
    throw ConfigError("generate_weights: partitions must be at least 1");
  }
  WeightVectorSet set;
  set.utopian = ObjectiveVector(m, 0.0);
  std::vector<int> counts(m, 0);
  // Lexicographic enumeration of all m-tuples summing to `partitions`.
  auto emit = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos + 1 == m) {
      counts[pos] = remaining;
      ObjectiveVector w(m);
      for (std::size_t i = 0; i < m; ++i) {
        w[i] = static_cast<double>(counts[i]) / partitions;
      }
      set.vectors.push_back(std::move(w));
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[pos] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  emit(emit, 0, partitions);
  return set;
}

int partitions_for_weight_count(std::size_t m, std::size_t min_count) {
  for (int p = 1;; ++p) {
    // C(p+m-1, m-1) without overflow worries at realistic sizes.
    double count = 1.0;
    for (std::size_t i = 1; i < m; ++i) {
      count *= static_cast<double>(p + i) / static_cast<double>(i);
    }
    if (count + 0.5 >= static_cast<double>(min_count)) return p;
  }
}

IndicatorSpec IndicatorSpec::hypervolume(ObjectiveVector reference_point) {
  IndicatorSpec spec;
  spec.kind = IndicatorKind::hypervolume;
  spec.reference_point = std::move(reference_point);
  return spec;
}

IndicatorSpec IndicatorSpec::igd_plus(ParetoSet reference_set) {
  IndicatorSpec spec;
  spec.kind = IndicatorKind::igd_plus;
  spec.reference_set = std::move(reference_set);
  return spec;
}

IndicatorSpec IndicatorSpec::r2(WeightVectorSet weights) {
  IndicatorSpec spec;
  spec.kind = IndicatorKind::r2;
  spec.weights = std::move(weights);
  return spec;
}

IndicatorSpec IndicatorSpec::eps_additive(ParetoSet reference_set) {
  IndicatorSpec spec;
  spec.kind = IndicatorKind::eps_additive;
  spec.reference_set = std::move(reference_set);
  return spec;
}

IndicatorSpec IndicatorSpec::eps_multiplicative(ParetoSet reference_set) {
  IndicatorSpec spec;
  spec.kind = IndicatorKind::eps_multiplicative;
  spec.reference_set = std::move(reference_set);
  return spec;
}

ObjectiveVector IndicatorSpec::resolved_reference_point(std::size_t m) const {
  if (reference_point.empty()) return ObjectiveVector(m, 1.1);
  if (reference_point.size() != m) {
    throw DimensionError("reference point has dimension " +
                         std::to_string(reference_point.size()) +
                         ", data has " + std::to_string(m));
  }
  return reference_point;
}

void IndicatorSpec::validate(std::size_t m) const {
  switch (kind) {
    case IndicatorKind::hypervolume:
      (void)resolved_reference_point(m);  // dimension check
      return;
    case IndicatorKind::igd_plus:
    case IndicatorKind::eps_additive:
    case IndicatorKind::eps_multiplicative:
      if (reference_set.empty()) {
        throw IndicatorInputError(to_string(kind) +
                                  " needs a non-empty reference set");
      }
      if (reference_set.points[0].size() != m) {
        throw DimensionError("reference set has dimension " +
                             std::to_string(reference_set.points[0].size()) +
                             ", data has " + std::to_string(m));
      }
      return;
    case IndicatorKind::r2:
      if (weights.vectors.empty()) {
        throw IndicatorInputError("r2 needs a non-empty weight vector set");
      }
      if (weights.vectors[0].size() != m || weights.utopian.size() != m) {
        throw DimensionError("weight vectors must match the data dimension " +
                             std::to_string(m));
      }
      return;
  }
}

double hv_fraction(const std::vector<ObjectiveVector>& points,
                   const NormalizationBounds& bounds) {
  const std::size_t m = bounds.ideal.size();
  std::vector<ObjectiveVector> normalized;
  normalized.reserve(points.size());
  for (const auto& p : points) normalized.push_back(normalize(p, bounds));
  const ObjectiveVector ref(m, 1.1);
  return hypervolume(normalized, ref) / std::pow(1.1, static_cast<double>(m));
}

namespace {

void check_nonempty_pair(const std::vector<ObjectiveVector>& a,
                         const ParetoSet& r, const char* name) {
  if (a.empty() || r.empty()) {
    throw IndicatorInputError(std::string(name) +
                              ": both point set and reference set must be "
                              "non-empty");
  }
  if (a[0].size() != r.points[0].size()) {
    throw DimensionError(std::string(name) + ": dimension mismatch");
  }
}

}  // namespace

double igd_plus(const std::vector<ObjectiveVector>& points,
                const ParetoSet& reference) {
  check_nonempty_pair(points, reference, "igd_plus");
  double total = 0.0;
  for (const auto& z : reference.points) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : points) {
      double sq = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) {
        const double d = std::max(a[i] - z[i], 0.0);
        sq += d * d;
      }
      best = std::min(best, sq);
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(reference.size());
}

double epsilon_additive(const std::vector<ObjectiveVector>& a,
                        const ParetoSet& r) {
  check_nonempty_pair(a, r, "epsilon_additive");
  double eps = -std::numeric_limits<double>::infinity();
  for (const auto& ref : r.points) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : a) {
      double shift = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < ref.size(); ++i) {
        shift = std::max(shift, p[i] - ref[i]);
      }
      best = std::min(best, shift);
    }
    eps = std::max(eps, best);
  }
  return eps;
}

double epsilon_multiplicative(const std::vector<ObjectiveVector>& a,
                              const ParetoSet& r) {
  check_nonempty_pair(a, r, "epsilon_multiplicative");
  auto check_positive = [](const ObjectiveVector& p) {
    for (double v : p) {
      if (!(v > 0.0)) {
        throw IndicatorInputError(
            "epsilon_multiplicative requires strictly positive coordinates");
      }
    }
  };
  for (const auto& p : a) check_positive(p);
  for (const auto& p : r.points) check_positive(p);
  double eps = -std::numeric_limits<double>::infinity();
  for (const auto& ref : r.points) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : a) {
      double factor = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < ref.size(); ++i) {
        factor = std::max(factor, p[i] / ref[i]);
      }
      best = std::min(best, factor);
    }
    eps = std::max(eps, best);
  }
  return eps;
}

double r2(const std::vector<ObjectiveVector>& points,
          const WeightVectorSet& weights) {
  if (weights.vectors.empty()) {
    throw IndicatorInputError("r2: empty weight vector set");
  }
  if (points.empty()) {
    throw IndicatorInputError("r2: empty point set");
  }
  if (points[0].size() != weights.vectors[0].size() ||
      weights.utopian.size() != points[0].size()) {
    throw DimensionError("r2: dimension mismatch");
  }
  double total = 0.0;
  for (const auto& w : weights.vectors) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : points) {
      double util = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < w.size(); ++i) {
        util = std::max(util, w[i] * std::fabs(a[i] - weights.utopian[i]));
      }
      best = std::min(best, util);
    }
    total += best;
  }
  return total / static_cast<double>(weights.vectors.size());
}

}  // namespace moat
