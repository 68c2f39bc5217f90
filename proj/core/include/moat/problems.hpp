#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moat/types.hpp"

namespace moat {

/// A benchmark problem instance (minimization). Continuous problems carry
/// per-variable box bounds; bitstring problems carry per-variable bit
/// lengths and take a flat 0/1 vector of total_bits() entries.
struct ProblemSpec {
  std::string name;
  int n = 0;  // decision variables
  int m = 2;  // objectives
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<int> bit_lengths;
  /// Per-objective offset subtracted after evaluation so every objective's
  /// single-objective minimum is 0.
  ObjectiveVector translation;

  [[nodiscard]] bool is_bitstring() const { return !bit_lengths.empty(); }
  [[nodiscard]] int total_bits() const;
};

/// Builds ZDT1-ZDT6, DTLZ1, DTLZ2 or DTLZ7 with canonical dimensions
/// (ZDT1-3: n=30, ZDT4/6: n=10, ZDT5: 11 variables of 30+10x5 bits,
/// DTLZ1: n=7, DTLZ2: n=12, DTLZ7: n=22), or with an explicit n.
/// Throws ConfigError on unknown names or invalid dimensions.
ProblemSpec make_problem(const std::string& name,
                         std::optional<int> n = std::nullopt);

/// Evaluates the problem at x (length n, within bounds; for bitstring
/// problems length total_bits() with 0/1 entries) and applies the
/// translation. Throws ConfigError on domain violations.
ObjectiveVector evaluate(const ProblemSpec& problem, std::span<const double> x);

}  // namespace moat
