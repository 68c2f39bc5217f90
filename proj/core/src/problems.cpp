#include "moat/problems.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "moat/errors.hpp"

namespace moat {

namespace {

constexpr double kPi = std::numbers::pi;

// Interior argmin of 1 - sqrt(x) - x*sin(10*pi*x) on [0,1] (ZDT3's second
// objective with g = 1); found numerically, accurate to full precision.
constexpr double kZdt3F2ArgMin = 0.8518328654364139;

// Interior argmax of t*(1 + sin(3*pi*t)) on [0,1] (DTLZ7 position term).
constexpr double kDtlz7ArgMax = 0.8594008566447239;

double sum_tail(std::span<const double> x, std::size_t from) {
  double s = 0.0;
  for (std::size_t i = from; i < x.size(); ++i) s += x[i];
  return s;
}

ObjectiveVector raw_zdt(const ProblemSpec& p, std::span<const double> x) {
  const std::size_t n = x.size();
  const double f1_linear = x[0];
  if (p.name == "ZDT1" || p.name == "ZDT2" || p.name == "ZDT3") {
    const double g = 1.0 + 9.0 * sum_tail(x, 1) / static_cast<double>(n - 1);
    if (p.name == "ZDT1") {
      return {f1_linear, g * (1.0 - std::sqrt(f1_linear / g))};
    }
    if (p.name == "ZDT2") {
      const double ratio = f1_linear / g;
      return {f1_linear, g * (1.0 - ratio * ratio)};
    }
    return {f1_linear,
            g * (1.0 - std::sqrt(f1_linear / g) -
                 (f1_linear / g) * std::sin(10.0 * kPi * f1_linear))};
  }
  if (p.name == "ZDT4") {
    double g = 1.0 + 10.0 * static_cast<double>(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      g += x[i] * x[i] - 10.0 * std::cos(4.0 * kPi * x[i]);
    }
    return {f1_linear, g * (1.0 - std::sqrt(f1_linear / g))};
  }
  if (p.name == "ZDT6") {
    const double s = std::sin(6.0 * kPi * x[0]);
    const double f1 = 1.0 - std::exp(-4.0 * x[0]) * std::pow(s, 6.0);
    const double g =
        1.0 + 9.0 * std::pow(sum_tail(x, 1) / static_cast<double>(n - 1), 0.25);
    const double ratio = f1 / g;
    return {f1, g * (1.0 - ratio * ratio)};
  }
  throw ConfigError("unknown problem '" + p.name + "'");
}

ObjectiveVector raw_zdt5(const ProblemSpec& p, std::span<const double> bits) {
  std::size_t offset = 0;
  std::vector<int> ones(p.bit_lengths.size(), 0);
  for (std::size_t v = 0; v < p.bit_lengths.size(); ++v) {
    for (int b = 0; b < p.bit_lengths[v]; ++b) {
      ones[v] += bits[offset++] != 0.0 ? 1 : 0;
    }
  }
  const double f1 = 1.0 + static_cast<double>(ones[0]);
  double g = 0.0;
  for (std::size_t v = 1; v < ones.size(); ++v) {
    g += ones[v] < p.bit_lengths[v] ? 2.0 + static_cast<double>(ones[v]) : 1.0;
  }
  return {f1, g / f1};
}

ObjectiveVector raw_dtlz(const ProblemSpec& p, std::span<const double> x) {
  const std::size_t m = static_cast<std::size_t>(p.m);
  const std::size_t k = x.size() - m + 1;
  ObjectiveVector f(m);
  if (p.name == "DTLZ1") {
    double g = static_cast<double>(k);
    for (std::size_t i = m - 1; i < x.size(); ++i) {
      const double d = x[i] - 0.5;
      g += d * d - std::cos(20.0 * kPi * d);
    }
    g *= 100.0;
    for (std::size_t j = 0; j < m; ++j) {
      double v = 0.5 * (1.0 + g);
      for (std::size_t i = 0; i + j + 1 < m; ++i) v *= x[i];
      if (j > 0) v *= 1.0 - x[m - 1 - j];
      f[j] = v;
    }
    return f;
  }
  if (p.name == "DTLZ2") {
    double g = 0.0;
    for (std::size_t i = m - 1; i < x.size(); ++i) {
      const double d = x[i] - 0.5;
      g += d * d;
    }
    for (std::size_t j = 0; j < m; ++j) {
      double v = 1.0 + g;
      for (std::size_t i = 0; i + j + 1 < m; ++i) v *= std::cos(x[i] * kPi / 2.0);
      if (j > 0) v *= std::sin(x[m - 1 - j] * kPi / 2.0);
      f[j] = v;
    }
    return f;
  }
  if (p.name == "DTLZ7") {
    const double g =
        1.0 + 9.0 * sum_tail(x, m - 1) / static_cast<double>(k);
    double h = static_cast<double>(m);
    for (std::size_t j = 0; j + 1 < m; ++j) {
      f[j] = x[j];
      h -= f[j] / (1.0 + g) * (1.0 + std::sin(3.0 * kPi * f[j]));
    }
    f[m - 1] = (1.0 + g) * h;
    return f;
  }
  throw ConfigError("unknown problem '" + p.name + "'");
}

ObjectiveVector raw_evaluate(const ProblemSpec& p, std::span<const double> x) {
  if (p.is_bitstring()) return raw_zdt5(p, x);
  if (p.name.rfind("ZDT", 0) == 0) return raw_zdt(p, x);
  return raw_dtlz(p, x);
}

int default_n(const std::string& name) {
  if (name == "ZDT1" || name == "ZDT2" || name == "ZDT3") return 30;
  if (name == "ZDT4" || name == "ZDT6") return 10;
  if (name == "ZDT5") return 11;
  if (name == "DTLZ1") return 7;
  if (name == "DTLZ2") return 12;
  if (name == "DTLZ7") return 22;
  throw ConfigError("unknown problem '" + name + "'");
}

ObjectiveVector compute_translation(const ProblemSpec& p) {
  // Offsets are the raw single-objective minima, evaluated at the known
  // minimizers so the translated minimum is exactly 0.
  if (p.name == "ZDT3") {
    std::vector<double> x(static_cast<std::size_t>(p.n), 0.0);
    x[0] = kZdt3F2ArgMin;
    return {0.0, raw_evaluate(p, x)[1]};
  }
  if (p.name == "ZDT6") {
    std::vector<double> x(static_cast<std::size_t>(p.n), 0.0);
    x[0] = std::atan(9.0 * kPi) / (6.0 * kPi);
    return {raw_evaluate(p, x)[0], 0.0};
  }
  if (p.name == "ZDT5") {
    // f1 is minimal with all head bits cleared; f2 = g/f1 is minimal with
    // every bit set (g at its floor, f1 at its ceiling).
    std::vector<double> ones(static_cast<std::size_t>(p.total_bits()), 1.0);
    return {1.0, raw_evaluate(p, ones)[1]};
  }
  if (p.name == "DTLZ7") {
    std::vector<double> x(static_cast<std::size_t>(p.n), 0.0);
    x[0] = kDtlz7ArgMax;
    x[1] = kDtlz7ArgMax;
    ObjectiveVector t(static_cast<std::size_t>(p.m), 0.0);
    t[p.m - 1] = raw_evaluate(p, x)[p.m - 1];
    return t;
  }
  return ObjectiveVector(static_cast<std::size_t>(p.m), 0.0);
}

}  // namespace

int ProblemSpec::total_bits() const {
  return std::accumulate(bit_lengths.begin(), bit_lengths.end(), 0);
}

ProblemSpec make_problem(const std::string& name, std::optional<int> n) {
  ProblemSpec p;
  p.name = name;
  p.n = n.value_or(default_n(name));
  if (p.n < 2) throw ConfigError(name + ": n must be at least 2");
  p.m = name.rfind("DTLZ", 0) == 0 ? 3 : 2;

  if (name == "ZDT5") {
    // First variable 30 bits, the others 5 bits each.
    p.bit_lengths.assign(static_cast<std::size_t>(p.n), 5);
    p.bit_lengths[0] = 30;
  } else if (name == "ZDT4") {
    p.lower.assign(static_cast<std::size_t>(p.n), -5.0);
    p.upper.assign(static_cast<std::size_t>(p.n), 5.0);
    p.lower[0] = 0.0;
    p.upper[0] = 1.0;
  } else {
    p.lower.assign(static_cast<std::size_t>(p.n), 0.0);
    p.upper.assign(static_cast<std::size_t>(p.n), 1.0);
  }
  if (name.rfind("DTLZ", 0) == 0 && p.n < p.m) {
    throw ConfigError(name + ": n must be at least the objective count");
  }
  p.translation = compute_translation(p);
  return p;
}

ObjectiveVector evaluate(const ProblemSpec& problem, std::span<const double> x) {
  if (problem.is_bitstring()) {
    if (x.size() != static_cast<std::size_t>(problem.total_bits())) {
      throw ConfigError(problem.name + ": expected " +
                        std::to_string(problem.total_bits()) + " bits, got " +
                        std::to_string(x.size()));
    }
    for (double b : x) {
      if (b != 0.0 && b != 1.0) {
        throw ConfigError(problem.name + ": bits must be 0 or 1");
      }
    }
  } else {
    if (x.size() != static_cast<std::size_t>(problem.n)) {
      throw ConfigError(problem.name + ": expected " +
                        std::to_string(problem.n) + " variables, got " +
                        std::to_string(x.size()));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(x[i] >= problem.lower[i] && x[i] <= problem.upper[i])) {
        throw ConfigError(problem.name + ": variable " + std::to_string(i + 1) +
                          " out of bounds");
      }
    }
  }
  ObjectiveVector f = raw_evaluate(problem, x);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] -= problem.translation[i];
  return f;
}

}  // namespace moat
