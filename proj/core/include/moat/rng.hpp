#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace moat {

/// Seedable 64-bit generator with platform-independent output.
///
/// The engine is std::mt19937_64 (its output sequence is fully specified by
/// the standard); all derived quantities (doubles, bounded integers) are
/// produced here by fixed bit manipulation instead of the standard library
/// distributions, whose results are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n), n >= 1. Fixed-point multiply; the bias of
  /// at most n/2^64 is irrelevant for every use in this library.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(gen_()) * n) >> 64);
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 gen_;
};

/// One splitmix64 step; used to combine seed material.
constexpr std::uint64_t mix64(std::uint64_t h, std::uint64_t v) {
  std::uint64_t z = h + 0x9e3779b97f4a7c15ULL + v;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// FNV-1a over the bytes of a string.
constexpr std::uint64_t hash_str(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Documented split rule for per-run seeds:
///   seed' = mix(mix(mix(master, fnv1a(algorithm)), fnv1a(problem)), run).
constexpr std::uint64_t derive_run_seed(std::uint64_t master,
                                        std::string_view algorithm,
                                        std::string_view problem,
                                        std::uint64_t run) {
  return mix64(mix64(mix64(master, hash_str(algorithm)), hash_str(problem)),
               run);
}

}  // namespace moat
