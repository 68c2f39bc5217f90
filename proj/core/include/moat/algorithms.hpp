#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "moat/problems.hpp"
#include "moat/rng.hpp"
#include "moat/types.hpp"

namespace moat {

/// Receives every evaluated solution in evaluation order.
using SolutionSink = std::function<void(const Solution&)>;

/// budget i.i.d. uniform samples within bounds (uniform bits for bitstring
/// problems), evaluated in order, eval_index 1..budget.
void random_search(const ProblemSpec& problem, std::int64_t budget, Rng& rng,
                   const SolutionSink& sink);

/// Operator constants of the NSGA-II baseline. Continuous problems use SBX
/// and polynomial mutation (p_m = 1/n); bitstring problems use uniform
/// crossover and per-bit flips (p = 1/total bits).
struct Nsga2Params {
  int mu = 100;
  double crossover_prob = 0.9;
  double eta_crossover = 15.0;
  double eta_mutation = 20.0;
};

/// Generational NSGA-II baseline: uniform initialization of mu individuals,
/// then binary-tournament selection on (rank, crowding distance), variation,
/// and (mu+mu) environmental selection, emitting every evaluation until the
/// budget is exhausted. A generation left incomplete by the budget does not
/// replace the population. Throws ConfigError when budget < mu.
/// `final_population`, when given, receives the population held at
/// termination (the last completed environmental selection).
void nsga2_baseline(const ProblemSpec& problem, const Nsga2Params& params,
                    std::int64_t budget, Rng& rng, const SolutionSink& sink,
                    std::vector<Solution>* final_population = nullptr);

/// The (mu+mu) survivor rule of the baseline: non-dominated sorting with
/// crowding-distance truncation of the last front, crowding ties broken by
/// lower eval_index. Returns the selected indices sorted by eval_index.
/// Exposed so final populations can be reconstructed from logs by replay.
std::vector<std::size_t> nsga2_environmental_selection(
    const std::vector<ObjectiveVector>& objectives,
    const std::vector<std::int64_t>& eval_index, std::size_t mu);

}  // namespace moat
