#include "moat/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "moat/errors.hpp"
#include "moat/pareto.hpp"

namespace moat {

namespace {

std::vector<double> sample_uniform(const ProblemSpec& p, Rng& rng) {
  if (p.is_bitstring()) {
    std::vector<double> bits(static_cast<std::size_t>(p.total_bits()));
    for (double& b : bits) b = rng.bernoulli(0.5) ? 1.0 : 0.0;
    return bits;
  }
  std::vector<double> x(static_cast<std::size_t>(p.n));
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.uniform(p.lower[i], p.upper[i]);
  }
  return x;
}

// Fast non-dominated sort; returns the 0-based rank of each point.
std::vector<int> nondomination_ranks(
    const std::vector<ObjectiveVector>& objectives) {
  const std::size_t n = objectives.size();
  std::vector<int> rank(n, 0);
  std::vector<int> dominated_by(n, 0);
  std::vector<std::vector<std::size_t>> dominating(n);
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(objectives[i], objectives[j])) {
        dominating[i].push_back(j);
        ++dominated_by[j];
      } else if (dominates(objectives[j], objectives[i])) {
        dominating[j].push_back(i);
        ++dominated_by[i];
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dominated_by[i] == 0) current.push_back(i);
  }
  int level = 0;
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      rank[i] = level;
      for (std::size_t j : dominating[i]) {
        if (--dominated_by[j] == 0) next.push_back(j);
      }
    }
    current = std::move(next);
    ++level;
  }
  return rank;
}

// Crowding distance within one front (of member indices). Deterministic:
// per-objective ordering ties are broken by eval_index.
std::vector<double> crowding_distances(
    const std::vector<ObjectiveVector>& objectives,
    const std::vector<std::int64_t>& eval_index,
    const std::vector<std::size_t>& front) {
  const std::size_t k = front.size();
  std::vector<double> crowd(k, 0.0);
  if (k <= 2) {
    std::fill(crowd.begin(), crowd.end(),
              std::numeric_limits<double>::infinity());
    return crowd;
  }
  const std::size_t m = objectives[front[0]].size();
  std::vector<std::size_t> order(k);
  for (std::size_t d = 0; d < m; ++d) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double va = objectives[front[a]][d];
      const double vb = objectives[front[b]][d];
      if (va != vb) return va < vb;
      return eval_index[front[a]] < eval_index[front[b]];
    });
    const double lo = objectives[front[order.front()]][d];
    const double hi = objectives[front[order.back()]][d];
    crowd[order.front()] = std::numeric_limits<double>::infinity();
    crowd[order.back()] = std::numeric_limits<double>::infinity();
    if (hi == lo) continue;
    for (std::size_t i = 1; i + 1 < k; ++i) {
      crowd[order[i]] += (objectives[front[order[i + 1]]][d] -
                          objectives[front[order[i - 1]]][d]) /
                         (hi - lo);
    }
  }
  return crowd;
}

struct Individual {
  std::vector<double> x;
  ObjectiveVector f;
  std::int64_t eval_index = 0;
};

// Rank and crowding of a population, for tournament selection.
struct Fitness {
  std::vector<int> rank;
  std::vector<double> crowd;
};

Fitness assess(const std::vector<Individual>& pop) {
  std::vector<ObjectiveVector> objs(pop.size());
  std::vector<std::int64_t> evals(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    objs[i] = pop[i].f;
    evals[i] = pop[i].eval_index;
  }
  Fitness fit;
  fit.rank = nondomination_ranks(objs);
  fit.crowd.assign(pop.size(), 0.0);
  std::vector<std::vector<std::size_t>> fronts;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    const std::size_t level = static_cast<std::size_t>(fit.rank[i]);
    if (fronts.size() <= level) fronts.resize(level + 1);
    fronts[level].push_back(i);
  }
  for (const auto& front : fronts) {
    auto cd = crowding_distances(objs, evals, front);
    for (std::size_t i = 0; i < front.size(); ++i) fit.crowd[front[i]] = cd[i];
  }
  return fit;
}

// (rank asc, crowding desc, eval_index asc); eval_index is unique, so the
// order is total.
bool fitter(const Fitness& fit, const std::vector<Individual>& pop,
            std::size_t a, std::size_t b) {
  if (fit.rank[a] != fit.rank[b]) return fit.rank[a] < fit.rank[b];
  if (fit.crowd[a] != fit.crowd[b]) return fit.crowd[a] > fit.crowd[b];
  return pop[a].eval_index < pop[b].eval_index;
}

void sbx_crossover(const ProblemSpec& p, const Nsga2Params& params, Rng& rng,
                   std::vector<double>& c1, std::vector<double>& c2) {
  const double eta = params.eta_crossover;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    if (!rng.bernoulli(0.5)) continue;
    const double a = c1[i];
    const double b = c2[i];
    if (std::fabs(a - b) < 1e-14) continue;
    const double u = rng.uniform01();
    const double beta =
        u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                 : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
    double v1 = 0.5 * ((1.0 + beta) * a + (1.0 - beta) * b);
    double v2 = 0.5 * ((1.0 - beta) * a + (1.0 + beta) * b);
    c1[i] = std::clamp(v1, p.lower[i], p.upper[i]);
    c2[i] = std::clamp(v2, p.lower[i], p.upper[i]);
  }
}

void polynomial_mutation(const ProblemSpec& p, const Nsga2Params& params,
                         Rng& rng, std::vector<double>& x) {
  const double eta = params.eta_mutation;
  const double pm = 1.0 / static_cast<double>(p.n);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!rng.bernoulli(pm)) continue;
    const double lo = p.lower[i];
    const double hi = p.upper[i];
    const double span = hi - lo;
    const double u = rng.uniform01();
    double dq;
    if (u <= 0.5) {
      const double d1 = (x[i] - lo) / span;
      dq = std::pow(2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0),
                    1.0 / (eta + 1.0)) -
           1.0;
    } else {
      const double d2 = (hi - x[i]) / span;
      dq = 1.0 - std::pow(2.0 * (1.0 - u) +
                              2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0),
                          1.0 / (eta + 1.0));
    }
    x[i] = std::clamp(x[i] + dq * span, lo, hi);
  }
}

void uniform_bit_crossover(Rng& rng, std::vector<double>& c1,
                           std::vector<double>& c2) {
  for (std::size_t i = 0; i < c1.size(); ++i) {
    if (rng.bernoulli(0.5)) std::swap(c1[i], c2[i]);
  }
}

void bitflip_mutation(Rng& rng, std::vector<double>& bits) {
  const double pm = 1.0 / static_cast<double>(bits.size());
  for (double& b : bits) {
    if (rng.bernoulli(pm)) b = b == 0.0 ? 1.0 : 0.0;
  }
}

}  // namespace

void random_search(const ProblemSpec& problem, std::int64_t budget, Rng& rng,
                   const SolutionSink& sink) {
  if (budget < 1) throw ConfigError("random_search: budget must be positive");
  for (std::int64_t e = 1; e <= budget; ++e) {
    Solution s;
    s.eval_index = e;
    s.decision = sample_uniform(problem, rng);
    s.objectives = evaluate(problem, s.decision);
    sink(s);
  }
}

std::vector<std::size_t> nsga2_environmental_selection(
    const std::vector<ObjectiveVector>& objectives,
    const std::vector<std::int64_t>& eval_index, std::size_t mu) {
  if (objectives.size() < mu) {
    throw ConfigError("environmental selection needs at least mu candidates");
  }
  auto ranks = nondomination_ranks(objectives);
  std::vector<std::vector<std::size_t>> fronts;
  for (std::size_t i = 0; i < objectives.size(); ++i) {
    const std::size_t level = static_cast<std::size_t>(ranks[i]);
    if (fronts.size() <= level) fronts.resize(level + 1);
    fronts[level].push_back(i);
  }
  std::vector<std::size_t> selected;
  selected.reserve(mu);
  for (const auto& front : fronts) {
    if (selected.size() + front.size() <= mu) {
      selected.insert(selected.end(), front.begin(), front.end());
      if (selected.size() == mu) break;
      continue;
    }
    auto cd = crowding_distances(objectives, eval_index, front);
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (cd[a] != cd[b]) return cd[a] > cd[b];
      return eval_index[front[a]] < eval_index[front[b]];
    });
    for (std::size_t i = 0; selected.size() < mu; ++i) {
      selected.push_back(front[order[i]]);
    }
    break;
  }
  std::sort(selected.begin(), selected.end(),
            [&](std::size_t a, std::size_t b) {
              return eval_index[a] < eval_index[b];
            });
  return selected;
}

void nsga2_baseline(const ProblemSpec& problem, const Nsga2Params& params,
                    std::int64_t budget, Rng& rng, const SolutionSink& sink,
                    std::vector<Solution>* final_population) {
  const std::size_t mu = static_cast<std::size_t>(params.mu);
  if (params.mu < 2) throw ConfigError("nsga2: mu must be at least 2");
  if (budget < params.mu) {
    throw ConfigError("nsga2: budget " + std::to_string(budget) +
                      " cannot initialize a population of " +
                      std::to_string(params.mu));
  }

  std::int64_t evals = 0;
  auto evaluate_one = [&](std::vector<double> x) {
    Individual ind;
    ind.x = std::move(x);
    ind.f = evaluate(problem, ind.x);
    ind.eval_index = ++evals;
    Solution s;
    s.eval_index = ind.eval_index;
    s.objectives = ind.f;
    s.decision = ind.x;
    sink(s);
    return ind;
  };

  std::vector<Individual> pop;
  pop.reserve(mu);
  for (std::size_t i = 0; i < mu; ++i) {
    pop.push_back(evaluate_one(sample_uniform(problem, rng)));
  }

  while (evals < budget) {
    const Fitness fit = assess(pop);
    auto tournament = [&]() -> const Individual& {
      const std::size_t a = static_cast<std::size_t>(rng.below(pop.size()));
      const std::size_t b = static_cast<std::size_t>(rng.below(pop.size()));
      return fitter(fit, pop, a, b) ? pop[a] : pop[b];
    };

    std::vector<Individual> offspring;
    offspring.reserve(mu);
    while (offspring.size() < mu && evals < budget) {
      std::vector<double> c1 = tournament().x;
      std::vector<double> c2 = tournament().x;
      if (rng.bernoulli(params.crossover_prob)) {
        if (problem.is_bitstring()) {
          uniform_bit_crossover(rng, c1, c2);
        } else {
          sbx_crossover(problem, params, rng, c1, c2);
        }
      }
      if (problem.is_bitstring()) {
        bitflip_mutation(rng, c1);
        bitflip_mutation(rng, c2);
      } else {
        polynomial_mutation(problem, params, rng, c1);
        polynomial_mutation(problem, params, rng, c2);
      }
      offspring.push_back(evaluate_one(std::move(c1)));
      if (offspring.size() < mu && evals < budget) {
        offspring.push_back(evaluate_one(std::move(c2)));
      }
    }

    if (offspring.size() < mu) break;  // budget hit mid-generation

    std::vector<Individual> combined = std::move(pop);
    combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                    std::make_move_iterator(offspring.end()));
    std::vector<ObjectiveVector> objs(combined.size());
    std::vector<std::int64_t> idx(combined.size());
    for (std::size_t i = 0; i < combined.size(); ++i) {
      objs[i] = combined[i].f;
      idx[i] = combined[i].eval_index;
    }
    auto keep = nsga2_environmental_selection(objs, idx, mu);
    pop.clear();
    pop.reserve(mu);
    for (std::size_t i : keep) pop.push_back(std::move(combined[i]));
  }

  if (final_population) {
    final_population->clear();
    for (const Individual& ind : pop) {
      Solution s;
      s.eval_index = ind.eval_index;
      s.objectives = ind.f;
      s.decision = ind.x;
      final_population->push_back(std::move(s));
    }
  }
}

}  // namespace moat
