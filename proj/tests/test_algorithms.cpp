#include <doctest.h>

#include "moat/algorithms.hpp"
#include "moat/anytime.hpp"
#include "moat/errors.hpp"
#include "moat/hypervolume.hpp"
#include "moat/indicators.hpp"
#include "moat/rng.hpp"
#include "test_util.hpp"

using namespace moat;

namespace {

std::vector<Solution> collect_random(const ProblemSpec& p, std::int64_t budget,
                                     std::uint64_t seed) {
  std::vector<Solution> out;
  Rng rng(seed);
  random_search(p, budget, rng, [&](const Solution& s) { out.push_back(s); });
  return out;
}

std::vector<Solution> collect_nsga2(const ProblemSpec& p, int mu,
                                    std::int64_t budget, std::uint64_t seed,
                                    std::vector<Solution>* pop = nullptr) {
  std::vector<Solution> out;
  Rng rng(seed);
  Nsga2Params params;
  params.mu = mu;
  nsga2_baseline(p, params, budget, rng,
                 [&](const Solution& s) { out.push_back(s); }, pop);
  return out;
}

}  // namespace

TEST_SUITE("algorithms") {

TEST_CASE("random search count, range and determinism") {
  auto p = make_problem("ZDT1");
  auto one = collect_random(p, 1, 5);
  CHECK(one.size() == 1);
  CHECK(one[0].eval_index == 1);

  auto a = collect_random(p, 100, 5);
  auto b = collect_random(p, 100, 5);
  CHECK(a == b);
  for (const auto& s : a) {
    CHECK(s.objectives[0] >= 0.0);  // translated f1 = x1 in [0, 1]
    CHECK(s.objectives[0] <= 1.0);
    for (std::size_t i = 0; i < s.decision.size(); ++i) {
      CHECK(s.decision[i] >= p.lower[i]);
      CHECK(s.decision[i] <= p.upper[i]);
    }
  }
  CHECK(collect_random(p, 100, 6) != a);
}

TEST_CASE("random search on bitstrings") {
  auto p = make_problem("ZDT5");
  auto runs = collect_random(p, 10, 9);
  CHECK(runs.size() == 10);
  for (const auto& s : runs) {
    CHECK(s.decision.size() == 80);
    for (double b : s.decision) CHECK((b == 0.0 || b == 1.0));
  }
}

TEST_CASE("nsga2 budget handling") {
  auto p = make_problem("ZDT1");
  auto init_only = collect_nsga2(p, 10, 10, 1);
  CHECK(init_only.size() == 10);

  auto odd = collect_nsga2(p, 10, 47, 1);
  CHECK(odd.size() == 47);
  for (std::size_t i = 0; i < odd.size(); ++i) {
    CHECK(odd[i].eval_index == static_cast<std::int64_t>(i + 1));
  }

  CHECK(collect_nsga2(p, 10, 200, 3) == collect_nsga2(p, 10, 200, 3));
  CHECK_THROWS_AS((void)collect_nsga2(p, 10, 5, 1), ConfigError);
}

TEST_CASE("nsga2 respects bounds") {
  auto p = make_problem("ZDT4");  // asymmetric bounds stress clipping
  auto stream = collect_nsga2(p, 8, 120, 11);
  for (const auto& s : stream) {
    for (std::size_t i = 0; i < s.decision.size(); ++i) {
      CHECK(s.decision[i] >= p.lower[i]);
      CHECK(s.decision[i] <= p.upper[i]);
    }
  }
}

TEST_CASE("nsga2 on bitstrings") {
  auto p = make_problem("ZDT5");
  auto stream = collect_nsga2(p, 6, 60, 13);
  CHECK(stream.size() == 60);
  for (const auto& s : stream) {
    for (double b : s.decision) CHECK((b == 0.0 || b == 1.0));
  }
}

TEST_CASE("environmental selection keeps the best front") {
  // Front {(0,3),(1,1),(3,0)} plus dominated stragglers.
  std::vector<ObjectiveVector> objs = {{0, 3}, {5, 5}, {1, 1},
                                       {3, 0}, {4, 4}, {2, 2}};
  std::vector<std::int64_t> idx = {1, 2, 3, 4, 5, 6};
  auto keep = nsga2_environmental_selection(objs, idx, 3);
  CHECK(keep == std::vector<std::size_t>{0, 2, 3});

  // Truncation by crowding: boundary points of a front survive.
  std::vector<ObjectiveVector> front = {
      {0, 10}, {1, 8.9}, {2, 8}, {3, 7}, {10, 0}};
  std::vector<std::int64_t> fidx = {1, 2, 3, 4, 5};
  auto trunc = nsga2_environmental_selection(front, fidx, 3);
  CHECK(trunc.front() == 0);
  CHECK(trunc.back() == 4);

  CHECK_THROWS_AS((void)nsga2_environmental_selection(front, fidx, 9),
                  ConfigError);
}

TEST_CASE("final population replay equals the live population") {
  auto p = make_problem("ZDT1", 8);
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    for (std::int64_t budget : {std::int64_t{60}, std::int64_t{67}}) {
      std::vector<Solution> live;
      auto stream = collect_nsga2(p, 6, budget, seed, &live);
      RunArchive archive;
      archive.meta = testutil::make_meta("ZDT1", 2, "nsga2_mu6", 1, budget);
      archive.records = stream;
      auto replayed = final_population(archive, 6);

      auto key = [](const Solution& s) { return s.eval_index; };
      std::vector<std::int64_t> live_keys, replay_keys;
      for (const auto& s : live) live_keys.push_back(key(s));
      for (const auto& s : replayed) replay_keys.push_back(key(s));
      std::sort(live_keys.begin(), live_keys.end());
      std::sort(replay_keys.begin(), replay_keys.end());
      CHECK(live_keys == replay_keys);
    }
  }
}

TEST_CASE("baseline final population beats random search's on ZDT1") {
  // mu=10, budget=1000, 25 seeded runs; final-population hypervolume in
  // jointly normalized space with reference (1.1, 1.1).
  auto p = make_problem("ZDT1");
  const std::size_t mu = 10;
  double nsga_sum = 0.0, random_sum = 0.0;
  for (int run = 1; run <= 25; ++run) {
    std::vector<Solution> nsga_pop;
    auto nsga_stream = collect_nsga2(
        p, static_cast<int>(mu), 1000,
        derive_run_seed(99, "nsga2", "ZDT1", static_cast<std::uint64_t>(run)),
        &nsga_pop);
    auto random_stream = collect_random(
        p, 1000,
        derive_run_seed(99, "random_search", "ZDT1",
                        static_cast<std::uint64_t>(run)));

    std::vector<ObjectiveVector> all;
    for (const auto& s : nsga_stream) all.push_back(s.objectives);
    for (const auto& s : random_stream) all.push_back(s.objectives);
    auto [ideal, worst] = ideal_and_worst(all);
    NormalizationBounds bounds{ideal, worst};
    auto hv_of = [&](const std::vector<Solution>& pop) {
      std::vector<ObjectiveVector> pts;
      for (const auto& s : pop) pts.push_back(normalize(s.objectives, bounds));
      return hypervolume(pts, {1.1, 1.1});
    };
    nsga_sum += hv_of(nsga_pop);
    random_sum += hv_of({random_stream.end() - mu, random_stream.end()});
  }
  CHECK(nsga_sum / 25 > random_sum / 25);
}

TEST_CASE("final population fallback and errors") {
  auto archive = testutil::make_archive("P", "random_search", 1,
                                        {{3, 3}, {2, 2}, {1, 1}, {4, 4}});
  auto last2 = final_population(archive, 2);
  CHECK(last2.size() == 2);
  CHECK(last2[0].eval_index == 3);
  CHECK(last2[1].eval_index == 4);

  CHECK_THROWS_AS((void)final_population(archive, 9), Error);
  archive.meta.store_mode = StoreMode::nondominated_only;
  CHECK_THROWS_AS((void)final_population(archive, 2), Error);
}

}  // TEST_SUITE
