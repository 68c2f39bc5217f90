#include <doctest.h>

#include <cmath>

#include "moat/algorithms.hpp"
#include "moat/anytime.hpp"
#include "moat/errors.hpp"
#include "moat/experiment.hpp"
#include "moat/hypervolume.hpp"
#include "moat/rng.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace moat;

namespace {

// Independent from-scratch trajectory: filter the raw prefix, normalize,
// evaluate the indicator.
double eager_value(const RunArchive& run, const IndicatorSpec& spec,
                   std::int64_t budget, const NormalizationBounds& bounds) {
  std::vector<ObjectiveVector> prefix;
  for (const auto& s : run.records) {
    if (s.eval_index <= budget) prefix.push_back(s.objectives);
  }
  std::vector<ObjectiveVector> front;
  for (const auto& p : oracles::filter(prefix)) {
    front.push_back(normalize(p, bounds));
  }
  if (spec.kind == IndicatorKind::hypervolume) {
    return hypervolume(front, spec.resolved_reference_point(bounds.ideal.size()));
  }
  ParetoSet ref;
  for (const auto& z : spec.reference_set.points) {
    ref.points.push_back(normalize(z, bounds));
  }
  return igd_plus(front, ref);
}

RunArchive random_search_archive(const std::string& problem_name,
                                 std::int64_t budget, std::uint64_t seed) {
  auto problem = make_problem(problem_name);
  RunArchive archive;
  archive.meta = testutil::make_meta(problem_name, problem.m, "random_search",
                                     static_cast<int>(seed), budget);
  Rng rng(seed);
  random_search(problem, budget, rng, [&](const Solution& s) {
    Solution trimmed;
    trimmed.eval_index = s.eval_index;
    trimmed.objectives = s.objectives;
    archive.records.push_back(std::move(trimmed));
  });
  return archive;
}

}  // namespace

TEST_SUITE("anytime") {

TEST_CASE("budget grids") {
  CHECK(make_budget_grid(1, 100, 3, GridScale::log).budgets ==
        std::vector<std::int64_t>{1, 10, 100});
  auto fig = make_budget_grid(100, 50000, 8, GridScale::log);
  CHECK(fig.budgets.size() == 8);
  CHECK(fig.budgets.front() == 100);
  CHECK(fig.budgets.back() == 50000);
  CHECK(make_budget_grid(10, 20, 2, GridScale::linear).budgets ==
        std::vector<std::int64_t>{10, 20});
  CHECK_THROWS_AS((void)make_budget_grid(5, 5, 3, GridScale::log), ConfigError);
  CHECK_THROWS_AS((void)make_budget_grid(0, 5, 3, GridScale::log), ConfigError);
  CHECK_THROWS_AS((void)make_budget_grid(1, 5, 1, GridScale::log), ConfigError);
}

TEST_CASE("trajectory on the toy archive") {
  auto run = testutil::make_archive("P", "alg", 1,
                                    {{1, 1}, {0.5, 0.5}, {0.8, 0.2}});
  auto bounds = NormalizationBounds::identity(2);
  auto series = trajectory(run, IndicatorSpec::hypervolume(),
                           BudgetGrid{{1, 2, 3}}, bounds);
  REQUIRE(series.values.size() == 3);
  CHECK(series.values[0] == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(series.values[1] == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(series.values[2] == doctest::Approx(0.45).epsilon(1e-12));

  // A grid beyond the run evaluates the whole-archive front.
  auto clamped = trajectory(run, IndicatorSpec::hypervolume(),
                            BudgetGrid{{50}}, bounds);
  CHECK(clamped.values[0] == doctest::Approx(0.45).epsilon(1e-12));
}

TEST_CASE("igd+ trajectory matches eager recomputation and is monotone") {
  auto run = random_search_archive("ZDT1", 800, 99);
  std::vector<ObjectiveVector> all;
  for (const auto& s : run.records) all.push_back(s.objectives);
  auto [ideal, worst] = ideal_and_worst(all);
  NormalizationBounds bounds{ideal, worst};

  ParetoSet refset;
  refset.points = oracles::filter(all);
  auto spec = IndicatorSpec::igd_plus(refset);
  auto grid = make_budget_grid(1, 800, 50, GridScale::log);
  auto series = trajectory(run, spec, grid, bounds);
  for (std::size_t i = 0; i + 1 < series.values.size(); ++i) {
    CHECK(series.values[i + 1] <= series.values[i]);
  }
  for (std::size_t i = 0; i < grid.budgets.size(); ++i) {
    const double eager = eager_value(run, spec, grid.budgets[i], bounds);
    CHECK(std::fabs(series.values[i] - eager) <= 1e-12);
  }
}

TEST_CASE("hv trajectory is exactly non-decreasing") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    auto run = random_search_archive("ZDT1", 600, seed);
    std::vector<ObjectiveVector> all;
    for (const auto& s : run.records) all.push_back(s.objectives);
    auto [ideal, worst] = ideal_and_worst(all);
    auto series = trajectory(run, IndicatorSpec::hypervolume(),
                             make_budget_grid(1, 600, 40, GridScale::log),
                             NormalizationBounds{ideal, worst});
    for (std::size_t i = 0; i + 1 < series.values.size(); ++i) {
      CHECK(series.values[i + 1] >= series.values[i]);
    }
  }
}

TEST_CASE("aggregate") {
  TrajectorySeries a{IndicatorKind::hypervolume, {10}, {0.2}};
  TrajectorySeries b{IndicatorKind::hypervolume, {10}, {0.4}};
  auto curve = aggregate({a, b}, 0.95);
  CHECK(curve.mean[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(curve.lo[0] < 0.3);
  CHECK(curve.hi[0] > 0.3);

  auto identical = aggregate({a, a, a, a, a}, 0.95);
  CHECK(identical.lo[0] == identical.mean[0]);
  CHECK(identical.hi[0] == identical.mean[0]);

  auto single = aggregate({a}, 0.95);
  CHECK(single.lo[0] == 0.2);
  CHECK(single.hi[0] == 0.2);

  TrajectorySeries other{IndicatorKind::hypervolume, {11}, {0.4}};
  CHECK_THROWS_AS((void)aggregate({a, other}, 0.95), ConfigError);
  CHECK_THROWS_AS((void)aggregate({}, 0.95), CoverageError);
  CHECK_THROWS_AS((void)aggregate({a}, 1.5), ConfigError);
}

TEST_CASE("t-interval coverage on synthetic normal data") {
  // 1000 repetitions of n=25 standard-normal samples; the 95% interval
  // should cover the true mean about 95% of the time.
  Rng rng(2024);
  auto normal = [&]() {
    const double u1 = std::max(rng.uniform01(), 1e-12);
    const double u2 = rng.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };
  int covered = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<TrajectorySeries> series;
    for (int i = 0; i < 25; ++i) {
      series.push_back(TrajectorySeries{IndicatorKind::hypervolume, {1},
                                        {normal()}});
    }
    auto curve = aggregate(series, 0.95);
    if (curve.lo[0] <= 0.0 && 0.0 <= curve.hi[0]) ++covered;
  }
  CHECK(covered >= 930);
  CHECK(covered <= 975);
}

TEST_CASE("trajectories agree between storage modes") {
  // A nondominated_only log drops dominated records, but the front at any
  // budget is unchanged, so every trajectory value matches the full log's.
  testutil::TempDir dir("modes");
  Rng rng(171);
  std::vector<ObjectiveVector> stream;
  for (int i = 0; i < 250; ++i) {
    stream.push_back({static_cast<double>(rng.below(40)) / 39.0,
                      static_cast<double>(rng.below(40)) / 39.0});
  }
  for (auto mode : {StoreMode::all, StoreMode::nondominated_only}) {
    auto meta = testutil::make_meta("P", 2, to_string(mode), 1, 250, mode);
    auto logger = Logger::open(meta, dir.path());
    for (std::size_t i = 0; i < stream.size(); ++i) {
      logger.log_eval({static_cast<std::int64_t>(i + 1), stream[i], {}});
    }
    logger.finalize();
  }
  auto dataset = DataSet::ingest(dir.path());
  REQUIRE(dataset.size() == 2);
  auto bounds = NormalizationBounds::identity(2);
  auto grid = make_budget_grid(1, 250, 25, GridScale::log);
  auto full = trajectory(dataset.archive(0), IndicatorSpec::hypervolume(),
                         grid, bounds);
  auto sparse = trajectory(dataset.archive(1), IndicatorSpec::hypervolume(),
                           grid, bounds);
  CHECK(dataset.meta(1).store_mode == StoreMode::nondominated_only);
  CHECK(dataset.records(1).size() < dataset.records(0).size());
  for (std::size_t i = 0; i < full.values.size(); ++i) {
    CHECK(full.values[i] == sparse.values[i]);
  }
}

TEST_CASE("ecdf on tiny data sets") {
  testutil::TempDir dir("ecdf");
  testutil::write_run(dir.path(), "P", "alg", 1, {{1, 1}, {0.5, 0.5}});
  auto dataset = DataSet::ingest(dir.path());
  std::map<std::string, NormalizationBounds> bounds;
  bounds.emplace("P", compute_bounds(dataset, "P"));
  auto curves = ecdf(dataset, BudgetGrid{{2}}, bounds);
  REQUIRE(curves.algorithms == std::vector<std::string>{"alg"});

  // Same value computed directly from the run's front.
  auto series = trajectory(dataset.archive(0), IndicatorSpec::hypervolume(),
                           BudgetGrid{{2}}, bounds.at("P"));
  CHECK(curves.values[0][0] ==
        doctest::Approx(series.values[0] / (1.1 * 1.1)).epsilon(1e-15));

  // A single-point run attains the whole normalized box: fraction 1.
  testutil::TempDir dir1("ecdf1");
  testutil::write_run(dir1.path(), "Q", "alg", 1, {{0.7, 0.3}});
  auto ds1 = DataSet::ingest(dir1.path());
  std::map<std::string, NormalizationBounds> b1;
  b1.emplace("Q", compute_bounds(ds1, "Q"));
  auto c1 = ecdf(ds1, BudgetGrid{{1}}, b1);
  CHECK(c1.values[0][0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ecdf separates the baselines on desk-scale data") {
  testutil::TempDir dir("ecdfdesk");
  ExperimentConfig cfg;
  cfg.problems = {make_problem("ZDT1"), make_problem("ZDT2")};
  cfg.algorithms = {{"random_search", 0, ""}, {"nsga2", 20, ""}};
  cfg.runs = 10;
  cfg.budget = 5000;
  cfg.seed = 77;
  cfg.output_dir = dir.path().string();
  run_experiment(cfg);

  auto dataset = DataSet::ingest(dir.path());
  std::map<std::string, NormalizationBounds> bounds;
  for (const auto& p : dataset.problems()) {
    bounds.emplace(p, compute_bounds(dataset, p));
  }
  auto curves =
      ecdf(dataset, make_budget_grid(10, 5000, 20, GridScale::log), bounds);
  REQUIRE(curves.algorithms.size() == 2);
  const std::size_t nsga = curves.algorithms[0] == "nsga2_mu20" ? 0 : 1;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b + 1 < curves.budgets.size(); ++b) {
      CHECK(curves.values[a][b] >= 0.0);
      CHECK(curves.values[a][b] <= 1.0);
      CHECK(curves.values[a][b + 1] >= curves.values[a][b]);
    }
  }
  CHECK(curves.values[nsga].back() > curves.values[1 - nsga].back());
}

}  // TEST_SUITE
