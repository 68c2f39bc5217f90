#include <doctest.h>

#include <cmath>

#include "moat/errors.hpp"
#include "moat/ranking.hpp"
#include "moat/rng.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace moat;

namespace {

PerformanceTable make_table(std::vector<std::string> algorithms,
                            std::vector<std::vector<double>> values,
                            bool maximize = true) {
  PerformanceTable t;
  t.algorithms = std::move(algorithms);
  t.values = std::move(values);
  t.instances.resize(t.values[0].size());
  for (std::size_t i = 0; i < t.instances.size(); ++i) {
    t.instances[i] = "I" + std::to_string(i);
  }
  t.maximize = maximize;
  return t;
}

}  // namespace

TEST_SUITE("ranking") {

TEST_CASE("fractional ranks") {
  CHECK(fractional_ranks({0.9, 0.1, 0.5}, true) ==
        std::vector<double>{1.0, 3.0, 2.0});
  CHECK(fractional_ranks({0.9, 0.1, 0.5}, false) ==
        std::vector<double>{3.0, 1.0, 2.0});
  CHECK(fractional_ranks({0.5, 0.5, 0.1}, false) ==
        std::vector<double>{2.5, 2.5, 1.0});
  CHECK(fractional_ranks({1, 1, 1, 1}, true) ==
        std::vector<double>{2.5, 2.5, 2.5, 2.5});
}

TEST_CASE("dominant algorithm forms its own leading group") {
  auto table = make_table({"A", "B"}, {{0.9, 0.8, 0.95}, {0.5, 0.4, 0.6}});
  BootstrapConfig config;
  auto result = robust_rank(table, config);
  CHECK(result.groups ==
        std::vector<std::vector<std::string>>{{"A"}, {"B"}});
  CHECK(result.win_fraction[0][1] == 1.0);
  CHECK(result.win_fraction[1][0] == 0.0);
  CHECK(result.mean_rank == std::vector<double>{1.0, 2.0});
}

TEST_CASE("identical rows tie into one group with win fraction one half") {
  auto table = make_table({"A", "B"}, {{0.5, 0.7}, {0.5, 0.7}});
  auto result = robust_rank(table, BootstrapConfig{});
  CHECK(result.groups.size() == 1);
  CHECK(result.groups[0] == std::vector<std::string>{"A", "B"});
  CHECK(result.win_fraction[0][1] == 0.5);
  CHECK(result.win_fraction[1][0] == 0.5);
}

TEST_CASE("exhaustive enumeration equivalence") {
  Rng rng(107);
  for (int it = 0; it < 25; ++it) {
    const std::size_t k = 2 + rng.below(2);   // 2..3 algorithms
    const std::size_t m = 2 + rng.below(3);   // 2..4 instances
    std::vector<std::vector<double>> values(k, std::vector<double>(m));
    for (auto& row : values) {
      for (auto& v : row) {
        v = static_cast<double>(rng.below(5)) / 4.0;  // ties likely
      }
    }
    std::vector<std::string> names;
    for (std::size_t a = 0; a < k; ++a) names.push_back(std::string(1, char('A' + a)));
    const bool maximize = rng.bernoulli(0.5);
    auto table = make_table(names, values, maximize);

    BootstrapConfig config;
    config.n_samples = static_cast<int>(std::pow(m, m));
    auto result = robust_rank(table, config);
    auto oracle = oracles::enumerate_bootstrap(values, maximize, true);
    for (std::size_t a = 0; a < k; ++a) {
      CHECK(result.mean_rank[a] == doctest::Approx(oracle.mean_rank[a]).epsilon(1e-15));
      for (std::size_t b = 0; b < k; ++b) {
        CHECK(result.win_fraction[a][b] == oracle.win_fraction[a][b]);
      }
    }
    // Pairwise sum invariant.
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        CHECK(result.win_fraction[a][b] + result.win_fraction[b][a] == 1.0);
      }
    }
  }
}

TEST_CASE("spec example: 3 instances, 2 algorithms, 27 resamples") {
  auto table = make_table({"A", "B"}, {{0.3, 0.9, 0.2}, {0.4, 0.1, 0.5}});
  BootstrapConfig config;
  config.n_samples = 27;
  auto result = robust_rank(table, config);
  auto oracle = oracles::enumerate_bootstrap(table.values, true, true);
  CHECK(result.win_fraction[0][1] == oracle.win_fraction[0][1]);
  CHECK(result.win_fraction[1][0] == oracle.win_fraction[1][0]);
}

TEST_CASE("alpha limits") {
  Rng rng(109);
  std::vector<std::vector<double>> values(3, std::vector<double>(4));
  for (auto& row : values) {
    for (auto& v : row) v = rng.uniform01();  // noisy, distinct
  }
  auto table = make_table({"A", "B", "C"}, values);

  BootstrapConfig loose;
  loose.alpha = 0.999;
  loose.n_samples = 256;
  auto separated = robust_rank(table, loose);
  CHECK(separated.groups.size() == 3);

  BootstrapConfig strict;
  strict.alpha = 1e-9;
  strict.n_samples = 256;
  auto collapsed = robust_rank(table, strict);
  // Noisy data: no pair wins every resample, so everything ties.
  bool any_total_win = false;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      if (a != b && collapsed.win_fraction[a][b] >= 1.0 - 1e-9) {
        any_total_win = true;
      }
    }
  }
  if (!any_total_win) CHECK(collapsed.groups.size() == 1);
}

TEST_CASE("group ordering consistency on random tables") {
  Rng rng(113);
  for (int it = 0; it < 30; ++it) {
    const std::size_t k = 2 + rng.below(4);
    const std::size_t m = 2 + rng.below(3);
    std::vector<std::vector<double>> values(k, std::vector<double>(m));
    for (auto& row : values) {
      for (auto& v : row) v = static_cast<double>(rng.below(4)) / 3.0;
    }
    std::vector<std::string> names;
    for (std::size_t a = 0; a < k; ++a) names.push_back(std::string(1, char('A' + a)));
    auto table = make_table(names, values);
    BootstrapConfig config;
    config.n_samples = 300;
    config.seed = it;
    auto result = robust_rank(table, config);

    // Groups partition the algorithm set.
    std::size_t total = 0;
    for (const auto& g : result.groups) total += g.size();
    CHECK(total == k);

    auto index_of = [&](const std::string& name) {
      return static_cast<std::size_t>(
          std::find(names.begin(), names.end(), name) - names.begin());
    };
    for (std::size_t gi = 0; gi < result.groups.size(); ++gi) {
      for (std::size_t gj = gi + 1; gj < result.groups.size(); ++gj) {
        for (const auto& a : result.groups[gi]) {
          for (const auto& b : result.groups[gj]) {
            CHECK(result.win_fraction[index_of(a)][index_of(b)] >=
                  1.0 - config.alpha);
          }
        }
      }
    }
  }
}

TEST_CASE("single algorithm degenerates to one group") {
  auto table = make_table({"A"}, {{0.5, 0.6}});
  auto result = robust_rank(table, BootstrapConfig{});
  CHECK(result.groups == std::vector<std::vector<std::string>>{{"A"}});
  CHECK(result.win_fraction[0][0] == 0.5);
}

TEST_CASE("bootstrap determinism with random resampling") {
  Rng rng(127);
  std::vector<std::vector<double>> values(3, std::vector<double>(6));
  for (auto& row : values) {
    for (auto& v : row) v = rng.uniform01();
  }
  auto table = make_table({"A", "B", "C"}, values);
  BootstrapConfig config;
  config.n_samples = 500;  // below 6^6, so the random path runs
  config.seed = 42;
  auto r1 = robust_rank(table, config);
  auto r2 = robust_rank(table, config);
  CHECK(r1.win_fraction == r2.win_fraction);
  CHECK(r1.groups == r2.groups);
  CHECK(r1.mean_rank == r2.mean_rank);
  auto ci1 = bootstrap_ci(table, config, 0.9);
  auto ci2 = bootstrap_ci(table, config, 0.9);
  for (std::size_t a = 0; a < 3; ++a) {
    CHECK(ci1[a].lo == ci2[a].lo);
    CHECK(ci1[a].median == ci2[a].median);
    CHECK(ci1[a].hi == ci2[a].hi);
  }
}

TEST_CASE("bootstrap confidence intervals") {
  auto constant = make_table({"A"}, {{0.75, 0.75, 0.75}});
  auto ci = bootstrap_ci(constant, BootstrapConfig{}, 0.95);
  CHECK(ci[0].lo == 0.75);
  CHECK(ci[0].median == 0.75);
  CHECK(ci[0].hi == 0.75);

  // Two instances {0, 1}: exhaustive aggregates {0, 0.5, 0.5, 1}.
  auto two = make_table({"A"}, {{0.0, 1.0}});
  BootstrapConfig config;
  config.n_samples = 4;
  auto ci2 = bootstrap_ci(two, config, 0.5);
  CHECK(ci2[0].median == 0.5);

  BootstrapConfig one;
  one.n_samples = 1;
  auto single = make_table({"A"}, {{0.3}});
  auto ci1 = bootstrap_ci(single, one, 0.95);
  CHECK(ci1[0].lo == 0.3);
  CHECK(ci1[0].hi == 0.3);
}

TEST_CASE("performance table from logged runs") {
  testutil::TempDir dir("table");
  testutil::write_run(dir.path(), "P", "A", 1, {{0.5, 0.5}});
  testutil::write_run(dir.path(), "P", "A", 2, {{0.7, 0.7}});
  testutil::write_run(dir.path(), "P", "B", 1, {{0.9, 0.9}});
  testutil::write_run(dir.path(), "P", "B", 2, {{0.9, 0.9}});
  auto dataset = DataSet::ingest(dir.path());
  std::map<std::string, NormalizationBounds> bounds;
  bounds.emplace("P", NormalizationBounds::identity(2));
  auto table =
      performance_table(dataset, IndicatorSpec::hypervolume(), 5, bounds);
  CHECK(table.algorithms == std::vector<std::string>{"A", "B"});
  CHECK(table.instances == std::vector<std::string>{"P"});
  // Mean over runs: A averages HV(0.5,0.5) and HV(0.7,0.7).
  CHECK(table.values[0][0] ==
        doctest::Approx((0.36 + 0.16) / 2).epsilon(1e-12));
  CHECK(table.values[1][0] == doctest::Approx(0.04).epsilon(1e-12));
  CHECK(table.maximize);

  // A hole in the coverage is named.
  testutil::write_run(dir.path(), "Q", "A", 1, {{0.1, 0.1}});
  auto holey = DataSet::ingest(dir.path());
  bounds.emplace("Q", NormalizationBounds::identity(2));
  CHECK_THROWS_WITH_AS(
      (void)performance_table(holey, IndicatorSpec::hypervolume(), 5, bounds),
      doctest::Contains("no runs of algorithm B on problem Q"), CoverageError);
}

TEST_CASE("friedman test and critical difference") {
  SUBCASE("A better in all blocks") {
    testutil::TempDir dir("fr");
    for (int run = 1; run <= 10; ++run) {
      testutil::write_run(dir.path(), "P", "A", run, {{0.1, 0.1}});
      testutil::write_run(dir.path(), "P", "B", run, {{0.5, 0.5}});
    }
    auto dataset = DataSet::ingest(dir.path());
    std::map<std::string, NormalizationBounds> bounds;
    bounds.emplace("P", NormalizationBounds::identity(2));
    auto fr = friedman_cd(dataset, IndicatorSpec::hypervolume(), 10, 0.05,
                          bounds);
    CHECK(fr.avg_ranks == std::vector<double>{1.0, 2.0});
    CHECK(fr.n_blocks == 10);
    CHECK(fr.p_value < 0.05);
  }

  SUBCASE("fully tied table") {
    testutil::TempDir dir("frt");
    for (int run = 1; run <= 6; ++run) {
      for (const char* alg : {"A", "B", "C"}) {
        testutil::write_run(dir.path(), "P", alg, run, {{0.4, 0.4}});
      }
    }
    auto dataset = DataSet::ingest(dir.path());
    std::map<std::string, NormalizationBounds> bounds;
    bounds.emplace("P", NormalizationBounds::identity(2));
    auto fr =
        friedman_cd(dataset, IndicatorSpec::hypervolume(), 6, 0.05, bounds);
    CHECK(fr.avg_ranks == std::vector<double>{2.0, 2.0, 2.0});
    CHECK(fr.statistic == 0.0);
    CHECK(fr.p_value > 0.99);
  }

  SUBCASE("embedded critical-difference constants") {
    CHECK(studentized_range_q(0.05, 3) == 2.343);
    CHECK(studentized_range_q(0.01, 2) == 2.576);
    CHECK(studentized_range_q(0.10, 2) == doctest::Approx(1.645));
    CHECK_THROWS_AS((void)studentized_range_q(0.05, 25), ConfigError);
    CHECK_THROWS_AS((void)studentized_range_q(0.2, 3), ConfigError);
  }
}

TEST_CASE("friedman ranks are invariant under monotone transforms") {
  testutil::TempDir dir("frmono");
  Rng rng(131);
  for (int run = 1; run <= 8; ++run) {
    for (const char* alg : {"A", "B", "C"}) {
      const double v = 0.1 + 0.8 * rng.uniform01();
      testutil::write_run(dir.path(), "P", alg, run, {{v, v}});
    }
  }
  auto dataset = DataSet::ingest(dir.path());
  std::map<std::string, NormalizationBounds> bounds;
  bounds.emplace("P", NormalizationBounds::identity(2));
  auto base =
      friedman_cd(dataset, IndicatorSpec::hypervolume(), 8, 0.05, bounds);

  // Shrinking the reference point rescales every HV monotonically.
  auto shrunk = friedman_cd(
      dataset, IndicatorSpec::hypervolume(ObjectiveVector{2.0, 2.0}), 8, 0.05,
      bounds);
  CHECK(base.avg_ranks == shrunk.avg_ranks);
  CHECK(base.statistic == doctest::Approx(shrunk.statistic).epsilon(1e-12));
}

TEST_CASE("rank over time") {
  testutil::TempDir dir("rot");
  testutil::write_run(dir.path(), "P", "A", 1, {{0.2, 0.2}, {0.1, 0.1}});
  testutil::write_run(dir.path(), "P", "B", 1, {{0.5, 0.5}, {0.45, 0.45}});
  auto dataset = DataSet::ingest(dir.path());
  std::map<std::string, NormalizationBounds> bounds;
  bounds.emplace("P", NormalizationBounds::identity(2));
  BootstrapConfig config;
  auto singleton = rank_over_time(dataset, IndicatorSpec::hypervolume(),
                                  BudgetGrid{{2}}, config, bounds);
  REQUIRE(singleton.size() == 1);
  CHECK(singleton[0].budget == 2);
  CHECK(singleton[0].groups ==
        std::vector<std::vector<std::string>>{{"A"}, {"B"}});

  auto series = rank_over_time(dataset, IndicatorSpec::hypervolume(),
                               BudgetGrid{{1, 2}}, config, bounds);
  auto again = rank_over_time(dataset, IndicatorSpec::hypervolume(),
                              BudgetGrid{{1, 2}}, config, bounds);
  REQUIRE(series.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(series[i].groups == again[i].groups);
    CHECK(series[i].win_fraction == again[i].win_fraction);
  }
}

}  // TEST_SUITE
