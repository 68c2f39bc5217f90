#include <doctest.h>

#include <cmath>

#include "moat/errors.hpp"
#include "moat/indicators.hpp"
#include "moat/rng.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace moat;

TEST_SUITE("indicators") {

TEST_CASE("normalize") {
  NormalizationBounds b{{0, 0}, {1, 2}};
  CHECK(normalize({0.5, 1.0}, b) == ObjectiveVector{0.5, 0.5});
  CHECK(normalize(b.ideal, b) == ObjectiveVector{0, 0});
  CHECK(normalize(b.worst, b) == ObjectiveVector{1, 1});

  NormalizationBounds degenerate{{2, 0}, {2, 1}};
  CHECK(normalize({2, 0.5}, degenerate) == ObjectiveVector{0, 0.5});
}

TEST_CASE("compute_bounds from logged data") {
  testutil::TempDir dir("bounds");
  testutil::write_run(dir.path(), "P", "a1", 1, {{0, 2}});
  testutil::write_run(dir.path(), "P", "a2", 1, {{1, 0}});
  auto dataset = DataSet::ingest(dir.path());
  auto b = compute_bounds(dataset, "P");
  CHECK(b.ideal == ObjectiveVector{0, 0});
  CHECK(b.worst == ObjectiveVector{1, 2});
  CHECK_THROWS_AS((void)compute_bounds(dataset, "missing"), CoverageError);

  testutil::TempDir dir2("bounds1");
  testutil::write_run(dir2.path(), "Q", "a1", 1, {{3, 4}});
  auto single = compute_bounds(DataSet::ingest(dir2.path()), "Q");
  CHECK(single.ideal == ObjectiveVector{3, 4});
  CHECK(single.worst == ObjectiveVector{3, 4});
}

TEST_CASE("hv_fraction") {
  auto identity = NormalizationBounds::identity(2);
  CHECK(hv_fraction({{0, 0}}, identity) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hv_fraction({}, identity) == 0.0);
  CHECK(hv_fraction({{1.1, 1.1}}, identity) == 0.0);
}

TEST_CASE("igd_plus") {
  ParetoSet ref;
  ref.points = {{0.2, 0.8}, {0.8, 0.2}};
  CHECK(igd_plus(ref.points, ref) == 0.0);

  ParetoSet origin;
  origin.points = {{0, 0}};
  CHECK(igd_plus({{1, 1}}, origin) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  ParetoSet ones;
  ones.points = {{1, 1}};
  CHECK(igd_plus({{0, 0}}, ones) == 0.0);  // dominating point has zero d+

  CHECK_THROWS_AS((void)igd_plus({}, ones), IndicatorInputError);
  CHECK_THROWS_AS((void)igd_plus({{1, 1}}, ParetoSet{}), IndicatorInputError);
}

TEST_CASE("igd_plus weak monotonicity under set growth") {
  Rng rng(53);
  for (int it = 0; it < 50; ++it) {
    ParetoSet ref;
    ref.points = oracles::random_points(rng, 10, 3);
    auto pts = oracles::random_points(rng, 8, 3);
    const double before = igd_plus(pts, ref);
    auto more = pts;
    more.push_back(oracles::random_point(rng, 3));
    CHECK(igd_plus(more, ref) <= before);
  }
}

TEST_CASE("epsilon indicators") {
  ParetoSet r;
  r.points = {{0.4, 0.4}};
  CHECK(epsilon_additive({{0.4, 0.4}}, r) == 0.0);
  CHECK(epsilon_additive({{0.5, 0.5}}, r) == doctest::Approx(0.1).epsilon(1e-12));

  ParetoSet origin;
  origin.points = {{0, 0}};
  CHECK(epsilon_additive({{0, 1}, {1, 0}}, origin) == 1.0);

  ParetoSet ones;
  ones.points = {{1, 1}};
  CHECK(epsilon_multiplicative({{1, 1}}, ones) == 1.0);
  CHECK(epsilon_multiplicative({{2, 2}}, ones) == 2.0);

  ParetoSet with_zero;
  with_zero.points = {{0, 1}};
  CHECK_THROWS_AS((void)epsilon_multiplicative({{1, 1}}, with_zero),
                  IndicatorInputError);
  CHECK_THROWS_AS((void)epsilon_additive({}, r), IndicatorInputError);
}

TEST_CASE("epsilon_additive is <= 0 iff the set weakly dominates the reference") {
  Rng rng(59);
  for (int it = 0; it < 100; ++it) {
    auto a = oracles::random_points(rng, 5, 2);
    ParetoSet r;
    r.points = oracles::random_points(rng, 4, 2);
    bool all_covered = true;
    for (const auto& z : r.points) {
      bool covered = false;
      for (const auto& p : a) {
        if (weakly_dominates(p, z)) covered = true;
      }
      if (!covered) all_covered = false;
    }
    CHECK((epsilon_additive(a, r) <= 0.0) == all_covered);
  }
}

TEST_CASE("r2") {
  WeightVectorSet w;
  w.vectors = {{1, 0}, {0, 1}};
  w.utopian = {0, 0};
  CHECK(r2({{0.25, 0.75}}, w) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r2({{0, 0}, {0.7, 0.9}}, w) == 0.0);  // utopian point present

  CHECK_THROWS_AS((void)r2({{0.5, 0.5}}, WeightVectorSet{}),
                  IndicatorInputError);
}

TEST_CASE("r2 equals the naive double loop") {
  Rng rng(61);
  auto w = generate_weights(2, 20);
  for (int it = 0; it < 20; ++it) {
    auto pts = oracles::random_points(rng, 5, 2);
    CHECK(r2(pts, w) == oracles::naive_r2(pts, w.vectors, w.utopian));
  }
}

TEST_CASE("generate_weights") {
  auto w2 = generate_weights(2, 2);
  CHECK(w2.vectors ==
        std::vector<ObjectiveVector>{{0, 1}, {0.5, 0.5}, {1, 0}});
  CHECK(w2.utopian == ObjectiveVector{0, 0});

  auto w3 = generate_weights(3, 1);
  CHECK(w3.vectors.size() == 3);
  for (const auto& v : w3.vectors) {
    double sum = 0;
    int ones = 0;
    for (double x : v) {
      sum += x;
      if (x == 1.0) ++ones;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ones == 1);
  }

  CHECK(generate_weights(3, 12).vectors.size() == 91);

  // Every lattice vector sums to 1.
  for (const auto& v : generate_weights(4, 6).vectors) {
    double sum = 0;
    for (double x : v) sum += x;
    CHECK(std::fabs(sum - 1.0) <= 1e-12);
  }

  CHECK(partitions_for_weight_count(3, 100) == 13);  // C(15,2) = 105
}

TEST_CASE("indicator spec validation") {
  IndicatorSpec hv = IndicatorSpec::hypervolume();
  CHECK(hv.resolved_reference_point(3) == ObjectiveVector{1.1, 1.1, 1.1});
  CHECK_NOTHROW(hv.validate(2));

  IndicatorSpec igd = IndicatorSpec::igd_plus({});
  CHECK_THROWS_AS(igd.validate(2), IndicatorInputError);

  CHECK(is_maximizing(IndicatorKind::hypervolume));
  CHECK_FALSE(is_maximizing(IndicatorKind::igd_plus));
  CHECK(indicator_from_string("igdplus") == IndicatorKind::igd_plus);
  CHECK_THROWS_AS((void)indicator_from_string("bogus"), IndicatorInputError);
}

}  // TEST_SUITE
