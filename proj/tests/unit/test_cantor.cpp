#include <doctest.h>

#include "helpers.hpp"
#include "lipset/cantor.hpp"
#include "lipset/rng.hpp"

using namespace lipset;
using testutil::closed_set;
using testutil::Q;

TEST_CASE("level-1 pattern in (0,1) and scaled windows") {
  IntervalSet g = level1_open(Q("0"), Q("1"));
  IntervalSet expected = IntervalSet::canonical({
      Interval::open(Q("0"), Q("3/11")),
      Interval::open(Q("4/11"), Q("7/11")),
      Interval::open(Q("8/11"), Q("1")),
  });
  CHECK(g == expected);
  CHECK(measure(g) == ExtendedRational(Q("9/11")));

  IntervalSet scaled = level1_open(Q("0"), Q("11"));
  IntervalSet expected_scaled = IntervalSet::canonical({
      Interval::open(Q("0"), Q("3")),
      Interval::open(Q("4"), Q("7")),
      Interval::open(Q("8"), Q("11")),
  });
  CHECK(scaled == expected_scaled);
  CHECK_THROWS_AS(level1_open(Q("1"), Q("0")), std::invalid_argument);
}

TEST_CASE("level-k refinement: counts, measures, caps") {
  CHECK(levelk_open(Q("0"), Q("1"), 0) == IntervalSet::single(Interval::open(Q("0"), Q("1"))));
  IntervalSet k2 = levelk_open(Q("0"), Q("1"), 2);
  CHECK(k2.size() == 9);
  CHECK(measure(k2) == ExtendedRational(Q("81/121")));

  Rational expected(1);
  for (int k = 0; k <= 8; ++k) {
    CHECK(measure(levelk_open(Q("0"), Q("1"), k)) == ExtendedRational(expected));
    expected *= Q("9/11");
  }
  CHECK_THROWS_AS(levelk_open(Q("0"), Q("1"), 13), std::invalid_argument);
  CHECK_THROWS_AS(levelk_open(Q("0"), Q("1"), -1), std::invalid_argument);
}

TEST_CASE("self-similarity under affine maps (seeded)") {
  SplitMix64 rng(111);
  for (int t = 0; t < 25; ++t) {
    Rational a = rand_dyadic(rng, Q("-3"), Q("3"), 8);
    Rational w = rand_dyadic(rng, Q("1/16"), Q("3"), 8);
    int k = static_cast<int>(rng.below(5));
    CHECK(levelk_open(a, a + w, k) ==
          affine_image(levelk_open(Q("0"), Q("1"), k), w, a));
  }
}

TEST_CASE("f-components carry level tags") {
  Interval window = Interval::closed(Q("0"), Q("1"));

  auto level0 = f_components(levelk_open(Q("0"), Q("1"), 0), window);
  CHECK(level0.empty());

  auto level1 = f_components(level1_open(Q("0"), Q("1")), window);
  REQUIRE(level1.size() == 2);
  CHECK(level1[0].first == Interval::closed(Q("3/11"), Q("4/11")));
  CHECK(level1[0].second == 1);
  CHECK(level1[1].first == Interval::closed(Q("7/11"), Q("8/11")));
  CHECK(level1[1].second == 1);

  auto level2 = f_components(levelk_open(Q("0"), Q("1"), 2), window);
  REQUIRE(level2.size() == 8);
  int tag1 = 0, tag2 = 0;
  for (const auto& [comp, tag] : level2) {
    if (tag == 1) ++tag1;
    if (tag == 2) ++tag2;
  }
  CHECK(tag1 == 2);
  CHECK(tag2 == 6);

  CHECK_THROWS_AS(f_components(closed_set({{"0", "1/2"}}), window), std::invalid_argument);
  CHECK_THROWS_AS(f_components(level1_open(Q("0"), Q("2")), window), std::invalid_argument);
}

TEST_CASE("7t flanks of the freshly created components lie in the open set") {
  for (int k = 1; k <= 3; ++k) {
    IntervalSet g = levelk_open(Q("0"), Q("1"), k);
    for (const auto& [comp, tag] : f_components(g, Interval::closed(Q("0"), Q("1")))) {
      if (tag != k) continue;
      Rational lo = comp.lo.value(), hi = comp.hi.value();
      Rational t = (hi - lo) * Q("1/2");
      Rational p = (hi + lo) * Q("1/2");
      IntervalSet flank = IntervalSet::canonical({
          Interval::open(p - Q("7") * t, p - t),
          Interval::open(p + t, p + Q("7") * t),
      });
      CHECK(subset_of(flank, g));
    }
  }
}

TEST_CASE("stage construction: ledger, nesting, openness") {
  LevelSchedule sched;
  sched.levels = {2, 2, 2};
  sched.budget = Q("99/100");

  CantorStage d0 = build_f_infinity(sched, 0);
  CHECK(d0.complement_measure() == Q("1"));
  CHECK(d0.ledger.empty());
  CHECK(d0.components.size() == 1);

  CantorStage d1 = build_f_infinity(sched, 1);
  CHECK(d1.ledger.size() == 1);
  CHECK(d1.ledger[0].added_measure == Q("81/121"));
  CHECK(d1.complement_measure() == Q("40/121"));
  CHECK(d1.components.size() == 8);
  CHECK(is_open(d1.accumulated_open));
  CHECK(measure(d1.accumulated_open) == ExtendedRational(Q("81/121")));

  CantorStage d2 = build_f_infinity(sched, 2);
  CHECK(d2.ledger[1].added_measure == Q("81/121") * Q("40/121"));
  CHECK(d2.complement_measure() == Q("1600/14641"));
  CHECK(d2.components.size() == 64);
  CHECK(is_open(d2.accumulated_open));
  CHECK(subset_of(d1.accumulated_open, d2.accumulated_open));
  CHECK(d2.complement_measure() < d1.complement_measure());
  // ledger agrees with the geometry exactly
  CHECK(d2.complement_measure() == Q("1") - measure(d2.accumulated_open).value());
  // every generation-2 component is tagged relative to its local window
  for (const auto& c : d2.components) {
    CHECK(c.generation == 2);
    CHECK(c.level_tag >= 1);
    CHECK(c.level_tag <= 2);
  }
}

TEST_CASE("default schedule stays within the default budget; ledger-only at scale") {
  LevelSchedule sched = LevelSchedule::default_for(3);
  CHECK(sched.levels == std::vector<int>{12, 16, 20});

  CantorStage d1 = build_f_infinity(sched, 1);
  CHECK(!d1.geometry);  // 531440 components exceed the default cap
  Rational g1 = Rational::pow(Q("9/11"), 12);
  CHECK(d1.ledger[0].added_measure == g1);
  CHECK(d1.complement_measure() == Q("1") - g1);
  CHECK(g1 < Q("1/8"));

  CantorStage d3 = build_f_infinity(sched, 3);
  CHECK(d3.complement_measure() >= Q("1/2"));
  CHECK(d3.ledger.size() == 3);
  // exact component counts: prod (3^l - 1)
  CHECK(d3.ledger[0].component_count == Q("531440"));
  CHECK(d3.ledger[1].component_count == Q("531440") * (Rational::pow(Q("3"), 16) - Q("1")));
  CHECK_THROWS_AS(density_window_check(d3), std::logic_error);
  CHECK_THROWS_AS(d3.complement_set(), std::logic_error);
}

TEST_CASE("budget violations are rejected with the exact overshoot") {
  LevelSchedule sched;
  sched.levels = {1};
  sched.budget = Q("1/2");
  CHECK_THROWS_WITH_AS(build_f_infinity(sched, 1), doctest::Contains("7/22"),
                       std::invalid_argument);
  CHECK_THROWS_AS(build_f_infinity(sched, 2), std::invalid_argument);  // schedule too short
  LevelSchedule bad;
  bad.levels = {0};
  CHECK_THROWS_AS(build_f_infinity(bad, 1), std::invalid_argument);
}

TEST_CASE("density windows: depth-1 single-level stage, exact 1/2 attained") {
  LevelSchedule sched;
  sched.levels = {1};
  sched.budget = Q("9/10");
  CantorStage st = build_f_infinity(sched, 1);
  REQUIRE(st.components.size() == 2);

  DensityWindowReport rep = density_window_check(st);
  CHECK(rep.pass);
  CHECK(rep.max_density == Q("1/2"));
  // the documented sample: x = 7/22 sees density 1/4 on both sides
  bool found = false;
  for (const auto& row : rep.rows) {
    if (row.x == Q("7/22")) {
      CHECK(row.density == Q("1/4"));
      found = true;
    }
  }
  CHECK(found);

  DensityWindowReport crit = density_window_check(st, true);
  CHECK(crit.pass);
  CHECK(crit.max_density == Q("1/2"));

  CantorStage d0 = build_f_infinity(sched, 0);
  CHECK(density_window_check(d0).rows.empty());
}

TEST_CASE("density windows: depth-2 truncated schedule, critical mode") {
  LevelSchedule sched;
  sched.levels = {2, 2};
  sched.budget = Q("99/100");
  for (int depth = 1; depth <= 2; ++depth) {
    CantorStage st = build_f_infinity(sched, depth);
    DensityWindowReport rep = density_window_check(st, true);
    CHECK(rep.pass);
    CHECK(rep.max_density == Q("1/2"));
  }
}

TEST_CASE("full-measure assembly: disjoint tiles, certified budget") {
  Interval window = Interval::closed(Q("0"), Q("1"));
  FullMeasureAssembly fm = build_full_measure_sosd(window, Q("1/4"), 2, 1);
  REQUIRE(fm.stages.size() == 2);
  CHECK(fm.uncovered_measure <= Q("1/4"));
  CHECK(fm.gap_measure == Q("1/32"));

  IntervalSet f0 = fm.stages[0].complement_set();
  IntervalSet f1 = fm.stages[1].complement_set();
  CHECK(intersect(f0, f1).empty());
  CHECK(!f0.empty());

  // uncovered = window - sum of the kept complements, exactly
  Rational kept = fm.stages[0].complement_measure() + fm.stages[1].complement_measure();
  CHECK(fm.uncovered_measure == Q("1") - kept);

  CHECK_THROWS_AS(build_full_measure_sosd(window, Q("0"), 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_full_measure_sosd(window, Q("1/4"), 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_full_measure_sosd(window, Q("1/4"), 2, 0), std::invalid_argument);
}

TEST_CASE("single-copy assembly matches a plain stage with the same budget") {
  Interval window = Interval::closed(Q("0"), Q("1"));
  FullMeasureAssembly fm = build_full_measure_sosd(window, Q("1/4"), 1, 1);
  REQUIRE(fm.stages.size() == 1);
  CHECK(fm.gap_measure == Q("0"));
  CHECK(fm.stages[0].window == window);
  // budget epsilon * 2^-1 * |window| = 1/8 needs (9/11)^l <= 1/8, so l = 11
  CHECK(fm.stages[0].ledger[0].level == 11);
  CHECK(fm.uncovered_measure == fm.stages[0].removed_measure());
  CHECK(fm.uncovered_measure <= Q("1/4"));
}

TEST_CASE("density window csv shape") {
  LevelSchedule sched;
  sched.levels = {1};
  sched.budget = Q("9/10");
  CantorStage st = build_f_infinity(sched, 1);
  std::string csv = density_window_csv(density_window_check(st));
  CHECK(csv.find("component_lo,component_hi,level,x,side,density\n") == 0);
  CHECK(csv.find("3/11,4/11,1,") != std::string::npos);
}
