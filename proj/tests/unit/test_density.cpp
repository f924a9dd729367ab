#include <doctest.h>

#include "helpers.hpp"
#include "lipset/cantor.hpp"
#include "lipset/density.hpp"
#include "lipset/rng.hpp"

using namespace lipset;
using testutil::closed_set;
using testutil::Q;

TEST_CASE("one-sided densities at interior, endpoint and between blocks") {
  IntervalSet unit = closed_set({{"0", "1"}});
  CHECK(left_density(unit, Q("1/2"), Q("1/10")) == Q("1"));
  CHECK(right_density(unit, Q("1/2"), Q("1/10")) == Q("1"));
  CHECK(left_density(unit, Q("1"), Q("1/10")) == Q("1"));
  CHECK(right_density(unit, Q("1"), Q("1/10")) == Q("0"));
  IntervalSet blocks = closed_set({{"0", "1"}, {"2", "3"}});
  CHECK(left_density(blocks, Q("3/2"), Q("1")) == Q("1/2"));
  CHECK(right_density(blocks, Q("3/2"), Q("1")) == Q("1/2"));
  CHECK_THROWS_AS(left_density(unit, Q("0"), Q("0")), std::invalid_argument);
  CHECK_THROWS_AS(right_density(unit, Q("0"), Q("-1")), std::invalid_argument);
}

TEST_CASE("density profile rows") {
  IntervalSet unit = closed_set({{"0", "1"}});
  auto prof = density_profile(unit, Q("1/3"), {Q("1/4"), Q("1/8"), Q("1/16")});
  REQUIRE(prof.rows.size() == 3);
  for (const auto& row : prof.rows) CHECK(row.max_density == Q("1"));

  auto empty_prof = density_profile(IntervalSet(), Q("7"), {Q("1/2"), Q("1/4")});
  for (const auto& row : empty_prof.rows) {
    CHECK(row.left == Q("0"));
    CHECK(row.right == Q("0"));
  }
  CHECK_THROWS_AS(density_profile(unit, Q("0"), {Q("1/4"), Q("1/2")}), std::invalid_argument);
}

TEST_CASE("profile at the midpoint of a depth-2 stage component") {
  // max one-sided density of the complement at radius 4t from the component
  // midpoint is exactly 1/4: the window holds the t-half of the component
  // and otherwise pure removed territory.
  LevelSchedule sched;
  sched.levels = {2, 2};
  sched.budget = Q("99/100");
  CantorStage st = build_f_infinity(sched, 2);
  IntervalSet f_set = st.complement_set();
  const TaggedComponent* target = nullptr;
  for (const auto& c : st.components)
    if (c.generation == 2 && c.level_tag == 2) { target = &c; break; }
  REQUIRE(target != nullptr);
  Rational lo = target->interval.lo.value(), hi = target->interval.hi.value();
  Rational t = (hi - lo) * Q("1/2");
  Rational p = (hi + lo) * Q("1/2");
  auto prof = density_profile(f_set, p, {Q("4") * t, t});
  CHECK(prof.rows[0].max_density == Q("1/4"));
  CHECK(prof.rows[0].max_density <= Q("1/2"));
  CHECK(prof.rows[1].max_density == Q("1"));
}

TEST_CASE("sosd scan passes on solid neighbourhoods") {
  IntervalSet unit = closed_set({{"0", "1"}});
  SosdReport rep = sosd_scan(unit, Q("1/2"), Q("1/4"), Rational::pow2(-20), Q("99/100"));
  CHECK(rep.pass);
  CHECK(rep.min_max_density == Q("1"));

  // endpoint shared between far-apart blocks: left windows stay solid
  IntervalSet blocks = closed_set({{"0", "1"}, {"2", "3"}});
  SosdReport rep2 = sosd_scan(blocks, Q("1"), Q("1/2"), Q("1/4096"), Q("99/100"));
  CHECK(rep2.pass);
  CHECK(rep2.min_max_density == Q("1"));
}

TEST_CASE("sosd scan fails on a two-sided gap and is exact about it") {
  // {0} plus blocks [2^-2k - 4^-2k, 2^-2k] for k=1..3: near 0 both sides
  // starve at the scale just below the innermost block.
  IntervalSet gappy = IntervalSet::canonical({
      Interval::point(Q("0")),
      Interval::closed(Q("3/16"), Q("1/4")),
      Interval::closed(Q("15/256"), Q("1/16")),
      Interval::closed(Q("63/4096"), Q("1/64")),
  });
  SosdReport rep = sosd_scan(gappy, Q("0"), Q("1/4"), Q("1/128"));
  CHECK(!rep.pass);
  CHECK(rep.min_max_density == Q("0"));  // left side empty, right gap below 63/4096
  CHECK(rep.worst_radius == Q("1/128"));
  CHECK(rep.worst_radius <= Q("63/4096"));

  CHECK_THROWS_AS(sosd_scan(gappy, Q("1/2"), Q("1/4"), Q("1/128")), std::domain_error);
}

TEST_CASE("scan minimum matches a dense brute-force sweep (seeded)") {
  SplitMix64 rng(303);
  for (int t = 0; t < 20; ++t) {
    std::vector<Interval> raw{Interval::closed(Q("0"), Q("1/4"))};
    std::size_t extra = rng.below(4);
    for (std::size_t i = 0; i < extra; ++i) {
      Rational a = rand_dyadic(rng, Q("-2"), Q("2"), 6);
      Rational b = rand_dyadic(rng, Q("-2"), Q("2"), 6);
      if (a == b) continue;
      raw.push_back(Interval::closed(min(a, b), max(a, b)));
    }
    IntervalSet e = IntervalSet::canonical(raw);
    Rational x = rand_dyadic(rng, Q("0"), Q("1/4"), 5);
    Rational r_min = Q("1/64"), r_max = Q("3/2");
    SosdReport rep = sosd_scan(e, x, r_max, r_min);
    Rational attained = max(left_density(e, x, rep.worst_radius),
                            right_density(e, x, rep.worst_radius));
    CHECK(attained == rep.min_max_density);
    for (int k = 0; k <= 400; ++k) {
      Rational r = r_min + (r_max - r_min) * Rational(k, 400);
      CHECK(max(left_density(e, x, r), right_density(e, x, r)) >= rep.min_max_density);
    }
  }
}

TEST_CASE("full line passes everywhere with density one") {
  IntervalSet line = IntervalSet::single(Interval::full_line());
  SosdReport rep = sosd_scan(line, Q("-17/3"), Q("2"), Q("1/1024"));
  CHECK(rep.pass);
  CHECK(rep.min_max_density == Q("1"));
}

TEST_CASE("profile csv shape") {
  IntervalSet unit = closed_set({{"0", "1"}});
  auto prof = density_profile(unit, Q("1/3"), {Q("1/4")});
  std::string csv = profile_csv(prof);
  CHECK(csv == "x,r,left,right,max\n1/3,1/4,1,1,1\n");
  std::string csvd = profile_csv(prof, true);
  CHECK(csvd.find("x,x_dec,r,r_dec,left,left_dec") == 0);
  CHECK(csvd.find("0.333333333333") != std::string::npos);
}
