#include <doctest.h>

#include "helpers.hpp"
#include "lipset/interval_set.hpp"
#include "lipset/rng.hpp"
#include "lipset/set_json.hpp"

using namespace lipset;
using testutil::closed_set;
using testutil::oracle_measure;
using testutil::oracle_member;
using testutil::probe_grid;
using testutil::Q;

namespace {

Interval open_iv(const char* a, const char* b) {
  return Interval::open(ext_from_string(a), ext_from_string(b));
}

IntervalSet random_raw(SplitMix64& rng, std::vector<Interval>& raw_out) {
  raw_out.clear();
  std::size_t n = rng.below(6);
  for (std::size_t i = 0; i < n; ++i) {
    Rational a = rand_dyadic(rng, Rational(-4), Rational(4), 7);
    Rational b = rand_dyadic(rng, Rational(-4), Rational(4), 7);
    if (a == b) {
      raw_out.push_back(Interval::point(a));
    } else {
      raw_out.push_back(Interval(min(a, b), max(a, b), rng.below(2) == 0, rng.below(2) == 0));
    }
  }
  return IntervalSet::canonical(raw_out);
}

}  // namespace

TEST_CASE("interval invariants are enforced") {
  CHECK_THROWS_AS(Interval(Rational(1), Rational(0), true, true), std::invalid_argument);
  CHECK_THROWS_AS(Interval(Rational(1), Rational(1), true, false), std::invalid_argument);
  CHECK_THROWS_AS(Interval(ExtendedRational::neg_inf(), Rational(0), true, true),
                  std::invalid_argument);
  CHECK_THROWS_AS(Interval(ExtendedRational::pos_inf(), ExtendedRational::pos_inf(),
                           false, false), std::invalid_argument);
  CHECK(Interval::point(Rational(1)).degenerate());
  CHECK(Interval::closed(Rational(0), Rational(1)).closed_set());
  CHECK(Interval(Rational(0), ExtendedRational::pos_inf(), true, false).closed_set());
  CHECK(Interval::full_line().closed_set());
  CHECK(Interval::full_line().open_set());
}

TEST_CASE("canonicalization merges, keeps open touchings apart, absorbs") {
  // adjacent closed intervals merge
  CHECK(IntervalSet::canonical({Interval::closed(Q("0"), Q("1")), Interval::closed(Q("1"), Q("2"))}) ==
        IntervalSet::single(Interval::closed(Q("0"), Q("2"))));
  // open intervals sharing an endpoint stay apart
  IntervalSet open_pair = IntervalSet::canonical({open_iv("0", "1"), open_iv("1", "2")});
  CHECK(open_pair.size() == 2);
  // absorption of a nested interval
  CHECK(IntervalSet::canonical({Interval::closed(Q("0"), Q("3")), Interval::closed(Q("1"), Q("2"))}) ==
        IntervalSet::single(Interval::closed(Q("0"), Q("3"))));
  // a point plugs an open touching
  CHECK(IntervalSet::canonical({open_iv("0", "1"), Interval::point(Q("1")), open_iv("1", "2")}) ==
        IntervalSet::single(open_iv("0", "2")));
  // half-open glue
  CHECK(IntervalSet::canonical({open_iv("0", "1"), Interval(Q("1"), Q("2"), true, false)}) ==
        IntervalSet::single(open_iv("0", "2")));
}

TEST_CASE("canonicalize preserves membership and is idempotent (seeded)") {
  SplitMix64 rng(101);
  for (int t = 0; t < 300; ++t) {
    std::vector<Interval> raw;
    IntervalSet s = random_raw(rng, raw);
    CHECK(IntervalSet::canonical(s.parts()) == s);
    for (const Rational& x : probe_grid(raw)) CHECK(s.contains(x) == oracle_member(raw, x));
    // parts pairwise disjoint, non-adjacent, sorted
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      const Interval& a = s.parts()[i];
      const Interval& b = s.parts()[i + 1];
      CHECK(a.hi <= b.lo);
      if (a.hi == b.lo) CHECK(!a.hi_closed);
      if (a.hi == b.lo) CHECK(!b.lo_closed);
    }
  }
}

TEST_CASE("union, intersection, complement match the worked examples") {
  IntervalSet level1 = load_set_file(std::string(LIPSET_DATA_DIR) + "/sets/level1_open.json");
  IntervalSet comp = complement_in(level1, Interval::closed(Q("0"), Q("1")));
  IntervalSet expected = IntervalSet::canonical({Interval::point(Q("0")),
                                                 Interval::closed(Q("3/11"), Q("4/11")),
                                                 Interval::closed(Q("7/11"), Q("8/11")),
                                                 Interval::point(Q("1"))});
  CHECK(comp == expected);

  CHECK(intersect(closed_set({{"0", "1"}}), closed_set({{"1", "2"}})) ==
        IntervalSet::single(Interval::point(Q("1"))));
  CHECK(union_of(IntervalSet(), closed_set({{"0", "1"}})) == closed_set({{"0", "1"}}));
}

TEST_CASE("measure examples") {
  CHECK(measure(closed_set({{"0", "1/2"}, {"3/4", "1"}})) == ExtendedRational(Q("3/4")));
  CHECK(measure(IntervalSet::single(Interval::point(Q("1")))) == ExtendedRational(Q("0")));
  IntervalSet level1 = load_set_file(std::string(LIPSET_DATA_DIR) + "/sets/level1_open.json");
  CHECK(measure(level1) == ExtendedRational(Q("9/11")));
  CHECK(measure(IntervalSet::single(Interval(Q("0"), ExtendedRational::pos_inf(), true, false)))
            .is_pos_inf());
  CHECK(measure(IntervalSet()) == ExtendedRational(Q("0")));
}

TEST_CASE("measure_in examples and window validation") {
  IntervalSet unit = closed_set({{"0", "1"}});
  CHECK(measure_in(unit, Interval::closed(Q("1/4"), Q("3/4"))) == Q("1/2"));
  CHECK(measure_in(unit, Interval::closed(Q("2"), Q("3"))) == Q("0"));
  IntervalSet blocks = closed_set({{"0", "1"}, {"2", "3"}});
  CHECK(measure_in(blocks, Interval::closed(Q("1/2"), Q("5/2"))) == Q("1"));
  CHECK_THROWS_AS(measure_in(unit, Interval(Q("0"), ExtendedRational::pos_inf(), true, false)),
                  std::invalid_argument);
}

TEST_CASE("distance examples and closure property") {
  IntervalSet unit = closed_set({{"0", "1"}});
  CHECK(distance(Q("2"), unit) == ExtendedRational(Q("1")));
  CHECK(distance(Q("1/2"), unit) == ExtendedRational(Q("0")));
  CHECK(distance(Q("0"), IntervalSet()).is_pos_inf());
  IntervalSet open_unit = IntervalSet::single(open_iv("0", "1"));
  CHECK(distance(Q("0"), open_unit) == ExtendedRational(Q("0")));  // closure point
  CHECK(distance(Q("-1/2"), open_unit) == ExtendedRational(Q("1/2")));
  IntervalSet blocks = closed_set({{"0", "1"}, {"2", "3"}});
  CHECK(distance(Q("3/2"), blocks) == ExtendedRational(Q("1/2")));
  CHECK(distance(Q("17/10"), blocks) == ExtendedRational(Q("3/10")));
}

TEST_CASE("contiguous intervals of a closed set") {
  IntervalSet unit = closed_set({{"0", "1"}});
  auto c1 = contiguous_intervals(unit);
  REQUIRE(c1.size() == 2);
  CHECK(c1[0] == Interval(ExtendedRational::neg_inf(), Q("0"), false, false));
  CHECK(c1[1] == Interval(Q("1"), ExtendedRational::pos_inf(), false, false));

  IntervalSet blocks = closed_set({{"0", "1"}, {"2", "3"}});
  auto c2 = contiguous_intervals(blocks);
  REQUIRE(c2.size() == 3);
  CHECK(c2[1] == open_iv("1", "2"));

  auto c3 = contiguous_intervals(IntervalSet());
  REQUIRE(c3.size() == 1);
  CHECK(c3[0] == Interval::full_line());

  CHECK_THROWS_AS(contiguous_intervals(IntervalSet::single(open_iv("0", "1"))),
                  std::invalid_argument);
}

TEST_CASE("closedness predicate") {
  CHECK(is_closed(closed_set({{"0", "1"}})));
  CHECK(!is_closed(IntervalSet::single(open_iv("0", "1"))));
  CHECK(is_closed(IntervalSet::single(Interval::point(Q("1")))));
  CHECK(is_closed(IntervalSet()));
  CHECK(is_closed(IntervalSet::single(Interval(Q("0"), ExtendedRational::pos_inf(), true, false))));
  CHECK(!is_closed(IntervalSet::single(Interval(Q("0"), ExtendedRational::pos_inf(), false, false))));
}

TEST_CASE("boolean laws against the membership oracle (seeded)") {
  SplitMix64 rng(202);
  Interval window = Interval::closed(Q("-5"), Q("5"));
  for (int t = 0; t < 200; ++t) {
    std::vector<Interval> raw_a, raw_b;
    IntervalSet a = random_raw(rng, raw_a);
    IntervalSet b = random_raw(rng, raw_b);
    IntervalSet u = union_of(a, b);
    IntervalSet i = intersect(a, b);

    // outputs canonical
    CHECK(IntervalSet::canonical(u.parts()) == u);
    CHECK(IntervalSet::canonical(i.parts()) == i);

    // absorption
    CHECK(union_of(u, a) == u);
    CHECK(intersect(i, a) == i);
    CHECK(union_of(a, intersect(a, b)) == a);
    CHECK(intersect(a, union_of(a, b)) == a);

    // associativity and distributivity with a third set
    std::vector<Interval> raw_c;
    IntervalSet c = random_raw(rng, raw_c);
    CHECK(union_of(union_of(a, b), c) == union_of(a, union_of(b, c)));
    CHECK(intersect(intersect(a, b), c) == intersect(a, intersect(b, c)));
    CHECK(intersect(a, union_of(b, c)) == union_of(intersect(a, b), intersect(a, c)));

    // exact additivity on the window
    CHECK(measure_in(u, window) + measure_in(i, window) ==
          measure_in(a, window) + measure_in(b, window));

    // De Morgan within the window
    CHECK(complement_in(u, window) == intersect(complement_in(a, window), complement_in(b, window)));
    CHECK(complement_in(i, window) == union_of(complement_in(a, window), complement_in(b, window)));

    // measure agrees with the sweep oracle for bounded sets
    CHECK(measure_in(a, window) == oracle_measure(raw_a));
  }
}

TEST_CASE("affine image is exact") {
  IntervalSet s = IntervalSet::canonical({open_iv("0", "1"), Interval::point(Q("2"))});
  IntervalSet img = affine_image(s, Q("3"), Q("-1"));
  CHECK(img == IntervalSet::canonical({open_iv("-1", "2"), Interval::point(Q("5"))}));
  CHECK_THROWS_AS(affine_image(s, Q("0"), Q("1")), std::invalid_argument);
}

TEST_CASE("json round trip is canonical and rejects malformed parts") {
  IntervalSet s = IntervalSet::canonical(
      {Interval::closed(Q("0"), Q("1")), open_iv("1", "2"), Interval::point(Q("3"))});
  nlohmann::json j = set_to_json(s);
  CHECK(set_from_json(j) == s);

  nlohmann::json bad = {{"parts", {{{"lo", "2"}, {"hi", "1"}, {"lo_closed", true}, {"hi_closed", true}}}}};
  CHECK_THROWS_WITH_AS(set_from_json(bad), doctest::Contains("parts[0]"), std::invalid_argument);
  nlohmann::json bad2 = {{"parts", {{{"lo", "0"}, {"hi", "x"}, {"lo_closed", true}, {"hi_closed", true}}}}};
  CHECK_THROWS_AS(set_from_json(bad2), std::invalid_argument);
  CHECK_THROWS_AS(set_from_json(nlohmann::json::array()), std::invalid_argument);

  // non-canonical input parses to canonical form
  nlohmann::json merged = {{"parts", {
    {{"lo", "0"}, {"hi", "1"}, {"lo_closed", true}, {"hi_closed", true}},
    {{"lo", "1"}, {"hi", "2"}, {"lo_closed", true}, {"hi_closed", true}}}}};
  CHECK(set_from_json(merged) == closed_set({{"0", "2"}}));
}
