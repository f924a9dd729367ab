#pragma once

#include <vector>

#include "lipset/interval_set.hpp"
#include "lipset/rng.hpp"
#include "lipset/set_json.hpp"

namespace testutil {

using lipset::ExtendedRational;
using lipset::Interval;
using lipset::IntervalSet;
using lipset::Rational;

inline Rational Q(const char* s) { return Rational::from_string(s); }

inline IntervalSet closed_set(std::initializer_list<std::pair<const char*, const char*>> parts) {
  std::vector<Interval> v;
  for (const auto& [a, b] : parts) v.push_back(Interval::closed(Q(a), Q(b)));
  return IntervalSet::canonical(std::move(v));
}

// ---- independent oracles (no IntervalSet machinery) ------------------------

// Membership straight off the raw interval list.
inline bool oracle_member(const std::vector<Interval>& raw, const Rational& x) {
  for (const Interval& i : raw) {
    bool lo_ok = !i.lo.finite() || i.lo.value() < x || (i.lo.value() == x && i.lo_closed);
    bool hi_ok = !i.hi.finite() || x < i.hi.value() || (x == i.hi.value() && i.hi_closed);
    if (lo_ok && hi_ok) return true;
  }
  return false;
}

// Measure by coordinate sweep: sort the finite endpoint values and add the
// length of every open gap whose midpoint is covered. Assumes bounded input.
inline Rational oracle_measure(const std::vector<Interval>& raw) {
  std::vector<Rational> cuts;
  for (const Interval& i : raw) {
    cuts.push_back(i.lo.value());
    cuts.push_back(i.hi.value());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  Rational total;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    Rational mid = (cuts[k] + cuts[k + 1]) * Rational(1, 2);
    if (oracle_member(raw, mid)) total += cuts[k + 1] - cuts[k];
  }
  return total;
}

inline std::vector<Rational> probe_grid(const std::vector<Interval>& raw) {
  std::vector<Rational> vals;
  for (const Interval& i : raw) {
    if (i.lo.finite()) vals.push_back(i.lo.value());
    if (i.hi.finite()) vals.push_back(i.hi.value());
  }
  std::vector<Rational> out;
  const Rational eps(1, 512);
  for (const Rational& v : vals) {
    out.push_back(v - eps);
    out.push_back(v);
    out.push_back(v + eps);
  }
  std::sort(vals.begin(), vals.end());
  for (std::size_t k = 0; k + 1 < vals.size(); ++k)
    out.push_back((vals[k] + vals[k + 1]) * Rational(1, 2));
  out.push_back(Rational(-9));
  out.push_back(Rational(9));
  return out;
}

}  // namespace testutil
