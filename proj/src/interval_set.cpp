#include "lipset/interval_set.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace lipset {

namespace {

// A boundary position on the extended line. tag -1 sits just below the
// value, 0 at the value, +1 just above. Ordering positions lexicographically
// by (value, tag) turns every endpoint-inclusivity question into a plain
// comparison: an interval covers position p iff start <= p <= end.
struct Pos {
  ExtendedRational v;
  int tag;

  friend bool operator==(const Pos& a, const Pos& b) {
    return a.tag == b.tag && a.v == b.v;
  }
  friend std::strong_ordering operator<=>(const Pos& a, const Pos& b) {
    auto c = a.v <=> b.v;
    if (c != std::strong_ordering::equal) return c;
    return a.tag <=> b.tag;
  }
};

Pos start_pos(const Interval& i) {
  return i.lo_closed ? Pos{i.lo, 0} : Pos{i.lo, +1};
}

Pos end_pos(const Interval& i) {
  return i.hi_closed ? Pos{i.hi, 0} : Pos{i.hi, -1};
}

// Successor / predecessor within the three positions sharing a value.
// Across distinct values there is a continuum gap, signalled by nullopt.
std::optional<Pos> succ(const Pos& p) {
  if (p.tag < +1) return Pos{p.v, p.tag + 1};
  return std::nullopt;
}

std::optional<Pos> pred(const Pos& p) {
  if (p.tag > -1) return Pos{p.v, p.tag - 1};
  return std::nullopt;
}

Interval interval_from(const Pos& s, const Pos& e) {
  return Interval(s.v, e.v, s.tag == 0, e.tag == 0);
}

}  // namespace

Interval::Interval(ExtendedRational lo_, ExtendedRational hi_, bool lo_closed_,
                   bool hi_closed_)
    : lo(std::move(lo_)), hi(std::move(hi_)), lo_closed(lo_closed_), hi_closed(hi_closed_) {
  if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
  if (!lo.finite() && lo_closed) throw std::invalid_argument("Interval: infinite endpoint cannot be closed");
  if (!hi.finite() && hi_closed) throw std::invalid_argument("Interval: infinite endpoint cannot be closed");
  if (lo == hi) {
    if (!lo.finite()) throw std::invalid_argument("Interval: degenerate interval at infinity");
    if (!lo_closed || !hi_closed)
      throw std::invalid_argument("Interval: degenerate interval must be closed");
  }
}

bool Interval::contains(const Rational& x) const {
  Pos p{ExtendedRational(x), 0};
  return start_pos(*this) <= p && p <= end_pos(*this);
}

std::string Interval::to_string() const {
  std::ostringstream os;
  os << (lo_closed ? '[' : '(') << lo << ',' << hi << (hi_closed ? ']' : ')');
  return os.str();
}

IntervalSet IntervalSet::canonical(std::vector<Interval> parts) {
  IntervalSet out;
  if (parts.empty()) return out;
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
    Pos sa = start_pos(a), sb = start_pos(b);
    if (sa != sb) return sa < sb;
    return end_pos(a) < end_pos(b);
  });
  Pos cs = start_pos(parts.front());
  Pos ce = end_pos(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) {
    Pos s = start_pos(parts[i]);
    Pos e = end_pos(parts[i]);
    auto nxt = succ(ce);
    if (s <= ce || (nxt && s == *nxt)) {
      if (e > ce) ce = e;
    } else {
      out.parts_.push_back(interval_from(cs, ce));
      cs = s;
      ce = e;
    }
  }
  out.parts_.push_back(interval_from(cs, ce));
  return out;
}

bool IntervalSet::contains(const Rational& x) const {
  Pos p{ExtendedRational(x), 0};
  // first part whose end reaches p
  auto it = std::partition_point(parts_.begin(), parts_.end(),
                                 [&](const Interval& i) { return end_pos(i) < p; });
  return it != parts_.end() && start_pos(*it) <= p;
}

std::string IntervalSet::to_string() const {
  if (parts_.empty()) return "{}";
  std::ostringstream os;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << " u ";
    os << parts_[i].to_string();
  }
  return os.str();
}

IntervalSet union_of(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> parts = a.parts();
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  return IntervalSet::canonical(std::move(parts));
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out;
  std::size_t i = 0, j = 0;
  while (i < a.parts().size() && j < b.parts().size()) {
    const Interval& x = a.parts()[i];
    const Interval& y = b.parts()[j];
    Pos s = std::max(start_pos(x), start_pos(y));
    Pos e = std::min(end_pos(x), end_pos(y));
    if (s <= e) out.parts_.push_back(interval_from(s, e));
    if (end_pos(x) < end_pos(y))
      ++i;
    else
      ++j;
  }
  return out;
}

IntervalSet intersect(const IntervalSet& a, const Interval& window) {
  // Binary search the run of parts that can overlap the window, so narrow
  // windows over large sets stay cheap.
  IntervalSet out;
  const auto& parts = a.parts();
  Pos ws = start_pos(window);
  Pos we = end_pos(window);
  auto it = std::partition_point(parts.begin(), parts.end(),
                                 [&](const Interval& i) { return end_pos(i) < ws; });
  for (; it != parts.end(); ++it) {
    Pos s = start_pos(*it);
    if (s > we) break;
    Pos e = std::min(end_pos(*it), we);
    if (s < ws) s = ws;
    if (s <= e) out.parts_.push_back(interval_from(s, e));
  }
  return out;
}

IntervalSet complement_in(const IntervalSet& a, const Interval& window) {
  IntervalSet inside = intersect(a, window);
  IntervalSet out;
  Pos cursor = start_pos(window);
  bool exhausted = false;
  for (const Interval& part : inside.parts()) {
    auto gap_end = pred(start_pos(part));
    if (gap_end && cursor <= *gap_end) out.parts_.push_back(interval_from(cursor, *gap_end));
    auto nxt = succ(end_pos(part));
    if (!nxt) {
      exhausted = true;
      break;
    }
    cursor = *nxt;
  }
  if (!exhausted && cursor <= end_pos(window))
    out.parts_.push_back(interval_from(cursor, end_pos(window)));
  return out;
}

ExtendedRational measure(const IntervalSet& a) {
  Rational total;
  for (const Interval& p : a.parts()) {
    if (!p.finite()) return ExtendedRational::pos_inf();
    total += p.hi.value() - p.lo.value();
  }
  return total;
}

Rational measure_in(const IntervalSet& a, const Interval& window) {
  if (!window.finite())
    throw std::invalid_argument("measure_in: window must have finite endpoints");
  // Endpoint inclusivity cannot change a measure, so this works on values
  // alone and never materializes the intersection.
  const Rational& wlo = window.lo.value();
  const Rational& whi = window.hi.value();
  const auto& parts = a.parts();
  ExtendedRational wlo_ext{wlo};
  auto it = std::partition_point(parts.begin(), parts.end(),
                                 [&](const Interval& i) { return i.hi < wlo_ext; });
  Rational total;
  for (; it != parts.end(); ++it) {
    if (it->lo.finite() && it->lo.value() > whi) break;
    const Rational& lo = it->lo.finite() && it->lo.value() > wlo ? it->lo.value() : wlo;
    const Rational& hi = it->hi.finite() && it->hi.value() < whi ? it->hi.value() : whi;
    if (lo < hi) total += hi - lo;
  }
  return total;
}

ExtendedRational distance(const Rational& x, const IntervalSet& a) {
  if (a.empty()) return ExtendedRational::pos_inf();
  const auto& parts = a.parts();
  ExtendedRational pos{x};
  // first part with hi >= x
  auto it = std::partition_point(parts.begin(), parts.end(),
                                 [&](const Interval& i) { return i.hi < pos; });
  if (it == parts.end()) return x - parts.back().hi.value();
  if (it->lo <= pos) return Rational(0);
  Rational best = it->lo.value() - x;
  if (it != parts.begin()) {
    const Interval& prev = *(it - 1);
    best = min(best, x - prev.hi.value());
  }
  return best;
}

std::vector<Interval> contiguous_intervals(const IntervalSet& a) {
  if (!is_closed(a))
    throw std::invalid_argument("contiguous_intervals: set is not closed");
  return complement_in(a, Interval::full_line()).parts();
}

bool is_closed(const IntervalSet& a) {
  return std::all_of(a.parts().begin(), a.parts().end(),
                     [](const Interval& i) { return i.closed_set(); });
}

bool is_open(const IntervalSet& a) {
  return std::all_of(a.parts().begin(), a.parts().end(),
                     [](const Interval& i) { return i.open_set(); });
}

bool subset_of(const IntervalSet& a, const IntervalSet& b) {
  return intersect(a, b) == a;
}

IntervalSet affine_image(const IntervalSet& a, const Rational& scale,
                         const Rational& offset) {
  if (scale.sign() <= 0) throw std::invalid_argument("affine_image: scale must be positive");
  std::vector<Interval> parts;
  parts.reserve(a.size());
  auto map = [&](const ExtendedRational& v) -> ExtendedRational {
    if (!v.finite()) return v;
    return scale * v.value() + offset;
  };
  for (const Interval& p : a.parts())
    parts.emplace_back(map(p.lo), map(p.hi), p.lo_closed, p.hi_closed);
  return IntervalSet::canonical(std::move(parts));
}

}  // namespace lipset
