#pragma once

#include <string>
#include <vector>

#include "lipset/rational.hpp"

namespace lipset {

// One interval of the extended rational line with explicit endpoint
// inclusivity. Invariants, enforced at construction:
//   * lo <= hi
//   * lo == hi only for a finite point with both endpoints closed
//   * an infinite endpoint is never closed
struct Interval {
  ExtendedRational lo;
  ExtendedRational hi;
  bool lo_closed;
  bool hi_closed;

  Interval(ExtendedRational lo_, ExtendedRational hi_, bool lo_closed_, bool hi_closed_);

  static Interval closed(const Rational& a, const Rational& b) {
    return Interval(a, b, true, true);
  }
  static Interval open(const ExtendedRational& a, const ExtendedRational& b) {
    return Interval(a, b, false, false);
  }
  static Interval point(const Rational& a) { return Interval(a, a, true, true); }
  static Interval full_line() {
    return Interval(ExtendedRational::neg_inf(), ExtendedRational::pos_inf(), false, false);
  }

  bool degenerate() const { return lo == hi; }
  bool finite() const { return lo.finite() && hi.finite(); }
  // Closed / open as a subset of the real line (half-lines with a closed
  // finite end are closed sets; the full line is both).
  bool closed_set() const {
    return (lo_closed || lo.is_neg_inf()) && (hi_closed || hi.is_pos_inf());
  }
  bool open_set() const { return !lo_closed && !hi_closed; }

  ExtendedRational length() const {
    if (!finite()) return ExtendedRational::pos_inf();
    return hi.value() - lo.value();
  }

  bool contains(const Rational& x) const;

  bool operator==(const Interval&) const = default;
  std::string to_string() const;
};

// Canonical finite union of pairwise disjoint, non-adjacent intervals,
// sorted by left endpoint. Two IntervalSets describe the same point set
// exactly when their parts are identical, so operator== is set equality.
// Values are immutable once constructed.
class IntervalSet {
 public:
  IntervalSet() = default;

  // Canonicalizes an arbitrary collection of intervals: sorts, merges
  // overlapping and adjacent parts, absorbs nested ones.
  static IntervalSet canonical(std::vector<Interval> parts);
  static IntervalSet single(const Interval& i) { return canonical({i}); }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }

  bool contains(const Rational& x) const;

  bool operator==(const IntervalSet&) const = default;
  std::string to_string() const;

 private:
  std::vector<Interval> parts_;
  friend IntervalSet intersect(const IntervalSet&, const IntervalSet&);
  friend IntervalSet intersect(const IntervalSet&, const Interval&);
  friend IntervalSet complement_in(const IntervalSet&, const Interval&);
};

IntervalSet union_of(const IntervalSet& a, const IntervalSet& b);
IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet intersect(const IntervalSet& a, const Interval& window);
// Set difference window \ a, exact on endpoint inclusivity.
IntervalSet complement_in(const IntervalSet& a, const Interval& window);

// Total length; degenerate points contribute zero; +inf for unbounded sets.
ExtendedRational measure(const IntervalSet& a);
// measure(intersect(a, window)); requires a finite window.
Rational measure_in(const IntervalSet& a, const Interval& window);

// inf |x - y| over y in a; +inf iff a is empty. Zero exactly on the closure.
ExtendedRational distance(const Rational& x, const IntervalSet& a);

// Ordered open components of R \ a, including up to two half-lines.
// Requires a closed (throws otherwise).
std::vector<Interval> contiguous_intervals(const IntervalSet& a);

bool is_closed(const IntervalSet& a);
bool is_open(const IntervalSet& a);
bool subset_of(const IntervalSet& a, const IntervalSet& b);

// Image under t -> scale*t + offset with scale > 0.
IntervalSet affine_image(const IntervalSet& a, const Rational& scale, const Rational& offset);

}  // namespace lipset
