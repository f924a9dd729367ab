#pragma once

#include <string>
#include <vector>

#include "lipset/interval_set.hpp"

namespace lipset {

// One-sided Lebesgue densities |E ∩ [x-r,x]| / r and |E ∩ [x,x+r]| / r,
// exact rationals in [0,1]. r must be positive.
Rational left_density(const IntervalSet& e, const Rational& x, const Rational& r);
Rational right_density(const IntervalSet& e, const Rational& x, const Rational& r);

struct DensityRow {
  Rational radius;
  Rational left;
  Rational right;
  Rational max_density;  // max(left, right)
};

struct DensityProfile {
  Rational point;
  std::vector<DensityRow> rows;
};

// One row per radius; radii must be positive and strictly decreasing.
DensityProfile density_profile(const IntervalSet& e, const Rational& x,
                               const std::vector<Rational>& radii);

struct SosdReport {
  Rational point;
  Rational r_min;
  Rational r_max;
  Rational threshold;
  Rational min_max_density;  // exact min of max(left,right) over [r_min, r_max]
  Rational worst_radius;     // smallest radius attaining the minimum
  bool pass;                 // min_max_density >= threshold
};

// Finite-radius surrogate of the strong one-sided density condition at a
// point of e. Scans a geometric grid joined with every critical radius
// |x - endpoint| and the induced crossings of the two one-sided window
// masses; between those radii each one-sided density is r -> alpha/r + beta,
// monotone, so the reported minimum is the exact minimum over [r_min, r_max].
// The verdict is only a statement about that radius range.
SosdReport sosd_scan(const IntervalSet& e, const Rational& x, const Rational& r_max,
                     const Rational& r_min, const Rational& threshold = Rational(9, 10),
                     const Rational& ratio = Rational(1, 2));

// CSV export, header "x,r,left,right,max"; with decimals each exact column
// is followed by a 12-significant-digit decimal twin.
std::string profile_csv(const DensityProfile& p, bool decimals = false);

}  // namespace lipset
