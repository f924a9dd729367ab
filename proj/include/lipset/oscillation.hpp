#pragma once

#include <string>
#include <vector>

#include "lipset/lip_function.hpp"

namespace lipset {

struct OscillationBound {
  Rational lower;  // max grid oscillation / r
  Rational upper;  // lower + 1/(2*refinement)
};

// Two-sided enclosure of M_f(x,r) = sup{|f(x)-f(y)| : |x-y| <= r} / r.
// f is evaluated exactly on refinement+1 equispaced points over each of
// [x-r, x] and [x, x+r]. Any y is within half a grid step of a grid point,
// so for 1-Lipschitz f the true supremum exceeds the grid maximum by at
// most (r/refinement)/2, giving upper - lower = 1/(2*refinement) exactly.
OscillationBound oscillation_ratio(const LipFunction& f, const Rational& x,
                                   const Rational& r, int refinement);

struct LipScanRow {
  Rational radius;
  Rational lower;
  Rational upper;
};

struct LipEstimate {
  Rational x;
  Rational r_min;
  Rational r_max;
  Rational lip_lower, lip_upper;  // min of the per-radius enclosures
  Rational Lip_lower, Lip_upper;  // max of the per-radius enclosures
  std::vector<LipScanRow> rows;
};

// Enclosures of M_f over the geometric radius grid r_max, r_max*ratio, ...
// down to r_min; the liminf/limsup surrogates are the min/max over the
// scanned radii only; no claim is made beyond the declared range.
LipEstimate lip_scan(const LipFunction& f, const Rational& x, const Rational& r_max,
                     const Rational& r_min, const Rational& ratio = Rational(1, 2),
                     int refinement = 64);

// "x,r,mf_lower,mf_upper" rows followed by a summary row per estimate.
std::string lip_scan_csv(const LipEstimate& e, bool decimals = false);

}  // namespace lipset
