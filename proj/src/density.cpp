#include "lipset/density.hpp"

#include <algorithm>
#include <sstream>

namespace lipset {

namespace {

void require_positive_radius(const Rational& r) {
  if (r.sign() <= 0) throw std::invalid_argument("density: radius must be positive");
}

// Prefix sums of part lengths: window masses against a fixed bounded set in
// O(log n) instead of a sweep, which matters when a scan takes thousands of
// mass queries against a stage with tens of thousands of parts. Falls back
// to measure_in when the set has unbounded parts.
class MassProfile {
 public:
  explicit MassProfile(const IntervalSet& set) : set_(set) {
    const auto& parts = set.parts();
    bounded_ = std::all_of(parts.begin(), parts.end(),
                           [](const Interval& p) { return p.finite(); });
    if (!bounded_) return;
    prefix_.reserve(parts.size() + 1);
    prefix_.emplace_back(0);
    for (const Interval& p : parts)
      prefix_.push_back(prefix_.back() + (p.hi.value() - p.lo.value()));
  }

  Rational mass(const Rational& lo, const Rational& hi) const {
    if (!(lo < hi)) return Rational(0);
    if (!bounded_) return measure_in(set_, Interval::closed(lo, hi));
    const auto& parts = set_.parts();
    auto il = std::partition_point(parts.begin(), parts.end(),
                                   [&](const Interval& p) { return p.hi.value() < lo; });
    auto ir = std::partition_point(il, parts.end(),
                                   [&](const Interval& p) { return p.lo.value() <= hi; });
    if (il == ir) return Rational(0);
    std::size_t a = static_cast<std::size_t>(il - parts.begin());
    std::size_t b = static_cast<std::size_t>(ir - parts.begin());  // one past
    Rational total = prefix_[b] - prefix_[a];
    if (parts[a].lo.value() < lo) total -= lo - parts[a].lo.value();
    if (parts[b - 1].hi.value() > hi) total -= parts[b - 1].hi.value() - hi;
    return total;
  }

 private:
  const IntervalSet& set_;
  bool bounded_;
  std::vector<Rational> prefix_;
};

}  // namespace

Rational left_density(const IntervalSet& e, const Rational& x, const Rational& r) {
  require_positive_radius(r);
  return measure_in(e, Interval::closed(x - r, x)) / r;
}

Rational right_density(const IntervalSet& e, const Rational& x, const Rational& r) {
  require_positive_radius(r);
  return measure_in(e, Interval::closed(x, x + r)) / r;
}

DensityProfile density_profile(const IntervalSet& e, const Rational& x,
                               const std::vector<Rational>& radii) {
  DensityProfile p;
  p.point = x;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (i > 0 && !(radii[i] < radii[i - 1]))
      throw std::invalid_argument("density_profile: radii must be strictly decreasing");
    Rational l = left_density(e, x, radii[i]);
    Rational r = right_density(e, x, radii[i]);
    p.rows.push_back({radii[i], l, r, max(l, r)});
  }
  return p;
}

SosdReport sosd_scan(const IntervalSet& e, const Rational& x, const Rational& r_max,
                     const Rational& r_min, const Rational& threshold,
                     const Rational& ratio) {
  if (!e.contains(x))
    throw std::domain_error("sosd_scan: point is not in the set");
  if (!(r_min.sign() > 0 && r_min < r_max))
    throw std::invalid_argument("sosd_scan: need 0 < r_min < r_max");
  if (threshold.sign() < 0 || threshold > Rational(1))
    throw std::invalid_argument("sosd_scan: threshold must lie in [0,1]");
  if (!(ratio.sign() > 0 && ratio < Rational(1)))
    throw std::invalid_argument("sosd_scan: ratio must lie in (0,1)");

  // Breakpoints of r -> |E ∩ [x-r,x]| and r -> |E ∩ [x,x+r]| are the
  // distances from x to the finite part endpoints.
  std::vector<Rational> critical{r_min, r_max};
  for (const Interval& p : e.parts()) {
    for (const ExtendedRational* ep : {&p.lo, &p.hi}) {
      if (!ep->finite()) continue;
      Rational d = (ep->value() - x).abs();
      if (r_min <= d && d <= r_max) critical.push_back(d);
    }
  }
  std::sort(critical.begin(), critical.end());
  critical.erase(std::unique(critical.begin(), critical.end()), critical.end());

  MassProfile profile(e);
  auto left_mass = [&](const Rational& r) { return profile.mass(x - r, x); };
  auto right_mass = [&](const Rational& r) { return profile.mass(x, x + r); };

  // One mass computation per critical radius; everything between them is
  // affine interpolation off these values.
  std::vector<Rational> lmass, rmass;
  lmass.reserve(critical.size());
  rmass.reserve(critical.size());
  for (const Rational& r : critical) {
    lmass.push_back(left_mass(r));
    rmass.push_back(right_mass(r));
  }

  SosdReport rep;
  rep.point = x;
  rep.r_min = r_min;
  rep.r_max = r_max;
  rep.threshold = threshold;
  bool first = true;
  auto consider = [&](const Rational& r, const Rational& lm, const Rational& rm) {
    Rational m = max(lm, rm) / r;
    if (first || m < rep.min_max_density || (m == rep.min_max_density && r < rep.worst_radius)) {
      rep.min_max_density = m;
      rep.worst_radius = r;
      first = false;
    }
  };

  for (std::size_t i = 0; i < critical.size(); ++i)
    consider(critical[i], lmass[i], rmass[i]);

  // Between consecutive critical radii both window masses are affine in r,
  // so max(left,right)/r is piecewise of the form alpha/r + beta and can
  // reach an interior minimum only where the two masses cross.
  for (std::size_t i = 0; i + 1 < critical.size(); ++i) {
    const Rational& r1 = critical[i];
    const Rational& r2 = critical[i + 1];
    Rational w = r2 - r1;
    Rational slope_l = (lmass[i + 1] - lmass[i]) / w;
    Rational slope_r = (rmass[i + 1] - rmass[i]) / w;
    if (slope_l == slope_r) continue;
    // lmass[i] + slope_l (r - r1) = rmass[i] + slope_r (r - r1)
    Rational rstar = r1 + (rmass[i] - lmass[i]) / (slope_l - slope_r);
    if (r1 < rstar && rstar < r2) {
      Rational lm = lmass[i] + slope_l * (rstar - r1);
      Rational rm = rmass[i] + slope_r * (rstar - r1);
      consider(rstar, lm, rm);
    }
  }

  // Geometric reporting grid; redundant for the minimum but part of the scan.
  {
    Rational r = r_max;
    int guard = 0;
    while (r >= r_min) {
      consider(r, left_mass(r), right_mass(r));
      r = r * ratio;
      if (++guard > 4096)
        throw std::invalid_argument("sosd_scan: ratio too close to 1");
    }
  }

  rep.pass = rep.min_max_density >= threshold;
  return rep;
}

std::string profile_csv(const DensityProfile& p, bool decimals) {
  std::ostringstream os;
  if (decimals)
    os << "x,x_dec,r,r_dec,left,left_dec,right,right_dec,max,max_dec\n";
  else
    os << "x,r,left,right,max\n";
  for (const DensityRow& row : p.rows) {
    if (decimals) {
      os << p.point << ',' << p.point.to_decimal() << ',' << row.radius << ','
         << row.radius.to_decimal() << ',' << row.left << ',' << row.left.to_decimal()
         << ',' << row.right << ',' << row.right.to_decimal() << ','
         << row.max_density << ',' << row.max_density.to_decimal() << '\n';
    } else {
      os << p.point << ',' << row.radius << ',' << row.left << ',' << row.right << ','
         << row.max_density << '\n';
    }
  }
  return os.str();
}

}  // namespace lipset
