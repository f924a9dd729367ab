#include "lipset/oscillation.hpp"

#include <sstream>

namespace lipset {

OscillationBound oscillation_ratio(const LipFunction& f, const Rational& x,
                                   const Rational& r, int refinement) {
  if (r.sign() <= 0) throw std::invalid_argument("oscillation_ratio: r must be positive");
  if (refinement < 2) throw std::invalid_argument("oscillation_ratio: refinement must be >= 2");

  Rational fx = f.eval(x);
  Rational step = r / Rational(refinement);
  Rational best(0);
  for (int i = 0; i <= refinement; ++i) {
    Rational d = Rational(i) * step;
    Rational osc_l = (f.eval(x - d) - fx).abs();
    Rational osc_r = (f.eval(x + d) - fx).abs();
    best = max(best, max(osc_l, osc_r));
  }
  Rational lower = best / r;
  return {lower, lower + Rational(1, 2L * refinement)};
}

LipEstimate lip_scan(const LipFunction& f, const Rational& x, const Rational& r_max,
                     const Rational& r_min, const Rational& ratio, int refinement) {
  if (!(r_min.sign() > 0 && r_min < r_max))
    throw std::invalid_argument("lip_scan: need 0 < r_min < r_max");
  if (!(ratio.sign() > 0 && ratio < Rational(1)))
    throw std::invalid_argument("lip_scan: ratio must lie in (0,1)");

  LipEstimate est;
  est.x = x;
  est.r_min = r_min;
  est.r_max = r_max;

  Rational r = r_max;
  int guard = 0;
  while (r >= r_min) {
    OscillationBound b = oscillation_ratio(f, x, r, refinement);
    est.rows.push_back({r, b.lower, b.upper});
    r = r * ratio;
    if (++guard > 4096) throw std::invalid_argument("lip_scan: ratio too close to 1");
  }

  for (std::size_t i = 0; i < est.rows.size(); ++i) {
    const LipScanRow& row = est.rows[i];
    if (i == 0) {
      est.lip_lower = est.Lip_lower = row.lower;
      est.lip_upper = est.Lip_upper = row.upper;
    } else {
      est.lip_lower = min(est.lip_lower, row.lower);
      est.lip_upper = min(est.lip_upper, row.upper);
      est.Lip_lower = max(est.Lip_lower, row.lower);
      est.Lip_upper = max(est.Lip_upper, row.upper);
    }
  }

  // r * M_f(x,r) is the sup over a window that only grows with r, so the
  // scaled enclosures of consecutive radii must stay consistently ordered.
  for (std::size_t i = 0; i + 1 < est.rows.size(); ++i) {
    const LipScanRow& big = est.rows[i];
    const LipScanRow& small = est.rows[i + 1];
    if (small.radius * small.lower > big.radius * big.upper)
      throw std::logic_error("lip_scan: window-sup monotonicity violated");
  }
  return est;
}

std::string lip_scan_csv(const LipEstimate& e, bool decimals) {
  std::ostringstream os;
  if (decimals)
    os << "x,x_dec,r,r_dec,mf_lower,mf_lower_dec,mf_upper,mf_upper_dec\n";
  else
    os << "x,r,mf_lower,mf_upper\n";
  for (const LipScanRow& row : e.rows) {
    if (decimals)
      os << e.x << ',' << e.x.to_decimal() << ',' << row.radius << ','
         << row.radius.to_decimal() << ',' << row.lower << ',' << row.lower.to_decimal()
         << ',' << row.upper << ',' << row.upper.to_decimal() << '\n';
    else
      os << e.x << ',' << row.radius << ',' << row.lower << ',' << row.upper << '\n';
  }
  os << "x,lip_lower,lip_upper,Lip_lower,Lip_upper\n";
  os << e.x << ',' << e.lip_lower << ',' << e.lip_upper << ',' << e.Lip_lower << ','
     << e.Lip_upper << '\n';
  return os.str();
}

}  // namespace lipset
