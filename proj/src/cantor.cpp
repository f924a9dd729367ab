#include "lipset/cantor.hpp"

#include <algorithm>
#include <sstream>

namespace lipset {

namespace {

const Rational kNine11(9, 11);
const Rational kHalf(1, 2);

void check_window(const Interval& w, const char* who) {
  if (!w.finite()) throw std::invalid_argument(std::string(who) + ": window must be finite");
  if (w.degenerate()) throw std::invalid_argument(std::string(who) + ": window is degenerate");
}

std::vector<Interval> level1_parts(const Rational& a, const Rational& b) {
  Rational w = b - a;
  Rational u = w / Rational(11);
  return {
      Interval::open(a, a + Rational(3) * u),
      Interval::open(a + Rational(4) * u, a + Rational(7) * u),
      Interval::open(a + Rational(8) * u, b),
  };
}

}  // namespace

IntervalSet level1_open(const Rational& a, const Rational& b) {
  if (!(a < b)) throw std::invalid_argument("level1_open: need a < b");
  return IntervalSet::canonical(level1_parts(a, b));
}

IntervalSet levelk_open(const Rational& a, const Rational& b, int k, int max_k) {
  if (!(a < b)) throw std::invalid_argument("levelk_open: need a < b");
  if (k < 0) throw std::invalid_argument("levelk_open: level must be >= 0");
  if (k > max_k)
    throw std::invalid_argument("levelk_open: level " + std::to_string(k) +
                                " exceeds the materialization cap " + std::to_string(max_k));
  std::vector<Interval> cur{Interval::open(a, b)};
  for (int step = 0; step < k; ++step) {
    std::vector<Interval> next;
    next.reserve(cur.size() * 3);
    for (const Interval& g : cur) {
      auto sub = level1_parts(g.lo.value(), g.hi.value());
      next.insert(next.end(), sub.begin(), sub.end());
    }
    cur = std::move(next);
  }
  return IntervalSet::canonical(std::move(cur));
}

namespace {

// Walks the recursive pattern of `window` looking for the component [lo,hi]:
// either it is one of the two gaps at the current level (tag found) or it
// fits inside one of the three open thirds and the search descends.
int pattern_level_tag(const Rational& lo, const Rational& hi, const Interval& window) {
  Rational a = window.lo.value();
  Rational b = window.hi.value();
  for (int depth = 1; depth <= 512; ++depth) {
    Rational u = (b - a) / Rational(11);
    Rational g1lo = a + Rational(3) * u, g1hi = a + Rational(4) * u;
    Rational g2lo = a + Rational(7) * u, g2hi = a + Rational(8) * u;
    if (lo == g1lo && hi == g1hi) return depth;
    if (lo == g2lo && hi == g2hi) return depth;
    if (hi <= g1lo) {
      b = g1lo;
    } else if (lo >= g1hi && hi <= g2lo) {
      a = g1hi;
      b = g2lo;
    } else if (lo >= g2hi) {
      a = g2hi;
    } else {
      return 0;
    }
    if (!(b - a > hi - lo)) return 0;  // cannot fit any deeper
  }
  return 0;
}

}  // namespace

std::vector<std::pair<Interval, int>> f_components(const IntervalSet& g,
                                                   const Interval& window) {
  check_window(window, "f_components");
  if (!is_open(g)) throw std::invalid_argument("f_components: set is not open");
  if (!subset_of(g, IntervalSet::single(window)))
    throw std::invalid_argument("f_components: set is not contained in the window");
  std::vector<std::pair<Interval, int>> out;
  IntervalSet closed_part = complement_in(g, window);
  for (const Interval& c : closed_part.parts()) {
    if (c.degenerate()) continue;
    out.emplace_back(c, pattern_level_tag(c.lo.value(), c.hi.value(), window));
  }
  return out;
}

LevelSchedule LevelSchedule::default_for(int depth) {
  LevelSchedule s;
  for (int n = 1; n <= depth; ++n) s.levels.push_back(4 * (n + 2));
  return s;
}

Rational CantorStage::removed_measure() const {
  Rational total;
  for (const GenerationRecord& g : ledger) total += g.added_measure;
  return total;
}

Rational CantorStage::complement_measure() const {
  return window_measure() - removed_measure();
}

IntervalSet CantorStage::complement_set() const {
  if (!geometry)
    throw std::logic_error("CantorStage: geometry was elided (component count over cap)");
  return complement_in(accumulated_open, window);
}

CantorStage build_f_infinity(const LevelSchedule& schedule, int depth,
                             const CantorBuildOptions& opts) {
  if (depth < 0) throw std::invalid_argument("build_f_infinity: depth must be >= 0");
  if (static_cast<int>(schedule.levels.size()) < depth)
    throw std::invalid_argument("build_f_infinity: schedule shorter than depth");
  if (!(schedule.budget.sign() > 0 && schedule.budget < Rational(1)))
    throw std::invalid_argument("build_f_infinity: budget must lie in (0,1)");
  check_window(opts.window, "build_f_infinity");
  for (int l : schedule.levels)
    if (l < 1) throw std::invalid_argument("build_f_infinity: levels must be positive");

  CantorStage st;
  st.window = opts.window;
  st.schedule = schedule;
  st.depth = depth;
  st.components.push_back({st.window, 0, 0});

  Rational window_len = st.window_measure();
  Rational budget_abs = schedule.budget * window_len;
  Rational removed;
  Rational complement = window_len;
  Rational count(1);
  const Rational cap(opts.component_cap);

  for (int n = 1; n <= depth; ++n) {
    int level = schedule.levels[n - 1];
    Rational fraction = Rational::pow(kNine11, static_cast<unsigned long>(level));
    Rational added = fraction * complement;
    removed += added;
    if (removed > budget_abs) {
      Rational overshoot = removed - budget_abs;
      throw std::invalid_argument("build_f_infinity: schedule violates the budget at generation " +
                                  std::to_string(n) + " by " + overshoot.to_string());
    }
    Rational count_next = count * (Rational::pow(Rational(3), static_cast<unsigned long>(level)) - Rational(1));

    if (st.geometry && (count_next > cap || level > 12)) {
      st.geometry = false;
      st.accumulated_open = IntervalSet();
      st.components.clear();
    }

    if (st.geometry) {
      std::vector<TaggedComponent> next_components;
      IntervalSet before = st.accumulated_open;
      std::vector<Interval> add = st.accumulated_open.parts();
      for (const TaggedComponent& comp : st.components) {
        const Rational& a = comp.interval.lo.value();
        const Rational& b = comp.interval.hi.value();
        IntervalSet open_set = levelk_open(a, b, level);
        const auto& new_parts = open_set.parts();
        add.insert(add.end(), new_parts.begin(), new_parts.end());
        // Boundary points shared with previously removed territory keep the
        // accumulated set open; the outermost window endpoints stay out.
        if (!(comp.interval.lo == st.window.lo)) add.push_back(Interval::point(a));
        if (!(comp.interval.hi == st.window.hi)) add.push_back(Interval::point(b));
        for (auto& [part, tag] : f_components(open_set, comp.interval))
          next_components.push_back({part, tag, n});
      }
      st.accumulated_open = IntervalSet::canonical(std::move(add));
      st.components = std::move(next_components);
      // Ledger entries must agree with the materialized measures exactly.
      Rational delta = measure(st.accumulated_open).value() - measure(before).value();
      if (delta != added)
        throw std::logic_error("build_f_infinity: ledger does not match the geometry");
      if (!is_open(st.accumulated_open))
        throw std::logic_error("build_f_infinity: accumulated set stopped being open");
    }

    complement -= added;
    count = count_next;
    st.ledger.push_back({level, added, complement, count});
  }
  return st;
}

DensityWindowReport density_window_check(const CantorStage& stage, bool critical_mode) {
  if (stage.depth < 1)
    return {{}, Rational(0), true};
  if (!stage.geometry)
    throw std::logic_error("density_window_check: stage geometry was elided");

  IntervalSet f_set = stage.complement_set();
  int max_tag = stage.schedule.levels[stage.depth - 1];

  DensityWindowReport rep;
  rep.max_density = Rational(0);
  rep.pass = true;

  const Rational& win_lo = stage.window.lo.value();
  const Rational& win_hi = stage.window.hi.value();

  for (const TaggedComponent& comp : stage.components) {
    if (comp.generation != stage.depth || comp.level_tag != max_tag) continue;
    const Rational& lo = comp.interval.lo.value();
    const Rational& hi = comp.interval.hi.value();
    Rational t = (hi - lo) * kHalf;
    Rational four_t = Rational(4) * t;

    std::vector<Rational> xs{lo, lo + t * kHalf, lo + t, lo + Rational(3) * t * kHalf, hi};
    if (critical_mode) {
      // Both window masses are piecewise affine in x with breakpoints where
      // x or x -/+ 4t crosses an endpoint of the complement set.
      for (const Interval& p : f_set.parts()) {
        for (const ExtendedRational* ep : {&p.lo, &p.hi}) {
          if (!ep->finite()) continue;
          for (const Rational& cand :
               {ep->value(), ep->value() + four_t, ep->value() - four_t}) {
            if (lo <= cand && cand <= hi) xs.push_back(cand);
          }
        }
      }
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    }

    for (const Rational& x : xs) {
      Rational left_lo = max(win_lo, x - four_t);
      Rational right_hi = min(win_hi, x + four_t);
      struct SideSpec {
        char side;
        Rational a, b;
      };
      for (const SideSpec& s : {SideSpec{'L', left_lo, x}, SideSpec{'R', x, right_hi}}) {
        if (!(s.a < s.b)) continue;
        Rational density = measure_in(f_set, Interval::closed(s.a, s.b)) / (s.b - s.a);
        rep.rows.push_back({comp.interval, comp.level_tag, x, s.side, density});
        rep.max_density = max(rep.max_density, density);
        if (density > kHalf) rep.pass = false;
      }
    }
  }
  return rep;
}

FullMeasureAssembly build_full_measure_sosd(const Interval& window, const Rational& epsilon,
                                            int copies, int depth,
                                            const CantorBuildOptions& opts) {
  check_window(window, "build_full_measure_sosd");
  if (!(epsilon.sign() > 0 && epsilon < Rational(1)))
    throw std::invalid_argument("build_full_measure_sosd: epsilon must lie in (0,1)");
  if (copies < 1) throw std::invalid_argument("build_full_measure_sosd: copies must be >= 1");
  if (depth < 1) throw std::invalid_argument("build_full_measure_sosd: depth must be >= 1");

  const Rational& A = window.lo.value();
  Rational w = window.hi.value() - window.lo.value();

  FullMeasureAssembly out;
  out.window = window;
  out.epsilon = epsilon;

  // Gap allowance epsilon * 2^-(copies+1) * w keeps the total strictly under
  // epsilon * w once every per-tile budget epsilon * 2^-j * w is met.
  Rational gap_frac = copies > 1 ? epsilon * Rational::pow2(-(copies + 1)) : Rational(0);
  Rational gap_total = gap_frac * w;
  Rational gap = copies > 1 ? gap_total / Rational(copies - 1) : Rational(0);
  Rational tiles_total = w - gap_total;
  Rational geom_norm = Rational(1) - Rational::pow2(-copies);  // sum of 2^-j, j=1..copies

  Rational cursor = A;
  out.gap_measure = gap_total;
  out.uncovered_measure = gap_total;

  for (int j = 1; j <= copies; ++j) {
    Rational tile_len = tiles_total * Rational::pow2(-j) / geom_norm;
    Rational tile_lo = cursor;
    Rational tile_hi = cursor + tile_len;
    cursor = tile_hi + gap;

    Rational budget = epsilon * Rational::pow2(-j) * w;

    // Minimal uniform level whose depth-fold refinement leaves at most
    // `budget` of the tile uncovered: removed = (1 - (1 - (9/11)^l)^depth).
    int level = 0;
    Rational removed;
    for (int l = 1; l <= 256; ++l) {
      Rational q = Rational::pow(kNine11, static_cast<unsigned long>(l));
      Rational kept = Rational::pow(Rational(1) - q, static_cast<unsigned long>(depth));
      removed = (Rational(1) - kept) * tile_len;
      if (removed <= budget) {
        level = l;
        break;
      }
    }
    if (level == 0)
      throw std::invalid_argument(
          "build_full_measure_sosd: budget infeasible at the requested depth for copy " +
          std::to_string(j) + " (needs a level beyond 256)");

    LevelSchedule sched;
    sched.levels.assign(static_cast<std::size_t>(depth), level);
    // Budget is enforced relative to the tile inside build_f_infinity;
    // budget / tile_len < epsilon < 1 because the tile lengths follow the
    // same geometric split as the budgets.
    sched.budget = budget / tile_len;

    CantorBuildOptions tile_opts = opts;
    tile_opts.window = Interval::closed(tile_lo, tile_hi);
    CantorStage stage = build_f_infinity(sched, depth, tile_opts);

    if (stage.removed_measure() > budget)
      throw std::logic_error("build_full_measure_sosd: per-copy budget missed");
    out.uncovered_measure += stage.removed_measure();
    out.stages.push_back(std::move(stage));
  }

  if (out.uncovered_measure > epsilon * w)
    throw std::logic_error("build_full_measure_sosd: total uncovered measure over budget");
  return out;
}

std::string density_window_csv(const DensityWindowReport& rep, bool decimals) {
  std::ostringstream os;
  if (decimals)
    os << "component_lo,component_hi,level,x,side,density,density_dec\n";
  else
    os << "component_lo,component_hi,level,x,side,density\n";
  for (const DensityWindowRow& r : rep.rows) {
    os << r.component.lo << ',' << r.component.hi << ',' << r.level_tag << ',' << r.x
       << ',' << r.side << ',' << r.density;
    if (decimals) os << ',' << r.density.to_decimal();
    os << '\n';
  }
  return os.str();
}

}  // namespace lipset
