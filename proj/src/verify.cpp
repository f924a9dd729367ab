#include "lipset/verify.hpp"

#include <json.hpp>

#include <functional>
#include <sstream>

#include "lipset/cantor.hpp"
#include "lipset/density.hpp"
#include "lipset/interval_set.hpp"
#include "lipset/lip_function.hpp"
#include "lipset/oscillation.hpp"
#include "lipset/rng.hpp"

namespace lipset {

namespace {

// ---- seeded generators ----------------------------------------------------

Interval random_interval(SplitMix64& rng) {
  Rational a = rand_dyadic(rng, Rational(-4), Rational(4), 8);
  Rational b = rand_dyadic(rng, Rational(-4), Rational(4), 8);
  if (a == b) return Interval::point(a);
  Rational lo = min(a, b), hi = max(a, b);
  return Interval(lo, hi, rng.below(2) == 0, rng.below(2) == 0);
}

IntervalSet random_set(SplitMix64& rng, std::size_t max_parts = 5) {
  std::vector<Interval> parts;
  std::size_t n = rng.below(max_parts + 1);
  for (std::size_t i = 0; i < n; ++i) parts.push_back(random_interval(rng));
  return IntervalSet::canonical(std::move(parts));
}

// Membership decided directly from the raw parts, independent of the
// canonical representation under test.
bool raw_member(const std::vector<Interval>& raw, const Rational& x) {
  for (const Interval& i : raw)
    if (i.contains(x)) return true;
  return false;
}

std::vector<Rational> probe_points(const std::vector<Interval>& a,
                                   const std::vector<Interval>& b) {
  std::vector<Rational> vals;
  auto add = [&](const ExtendedRational& e) {
    if (e.finite()) vals.push_back(e.value());
  };
  for (const auto* v : {&a, &b})
    for (const Interval& i : *v) {
      add(i.lo);
      add(i.hi);
    }
  std::vector<Rational> out;
  const Rational eps(1, 1024);
  for (const Rational& v : vals) {
    out.push_back(v);
    out.push_back(v - eps);
    out.push_back(v + eps);
  }
  for (std::size_t i = 0; i + 1 < vals.size(); ++i)
    out.push_back((vals[i] + vals[i + 1]) * Rational(1, 2));
  out.push_back(Rational(-5));
  out.push_back(Rational(5));
  return out;
}

struct Harness {
  const VerifyOptions& opts;
  std::vector<CheckResult> results;

  bool enabled(const std::string& suite) const {
    return opts.suite == "all" || opts.suite == suite;
  }

  void run(const std::string& suite, const std::string& name,
           const std::function<std::string()>& body) {
    if (!enabled(suite)) return;
    CheckResult r{suite, name, true, ""};
    try {
      r.detail = body();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    results.push_back(std::move(r));
  }
};

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

NestedChain unit_chain() {
  return NestedChain::validate({IntervalSet::single(Interval::closed(0, 1))});
}

NestedChain two_stage_chain() {
  IntervalSet e1 = IntervalSet::canonical(
      {Interval::closed(0, 1), Interval::closed(2, 3)});
  IntervalSet e2 = IntervalSet::single(Interval::closed(0, 3));
  return NestedChain::validate({e1, e2});
}

// ---- individual checks ----------------------------------------------------

std::string check_interval_laws(const VerifyOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0x1111);
  int trials = 200;
  for (int t = 0; t < trials; ++t) {
    std::vector<Interval> raw_a, raw_b;
    std::size_t na = rng.below(5), nb = rng.below(5);
    for (std::size_t i = 0; i < na; ++i) raw_a.push_back(random_interval(rng));
    for (std::size_t i = 0; i < nb; ++i) raw_b.push_back(random_interval(rng));
    IntervalSet a = IntervalSet::canonical(raw_a);
    IntervalSet b = IntervalSet::canonical(raw_b);

    if (IntervalSet::canonical(a.parts()) != a) fail("canonicalize is not idempotent");

    IntervalSet u = union_of(a, b);
    IntervalSet i = intersect(a, b);
    Interval window = Interval::closed(Rational(-6), Rational(6));
    IntervalSet ca = complement_in(a, window);
    IntervalSet cb = complement_in(b, window);

    for (const Rational& x : probe_points(raw_a, raw_b)) {
      bool ma = raw_member(raw_a, x), mb = raw_member(raw_b, x);
      if (a.contains(x) != ma) fail("canonicalize changed membership at " + x.to_string());
      if (u.contains(x) != (ma || mb)) fail("union membership wrong at " + x.to_string());
      if (i.contains(x) != (ma && mb)) fail("intersect membership wrong at " + x.to_string());
      bool in_window = window.contains(x);
      if (ca.contains(x) != (in_window && !ma))
        fail("complement membership wrong at " + x.to_string());
    }

    // De Morgan inside the window.
    IntervalSet lhs = complement_in(u, window);
    IntervalSet rhs = intersect(ca, cb);
    if (lhs != rhs) fail("De Morgan (union) failed");
    IntervalSet lhs2 = complement_in(i, window);
    IntervalSet rhs2 = union_of(ca, cb);
    if (lhs2 != rhs2) fail("De Morgan (intersection) failed");

    // associativity and absorption
    IntervalSet c = random_set(rng);
    if (union_of(union_of(a, b), c) != union_of(a, union_of(b, c)))
      fail("union associativity failed");
    if (intersect(intersect(a, b), c) != intersect(a, intersect(b, c)))
      fail("intersect associativity failed");
    if (union_of(a, intersect(a, b)) != a || intersect(a, union_of(a, b)) != a)
      fail("absorption failed");

    // Exact additivity for bounded sets.
    Rational mu = measure_in(u, window), mi = measure_in(i, window);
    Rational msum = measure_in(a, window) + measure_in(b, window);
    if (mu + mi != msum) fail("measure additivity failed");
    if (mu > Rational(12)) fail("measure exceeds window length");

    // distance vanishes exactly on the closure.
    for (const Rational& x : probe_points(raw_a, raw_b)) {
      ExtendedRational d = distance(x, a);
      bool zero = d == ExtendedRational(Rational(0));
      bool in_closure = a.contains(x);
      if (!in_closure && !a.empty()) {
        // on the closure boundary: endpoint value of an open part
        for (const Interval& p : a.parts()) {
          if ((p.lo.finite() && p.lo.value() == x) || (p.hi.finite() && p.hi.value() == x))
            in_closure = true;
        }
      }
      if (zero != in_closure) fail("distance zero-set is not the closure");
      if (is_closed(a) && zero != a.contains(x)) fail("distance on closed set wrong");
    }
  }
  return std::to_string(trials) + " randomized trials against the membership oracle";
}

std::string check_density_monotone(const VerifyOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0x2222);
  int trials = 300;
  for (int t = 0; t < trials; ++t) {
    IntervalSet e = random_set(rng);
    Rational x = rand_dyadic(rng, Rational(-4), Rational(4), 8);
    Rational r1 = rand_dyadic(rng, Rational(1, 64), Rational(2), 10);
    Rational r2 = r1 + rand_dyadic(rng, Rational(1, 64), Rational(1), 10);
    Rational m1 = left_density(e, x, r1) * r1;
    Rational m2 = left_density(e, x, r2) * r2;
    if (m1 > m2) fail("left window mass decreased with r");
    Rational n1 = right_density(e, x, r1) * r1;
    Rational n2 = right_density(e, x, r2) * r2;
    if (n1 > n2) fail("right window mass decreased with r");
    for (const Rational& d : {left_density(e, x, r1), right_density(e, x, r1)}) {
      if (d.sign() < 0 || d > Rational(1)) fail("density outside [0,1]");
    }
  }
  return std::to_string(trials) + " monotone window checks";
}

std::string check_sosd_exactness(const VerifyOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0x3333);
  int trials = 25;
  for (int t = 0; t < trials; ++t) {
    // sets with a guaranteed member point
    std::vector<Interval> raw{Interval::closed(Rational(0), Rational(1, 4))};
    std::size_t extra = rng.below(4);
    for (std::size_t i = 0; i < extra; ++i) raw.push_back(random_interval(rng));
    IntervalSet e = IntervalSet::canonical(raw);
    Rational x = rand_dyadic(rng, Rational(0), Rational(1, 4), 6);
    Rational r_min(1, 128), r_max(2);
    SosdReport rep = sosd_scan(e, x, r_max, r_min);

    // the reported minimum is attained ...
    Rational at = max(left_density(e, x, rep.worst_radius), right_density(e, x, rep.worst_radius));
    if (at != rep.min_max_density) fail("reported minimum not attained at worst_radius");
    // ... and no denser sweep can beat it.
    for (int k = 0; k <= 512; ++k) {
      Rational r = r_min + (r_max - r_min) * Rational(k, 512);
      Rational m = max(left_density(e, x, r), right_density(e, x, r));
      if (m < rep.min_max_density) fail("dense sweep found a smaller density at r=" + r.to_string());
    }
  }
  return std::to_string(trials) + " scans cross-checked against dense sweeps";
}

std::string check_breakpoints(const VerifyOptions& opts) {
  struct Case {
    Rational a;
    ExtendedRational b;
  };
  const std::vector<Case> cases{{Rational(1), ExtendedRational(Rational(2))},
                                {Rational(1), ExtendedRational::pos_inf()}};
  int count = opts.breakpoint_count;
  for (const Case& c : cases) {
    for (int level = 2; level <= 4; ++level) {
      Rational g0 = c.b.finite() ? (c.b.value() - c.a) * Rational(1, 2) : Rational(1);
      BreakpointStream st(level, g0, opts.breakpoint_factor);
      // (I): first breakpoint at the midpoint resp. unit offset.
      Rational a0 = c.a + st.offset(0);
      Rational expect0 = c.b.finite() ? (c.a + c.b.value()) * Rational(1, 2) : c.a + 1;
      if (a0 != expect0) fail("condition (I) violated");
      Rational cap = Rational::pow2(-level);
      for (int k = 1; k < count; ++k) {
        Rational gk = st.offset(static_cast<std::size_t>(k));
        Rational gk1 = st.offset(static_cast<std::size_t>(k - 1));
        if (!(gk.sign() > 0)) fail("breakpoint crossed the endpoint at k=" + std::to_string(k));
        if (!(gk < gk1)) fail("offsets not strictly decreasing at k=" + std::to_string(k));
        Rational step = gk1 - gk;
        if (!(step < min(cap * gk * gk, cap)))
          fail("condition (II) violated at level " + std::to_string(level) +
               ", k=" + std::to_string(k) + " on " + c.a.to_string() + ".." + c.b.to_string());
      }
      // (III): every tested offset is eventually bracketed.
      for (int j = 0; j <= 12; ++j) {
        Rational off = Rational::pow2(-j);
        if (off > st.offset(0)) continue;
        std::size_t k = st.bracket(off);
        if (!(st.offset(k) < off && off <= st.offset(k - 1)))
          fail("bracketing failed at offset 2^-" + std::to_string(j));
      }
    }
  }
  return "conditions (I)-(III) on " + std::to_string(count) +
         " breakpoints per stream, levels 2..4";
}

std::string check_envelope(const VerifyOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0x4444);
  int points = 400;
  for (const NestedChain& chain : {unit_chain(), two_stage_chain()}) {
    LipFunction f(chain);
    for (std::size_t n = 2; n <= chain.depth(); ++n) {
      const IntervalSet& prev = chain.stage(n - 1);
      Rational cap = Rational::pow2(-static_cast<long>(n));
      for (int t = 0; t < points; ++t) {
        Rational x = rand_dyadic(rng, Rational(-2), Rational(5), 12);
        Rational v = f.eval_level(n, x);
        if (v.sign() < 0) fail("f_n negative");
        ExtendedRational d = distance(x, prev);
        Rational bound = d.finite() ? min(cap, cap * d.value() * d.value()) : cap;
        if (v > bound) fail("envelope violated at x=" + x.to_string());
      }
      // exact vanishing on the previous stage
      for (const Interval& p : prev.parts()) {
        for (const ExtendedRational* ep : {&p.lo, &p.hi}) {
          if (!ep->finite()) continue;
          if (f.eval_level(n, ep->value()).sign() != 0) fail("f_n nonzero on E_{n-1}");
        }
      }
    }
    // f_1 matches its defining measures; nondecreasing for x >= 0.
    Rational prev_val;
    bool have_prev = false;
    for (int t = 0; t < 64; ++t) {
      Rational x = Rational(t, 8);
      Rational v = f.eval_f1(x);
      Rational direct = measure_in(chain.stage(1), Interval::closed(Rational(0), max(Rational(0), x)));
      if (v != direct) fail("f_1 does not match its defining measure");
      if (have_prev && v < prev_val) fail("f_1 not nondecreasing on x >= 0");
      prev_val = v;
      have_prev = true;
    }
  }
  return "envelope + vanishing on " + std::to_string(points) + " points per level";
}

std::string check_cell_continuity(const VerifyOptions& opts) {
  (void)opts;
  NestedChain chain = two_stage_chain();
  LipFunction f(chain);
  // breakpoints of the stream living on (1,2)
  BreakpointStream& st = f.stream_at(2, Rational(5, 4));
  for (std::size_t k = 0; k < 50; ++k) {
    Rational ak = Rational(1) + st.offset(k);
    if (f.eval_level(2, ak).sign() != 0) fail("f_n nonzero at a breakpoint");
    Rational bk = Rational(2) - st.offset(k);
    if (f.eval_level(2, bk).sign() != 0) fail("f_n nonzero at a mirrored breakpoint");
  }
  // unit-grid points on the half line (3, +inf)
  for (int k = 0; k <= 16; ++k) {
    Rational x = Rational(4) + Rational(k) * Rational::pow2(-2);
    if (f.eval_level(2, x).sign() != 0) fail("f_n nonzero at a grid point");
  }
  return "f_n vanishes at 50 breakpoints per side and 17 grid points";
}

std::string check_certificate(const VerifyOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0x5555);
  for (const NestedChain& chain : {unit_chain(), two_stage_chain()}) {
    LipFunction f(chain);
    std::vector<std::pair<Rational, Rational>> pairs;
    for (int t = 0; t < 1000; ++t)
      pairs.emplace_back(rand_dyadic(rng, Rational(-2), Rational(5), 12),
                         rand_dyadic(rng, Rational(-2), Rational(5), 12));
    CertificateReport rep = lipschitz_certificate(f, pairs);
    if (!rep.pass) {
      const CertificateViolation& v = rep.violations.front();
      fail("|f(a)-f(b)| > |[a,b] ∩ E| at a=" + v.a.to_string() + ", b=" + v.b.to_string());
    }
  }
  return "1000 random pairs per chain, zero violations";
}

std::string check_interior_attainment(const VerifyOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0x6666);
  LipFunction f(unit_chain());
  for (int t = 0; t < 200; ++t) {
    Rational x = rand_dyadic(rng, Rational(1, 16), Rational(15, 16), 10);
    Rational r = rand_dyadic(rng, Rational(1, 1024), Rational(1) - x - Rational(1, 1024), 10);
    if (r.sign() <= 0) continue;
    if ((f.eval(x + r) - f.eval(x)).abs() != r) fail("full-density increment not attained");
  }
  return "200 interior increments equal the radius exactly";
}

std::string check_oscillation(const VerifyOptions& opts) {
  (void)opts;
  LipFunction f(unit_chain());
  OscillationBound b = oscillation_ratio(f, Rational(1, 2), Rational(1, 4), 64);
  if (b.lower != Rational(1)) fail("M_f lower bound at an interior point is not 1");
  if (b.upper != Rational(1) + Rational(1, 128)) fail("enclosure width wrong");
  OscillationBound flat = oscillation_ratio(f, Rational(3), Rational(1, 2), 64);
  if (flat.lower.sign() != 0 || flat.upper != Rational(1, 128))
    fail("flat-region enclosure wrong");
  // refinement monotonicity on nested grids
  OscillationBound c1 = oscillation_ratio(f, Rational(1, 3), Rational(1, 8), 32);
  OscillationBound c2 = oscillation_ratio(f, Rational(1, 3), Rational(1, 8), 64);
  if (c2.lower < c1.lower || c2.upper > c1.upper) fail("refinement monotonicity violated");
  LipEstimate est = lip_scan(f, Rational(1, 3), Rational(1, 8), Rational::pow2(-16));
  if (est.lip_lower != Rational(1)) fail("lip lower bound at an interior point is not 1");
  return "interior, flat and nested-grid enclosures are exact";
}

std::string check_measure_recursion(const VerifyOptions& opts) {
  SplitMix64 rng(opts.seed ^ 0x7777);
  Rational expected(1);
  const Rational nine11(9, 11);
  for (int k = 0; k <= 8; ++k) {
    Rational m = measure(levelk_open(Rational(0), Rational(1), k)).value();
    if (m != expected) fail("level-" + std::to_string(k) + " measure is not (9/11)^k");
    expected *= nine11;
  }
  // exact self-similarity on random windows
  for (int t = 0; t < 20; ++t) {
    Rational a = rand_dyadic(rng, Rational(-3), Rational(3), 8);
    Rational w = rand_dyadic(rng, Rational(1, 16), Rational(2), 8);
    int k = static_cast<int>(rng.below(5));
    IntervalSet direct = levelk_open(a, a + w, k);
    IntervalSet mapped = affine_image(levelk_open(Rational(0), Rational(1), k), w, a);
    if (direct != mapped) fail("self-similarity failed");
  }
  return "measure recursion k<=8 and 20 affine self-similarity checks";
}

std::string check_seven_t(const VerifyOptions& opts) {
  (void)opts;
  for (int k = 1; k <= 3; ++k) {
    IntervalSet g = levelk_open(Rational(0), Rational(1), k);
    auto comps = f_components(g, Interval::closed(Rational(0), Rational(1)));
    for (const auto& [comp, tag] : comps) {
      if (tag != k) continue;  // the freshly created components
      Rational lo = comp.lo.value(), hi = comp.hi.value();
      Rational t = (hi - lo) * Rational(1, 2);
      Rational p = (hi + lo) * Rational(1, 2);
      IntervalSet flank = IntervalSet::canonical(
          {Interval::open(p - Rational(7) * t, p - t), Interval::open(p + t, p + Rational(7) * t)});
      if (!subset_of(flank, g)) fail("7t flank not inside the level-" + std::to_string(k) + " set");
    }
  }
  return "flank inclusion verified exhaustively for k<=3";
}

std::string check_cantor_ledger(const VerifyOptions& opts) {
  LevelSchedule sched;
  sched.levels = {2, 2, 2};
  sched.budget = Rational(99, 100);  // level-2 generations remove 81/121 each
  int depth = std::min(opts.cantor_depth, 3);
  CantorStage st = build_f_infinity(sched, depth);
  if (!st.geometry) fail("small stage unexpectedly elided");
  Rational acc = measure(st.accumulated_open).value();
  if (st.complement_measure() != Rational(1) - acc) fail("ledger does not match geometry");
  // nesting of the accumulated sets across depths
  CantorStage prev = build_f_infinity(sched, depth - 1 >= 0 ? depth - 1 : 0);
  if (depth >= 1 && !subset_of(prev.accumulated_open, st.accumulated_open))
    fail("accumulated set is not nested");
  if (depth >= 1 && !(st.complement_measure() < prev.complement_measure()))
    fail("complement measure did not strictly decrease");
  if (st.removed_measure() > sched.budget) fail("budget check missed an overshoot");
  return "ledger/geometry agreement at depth " + std::to_string(depth);
}

std::string check_density_windows(const VerifyOptions& opts) {
  LevelSchedule sched;
  sched.levels = {2, 2};
  sched.budget = Rational(99, 100);
  int depth = std::min(opts.cantor_depth, 2);
  if (depth < 1) depth = 1;
  for (int d = 1; d <= depth; ++d) {
    CantorStage st = build_f_infinity(sched, d);
    DensityWindowReport rep = density_window_check(st, true);
    if (!rep.pass) fail("density window above 1/2 at depth " + std::to_string(d));
    if (rep.max_density != Rational(1, 2))
      fail("expected the 1/2 bound to be attained exactly");
  }
  return "exhaustive critical-point windows at depth <= " + std::to_string(depth);
}

std::string check_full_measure(const VerifyOptions& opts) {
  (void)opts;
  Interval window = Interval::closed(Rational(0), Rational(1));
  FullMeasureAssembly fm = build_full_measure_sosd(window, Rational(1, 4), 2, 1);
  if (fm.uncovered_measure > Rational(1, 4)) fail("uncovered measure over epsilon");
  for (std::size_t i = 0; i < fm.stages.size(); ++i)
    for (std::size_t j = i + 1; j < fm.stages.size(); ++j) {
      if (!intersect(fm.stages[i].complement_set(), fm.stages[j].complement_set()).empty())
        fail("stages are not disjoint");
    }
  return "2-tile assembly disjoint with exact uncovered bound";
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  Harness h{opts, {}};
  h.run("interval", "boolean-algebra laws & measure", [&] { return check_interval_laws(opts); });
  h.run("density", "window-mass monotonicity", [&] { return check_density_monotone(opts); });
  h.run("density", "scan minimum is exact", [&] { return check_sosd_exactness(opts); });
  h.run("builder", "breakpoint conditions (I)-(III)", [&] { return check_breakpoints(opts); });
  h.run("builder", "envelope bound and vanishing", [&] { return check_envelope(opts); });
  h.run("builder", "cell-boundary continuity", [&] { return check_cell_continuity(opts); });
  h.run("builder", "Lipschitz growth certificate", [&] { return check_certificate(opts); });
  h.run("builder", "interior increments attained", [&] { return check_interior_attainment(opts); });
  h.run("estimator", "oscillation enclosures", [&] { return check_oscillation(opts); });
  h.run("cantor", "measure recursion & self-similarity", [&] { return check_measure_recursion(opts); });
  h.run("cantor", "7t flank inclusion", [&] { return check_seven_t(opts); });
  h.run("cantor", "ledger/geometry agreement", [&] { return check_cantor_ledger(opts); });
  h.run("cantor", "density windows <= 1/2", [&] { return check_density_windows(opts); });
  h.run("cantor", "full-measure assembly", [&] { return check_full_measure(opts); });
  return h.results;
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.pass) return false;
  return true;
}

std::string verification_json(const VerifyOptions& opts,
                              const std::vector<CheckResult>& results) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& r : results)
    checks.push_back({{"suite", r.suite}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  nlohmann::json out{{"seed", opts.seed},
                     {"suite", opts.suite},
                     {"breakpoint_factor", opts.breakpoint_factor.to_string()},
                     {"checks", std::move(checks)},
                     {"pass", all_pass(results)}};
  return out.dump(2);
}

}  // namespace lipset
