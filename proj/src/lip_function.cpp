#include "lipset/lip_function.hpp"

#include <algorithm>

#include "lipset/density.hpp"

namespace lipset {

namespace {

// Measure of E between two points, zero when they coincide.
Rational mass_between(const IntervalSet& e, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) return Rational(0);
  return measure_in(e, Interval::closed(lo, hi));
}

}  // namespace

NestedChain NestedChain::validate(std::vector<IntervalSet> stages) {
  if (stages.empty())
    throw std::invalid_argument("chain: needs at least one stage");
  for (std::size_t i = 0; i < stages.size(); ++i) {
    if (!is_closed(stages[i]))
      throw std::invalid_argument("chain: stage " + std::to_string(i + 1) + " is not closed");
  }
  if (stages.front().empty())
    throw std::invalid_argument("chain: stage 1 is empty");
  for (std::size_t i = 1; i < stages.size(); ++i) {
    if (!subset_of(stages[i - 1], stages[i]))
      throw std::invalid_argument("chain: stage " + std::to_string(i + 1) +
                                  " does not contain stage " + std::to_string(i));
  }
  return NestedChain(std::move(stages));
}

BreakpointStream::BreakpointStream(int level, Rational g0, Rational factor)
    : level_(level),
      factor_(std::move(factor)),
      envelope_cap_(Rational::pow2(-level)) {
  if (level < 1) throw std::invalid_argument("BreakpointStream: level must be >= 1");
  if (g0.sign() <= 0) throw std::invalid_argument("BreakpointStream: g0 must be positive");
  if (factor_.sign() <= 0)
    throw std::invalid_argument("BreakpointStream: factor must be positive");
  offsets_.push_back(std::move(g0));
}

void BreakpointStream::extend() {
  const Rational& g = offsets_.back();
  Rational bound = min(min(envelope_cap_ * g * g, envelope_cap_), g);
  Rational step = floor_pow2(factor_ * bound);
  Rational next = g - step;
  if (next.sign() <= 0)
    throw std::logic_error("BreakpointStream: step passed the interval endpoint "
                           "(factor too large)");
  offsets_.push_back(std::move(next));
}

const Rational& BreakpointStream::offset(std::size_t k) {
  while (offsets_.size() <= k) extend();
  return offsets_[k];
}

std::size_t BreakpointStream::bracket(const Rational& off) {
  if (off.sign() <= 0 || off > offsets_.front())
    throw std::invalid_argument("BreakpointStream: offset out of range");
  while (offsets_.back() >= off) extend();
  // offsets_ strictly decreasing; find first index with offset < off
  auto it = std::partition_point(offsets_.begin(), offsets_.end(),
                                 [&](const Rational& g) { return g >= off; });
  return static_cast<std::size_t>(it - offsets_.begin());
}

LipFunction::LipFunction(NestedChain chain, Rational factor)
    : chain_(std::move(chain)),
      factor_(std::move(factor)),
      mu_(std::make_unique<std::mutex>()) {
  for (std::size_t n = 2; n <= chain_.depth(); ++n)
    contig_.push_back(contiguous_intervals(chain_.stage(n - 1)));
}

const std::vector<Interval>& LipFunction::contiguous(std::size_t n) const {
  if (n < 2 || n > chain_.depth())
    throw std::out_of_range("contiguous: level out of range");
  return contig_[n - 2];
}

Rational LipFunction::eval_f1(const Rational& x) const {
  const IntervalSet& e1 = chain_.stage(1);
  if (x.sign() >= 0) return mass_between(e1, Rational(0), x);
  return mass_between(e1, x, Rational(0));
}

std::size_t LipFunction::locate(std::size_t n, const Rational& x) const {
  const auto& comps = contig_[n - 2];
  ExtendedRational pos{x};
  // first component with hi > x
  auto it = std::partition_point(comps.begin(), comps.end(),
                                 [&](const Interval& i) { return i.hi <= pos; });
  if (it == comps.end() || !(it->lo < pos))
    throw std::logic_error("LipFunction: point not in any contiguous interval");
  return static_cast<std::size_t>(it - comps.begin());
}

BreakpointStream& LipFunction::stream(std::size_t n, std::size_t idx) const {
  auto key = std::make_pair(n, idx);
  auto it = memo_.find(key);
  if (it != memo_.end()) return *it->second;
  const Interval& c = contig_[n - 2][idx];
  Rational g0 = c.finite() ? (c.hi.value() - c.lo.value()) * Rational(1, 2) : Rational(1);
  auto st = std::make_unique<BreakpointStream>(static_cast<int>(n), std::move(g0), factor_);
  auto [pos, _] = memo_.emplace(key, std::move(st));
  return *pos->second;
}

LipFunction::Cell LipFunction::bracket_cell(BreakpointStream& st, const Rational& off) const {
  std::size_t k = st.bracket(off);
  return Cell{st.offset(k), st.offset(k - 1)};
}

BreakpointStream& LipFunction::stream_at(std::size_t n, const Rational& x) const {
  if (n < 2 || n > chain_.depth())
    throw std::out_of_range("stream_at: level out of range");
  std::lock_guard<std::mutex> lock(*mu_);
  return stream(n, locate(n, x));
}

Rational LipFunction::eval_level(std::size_t n, const Rational& x) const {
  if (n < 1) throw std::invalid_argument("eval_level: level must be >= 1");
  if (n > chain_.depth()) return Rational(0);
  if (n == 1) return eval_f1(x);

  const IntervalSet& prev = chain_.stage(n - 1);
  const IntervalSet& cur = chain_.stage(n);
  if (prev.contains(x)) return Rational(0);

  std::size_t idx;
  Cell cell{Rational(0), Rational(0)};
  bool grid_point = false;
  {
    std::lock_guard<std::mutex> lock(*mu_);
    idx = locate(n, x);
    const Interval& c = contig_[n - 2][idx];

    if (c.lo.finite() && c.hi.finite()) {
      const Rational& a = c.lo.value();
      const Rational& b = c.hi.value();
      Rational mid = (a + b) * Rational(1, 2);
      BreakpointStream& st = stream(n, idx);
      if (x <= mid) {
        Cell g = bracket_cell(st, x - a);
        cell = Cell{a + g.lo, a + g.hi};
      } else {  // mirrored about the midpoint towards b
        Cell g = bracket_cell(st, b - x);
        cell = Cell{b - g.hi, b - g.lo};
      }
    } else if (c.lo.finite()) {  // (a, +inf)
      const Rational& a = c.lo.value();
      Rational a0 = a + 1;
      if (x <= a0) {
        BreakpointStream& st = stream(n, idx);
        Cell g = bracket_cell(st, x - a);
        cell = Cell{a + g.lo, a + g.hi};
      } else {  // unit grid of width 2^-n
        Rational width = Rational::pow2(-static_cast<long>(n));
        Rational steps = (x - a0) / width;
        if (steps.is_integer()) {
          grid_point = true;
        } else {
          Rational k = steps.floor();
          cell = Cell{a0 + k * width, a0 + (k + 1) * width};
        }
      }
    } else if (c.hi.finite()) {  // (-inf, b), mirror of the half-line case
      const Rational& b = c.hi.value();
      Rational b0 = b - 1;
      if (x >= b0) {
        BreakpointStream& st = stream(n, idx);
        Cell g = bracket_cell(st, b - x);
        cell = Cell{b - g.hi, b - g.lo};
      } else {
        Rational width = Rational::pow2(-static_cast<long>(n));
        Rational steps = (b0 - x) / width;
        if (steps.is_integer()) {
          grid_point = true;
        } else {
          Rational k = steps.floor();
          cell = Cell{b0 - (k + 1) * width, b0 - k * width};
        }
      }
    } else {
      // Contiguous interval (-inf, +inf) would mean E_{n-1} empty, which the
      // chain invariants exclude for n >= 2.
      throw std::logic_error("eval_level: empty previous stage");
    }
  }
  if (grid_point) return Rational(0);
  return min(mass_between(cur, cell.lo, x), mass_between(cur, x, cell.hi));
}

Rational LipFunction::eval(const Rational& x) const {
  Rational total = eval_f1(x);
  for (std::size_t n = 2; n <= chain_.depth(); ++n) total += eval_level(n, x);
  return total;
}

std::pair<Rational, Rational> LipFunction::eval_enclosure(const Rational& x,
                                                          const Rational& tol) const {
  if (tol.sign() <= 0) throw std::invalid_argument("eval_enclosure: tol must be positive");
  Rational total = eval_f1(x);
  Rational tail;
  for (std::size_t n = 2; n <= chain_.depth(); ++n) {
    Rational cap = Rational::pow2(-static_cast<long>(n));
    if (cap < tol)
      tail += cap;  // 0 <= f_n <= 2^-n
    else
      total += eval_level(n, x);
  }
  return {total, total + tail};
}

CertificateReport lipschitz_certificate(
    const LipFunction& f, const std::vector<std::pair<Rational, Rational>>& pairs) {
  CertificateReport rep;
  const IntervalSet& e = f.chain().final_stage();
  for (const auto& [a, b] : pairs) {
    Rational lo = min(a, b), hi = max(a, b);
    Rational diff = (f.eval(a) - f.eval(b)).abs();
    Rational bound = mass_between(e, lo, hi);
    ++rep.checked;
    if (diff > bound) {
      rep.violations.push_back({a, b, diff, bound});
      rep.pass = false;
    }
  }
  return rep;
}

std::vector<SosdWarning> chain_sosd_warnings(const NestedChain& chain, const Rational& r_max,
                                             const Rational& r_min,
                                             const Rational& threshold) {
  std::vector<SosdWarning> out;
  for (std::size_t n = 1; n <= chain.depth(); ++n) {
    const IntervalSet& e = chain.stage(n);
    for (const Interval& p : e.parts()) {
      for (const ExtendedRational* ep : {&p.lo, &p.hi}) {
        if (!ep->finite()) continue;
        SosdReport rep = sosd_scan(e, ep->value(), r_max, r_min, threshold);
        if (!rep.pass)
          out.push_back({n, ep->value(), rep.min_max_density, rep.worst_radius});
      }
    }
  }
  return out;
}

}  // namespace lipset
