#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "lipset/interval_set.hpp"

namespace lipset {

// Validated finite increasing chain E_1 ⊆ E_2 ⊆ ... ⊆ E_N of closed sets,
// E_1 nonempty. Stage indices are 1-based throughout.
class NestedChain {
 public:
  static NestedChain validate(std::vector<IntervalSet> stages);

  std::size_t depth() const { return stages_.size(); }
  const IntervalSet& stage(std::size_t n) const { return stages_.at(n - 1); }
  const IntervalSet& final_stage() const { return stages_.back(); }
  const std::vector<IntervalSet>& stages() const { return stages_; }

 private:
  explicit NestedChain(std::vector<IntervalSet> stages) : stages_(std::move(stages)) {}
  std::vector<IntervalSet> stages_;
};

// Decreasing breakpoint offsets g_0 > g_1 > ... > 0 inside a contiguous
// interval, measured from the near endpoint. The generation rule subtracts
// the largest power of two not exceeding
//     factor * min{ 2^-level * g^2, 2^-level, g },
// which keeps every step strictly inside the admissible bound, keeps
// denominators dyadic with slowly growing exponents, and drives g to zero.
// factor defaults to 1/4; other values exist for fault-injection checks.
class BreakpointStream {
 public:
  BreakpointStream(int level, Rational g0, Rational factor);

  // k-th offset, generating lazily. offset(0) == g0.
  const Rational& offset(std::size_t k);
  // Smallest k with offset(k) < off; requires 0 < off <= g0, so the cell
  // (offset(k), offset(k-1)] brackets off. Generates as needed.
  std::size_t bracket(const Rational& off);
  std::size_t generated() const { return offsets_.size(); }
  int level() const { return level_; }

 private:
  void extend();
  int level_;
  Rational factor_;
  Rational envelope_cap_;  // 2^-level
  std::vector<Rational> offsets_;
};

// Evaluatable f = f_1 + ... + f_N built from a nested chain:
//   f_1(x) = |[0,x] ∩ E_1|  (mirrored for x < 0)
//   f_n vanishes on E_{n-1} and zig-zags on each contiguous interval,
//   taking the smaller of the two E_n masses towards the bracketing cell
//   edges; half-lines use a unit first offset and a 2^-n grid on the far
//   side, finite intervals mirror the construction about their midpoint.
// Evaluation is exact. Breakpoint streams are memoized per (level,
// contiguous interval); the cache is guarded, so concurrent evaluation from
// several threads is safe and deterministic.
class LipFunction {
 public:
  explicit LipFunction(NestedChain chain, Rational factor = Rational(1, 4));

  Rational eval(const Rational& x) const;
  // f_n; levels above the chain depth are identically zero.
  Rational eval_level(std::size_t n, const Rational& x) const;
  Rational eval_f1(const Rational& x) const;

  // Enclosure [lo, hi] of f(x) that skips levels with 2^-n below tol and
  // accounts for them through the envelope tail bound.
  std::pair<Rational, Rational> eval_enclosure(const Rational& x, const Rational& tol) const;

  const NestedChain& chain() const { return chain_; }
  const Rational& factor() const { return factor_; }
  // Contiguous intervals of E_{n-1}, n >= 2.
  const std::vector<Interval>& contiguous(std::size_t n) const;
  // Stream of the contiguous interval of E_{n-1} containing x (which must
  // not be in E_{n-1}); exposed for direct inspection of the breakpoints.
  BreakpointStream& stream_at(std::size_t n, const Rational& x) const;

 private:
  struct Cell {
    Rational lo;
    Rational hi;
  };
  std::size_t locate(std::size_t n, const Rational& x) const;
  BreakpointStream& stream(std::size_t n, std::size_t idx) const;
  Cell bracket_cell(BreakpointStream& st, const Rational& off) const;

  NestedChain chain_;
  Rational factor_;
  std::vector<std::vector<Interval>> contig_;  // [n-2] -> components of E_{n-1}
  std::unique_ptr<std::mutex> mu_;             // keeps the object movable
  mutable std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<BreakpointStream>> memo_;
};

struct CertificateViolation {
  Rational a;
  Rational b;
  Rational difference;  // |f(a) - f(b)|
  Rational bound;       // |[a,b] ∩ E_N|
};

struct CertificateReport {
  std::size_t checked = 0;
  std::vector<CertificateViolation> violations;
  bool pass = true;
};

// Exact check of |f(a)-f(b)| <= |[a,b] ∩ E_N| over the given pairs.
CertificateReport lipschitz_certificate(const LipFunction& f,
                                        const std::vector<std::pair<Rational, Rational>>& pairs);

struct SosdWarning {
  std::size_t stage;  // 1-based
  Rational point;
  Rational min_max_density;
  Rational worst_radius;
};

// Warning-level diagnostics: one-sided density scans at every finite part
// endpoint of every stage. A strong one-sided density failure at the scanned
// range does not invalidate the chain, it only flags the input.
std::vector<SosdWarning> chain_sosd_warnings(const NestedChain& chain,
                                             const Rational& r_max = Rational(1, 4),
                                             const Rational& r_min = Rational(1, 4096),
                                             const Rational& threshold = Rational(9, 10));

}  // namespace lipset
