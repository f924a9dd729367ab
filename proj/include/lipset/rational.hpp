#pragma once

#include <gmp.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace lipset {

// Arbitrary-precision rational, always stored in lowest terms with a
// positive denominator. Every operation is exact; floating point appears
// only at explicit export boundaries (to_double / to_decimal).
class Rational {
 public:
  Rational() { mpq_init(q_); }

  Rational(long n) {  // NOLINT(google-explicit-constructor)
    mpq_init(q_);
    mpq_set_si(q_, n, 1);
  }

  Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    mpq_init(q_);
    mpz_set_si(mpq_numref(q_), num);
    mpz_set_si(mpq_denref(q_), den);
    mpq_canonicalize(q_);
  }

  Rational(const Rational& o) {
    mpq_init(q_);
    mpq_set(q_, o.q_);
  }

  Rational(Rational&& o) noexcept {
    mpq_init(q_);
    mpq_swap(q_, o.q_);
  }

  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(q_, o.q_);
    return *this;
  }

  Rational& operator=(Rational&& o) noexcept {
    if (this != &o) mpq_swap(q_, o.q_);
    return *this;
  }

  ~Rational() { mpq_clear(q_); }

  // Accepts "p/q", "p", and finite decimal expansions like "-12.375".
  static Rational from_string(std::string_view s);

  int sign() const { return mpq_sgn(q_); }
  bool is_zero() const { return mpq_sgn(q_) == 0; }
  bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    mpq_add(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    mpq_sub(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    mpq_mul(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    Rational r;
    mpq_div(r.q_, a.q_, b.q_);
    return r;
  }
  Rational operator-() const {
    Rational r;
    mpq_neg(r.q_, q_);
    return r;
  }

  Rational& operator+=(const Rational& o) {
    mpq_add(q_, q_, o.q_);
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    mpq_sub(q_, q_, o.q_);
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    mpq_mul(q_, q_, o.q_);
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    mpq_div(q_, q_, o.q_);
    return *this;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_, b.q_) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = mpq_cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Rational abs() const {
    Rational r;
    mpq_abs(r.q_, q_);
    return r;
  }

  // Largest integer <= *this, as an integer-valued Rational.
  Rational floor() const {
    Rational r;
    mpz_fdiv_q(mpq_numref(r.q_), mpq_numref(q_), mpq_denref(q_));
    mpz_set_ui(mpq_denref(r.q_), 1);
    return r;
  }

  // 2^e for any (possibly negative) exponent.
  static Rational pow2(long e) {
    Rational r(1);
    if (e >= 0)
      mpq_mul_2exp(r.q_, r.q_, static_cast<mp_bitcnt_t>(e));
    else
      mpq_div_2exp(r.q_, r.q_, static_cast<mp_bitcnt_t>(-e));
    return r;
  }

  // base^e with exact integer exponentiation of numerator and denominator.
  static Rational pow(const Rational& base, unsigned long e) {
    Rational r;
    mpz_pow_ui(mpq_numref(r.q_), mpq_numref(base.q_), e);
    mpz_pow_ui(mpq_denref(r.q_), mpq_denref(base.q_), e);
    return r;  // coprime stays coprime under powers
  }

  // Exponent of the largest power of two <= *this. Requires *this > 0.
  long floor_log2() const;

  std::string to_string() const;      // "p/q", or "p" when q == 1
  std::string num_string() const;
  std::string den_string() const;
  // Decimal rendering with `sig` significant digits, round half away
  // from zero, trailing zeros trimmed. Export use only.
  std::string to_decimal(int sig = 12) const;
  double to_double() const { return mpq_get_d(q_); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_t q_;
};

inline Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

// Largest power of two <= x. Requires x > 0.
Rational floor_pow2(const Rational& x);

// Rational extended with the two infinities. NEG_INF < finite < POS_INF.
class ExtendedRational {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtendedRational() : kind_(Kind::Finite) {}
  ExtendedRational(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}  // NOLINT
  ExtendedRational(long v) : kind_(Kind::Finite), value_(v) {}                 // NOLINT

  static ExtendedRational neg_inf() { return ExtendedRational(Kind::NegInf); }
  static ExtendedRational pos_inf() { return ExtendedRational(Kind::PosInf); }

  bool finite() const { return kind_ == Kind::Finite; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  Kind kind() const { return kind_; }

  const Rational& value() const {
    if (!finite()) throw std::domain_error("ExtendedRational: not finite");
    return value_;
  }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ != Kind::Finite) return true;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtendedRational& a,
                                          const ExtendedRational& b) {
    auto rank = [](Kind k) { return k == Kind::NegInf ? 0 : k == Kind::Finite ? 1 : 2; };
    if (rank(a.kind_) != rank(b.kind_)) return rank(a.kind_) <=> rank(b.kind_);
    if (a.kind_ != Kind::Finite) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::NegInf: return "-inf";
      case Kind::PosInf: return "+inf";
      default: return value_.to_string();
    }
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedRational& x);

 private:
  explicit ExtendedRational(Kind k) : kind_(k) {}
  Kind kind_;
  Rational value_;
};

}  // namespace lipset
