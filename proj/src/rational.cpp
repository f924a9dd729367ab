#include "lipset/rational.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace lipset {

namespace {

bool valid_integer_token(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// mpz_set_str takes '-' but not '+'.
std::string strip_plus(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return std::string(s);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_rational(std::string_view s) {
  throw std::invalid_argument("not a rational: '" + std::string(s) + "'");
}

std::string mpz_to_string(const mpz_t z) {
  char* raw = mpz_get_str(nullptr, 10, z);
  std::string out(raw);
  void (*freefn)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefn);
  freefn(raw, out.size() + 1);
  return out;
}

}  // namespace

Rational Rational::from_string(std::string_view input) {
  std::string_view s = trim(input);
  if (s.empty()) bad_rational(input);

  Rational r;
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string num = strip_plus(s.substr(0, slash));
    std::string den = strip_plus(s.substr(slash + 1));
    if (!valid_integer_token(num) || !valid_integer_token(den)) bad_rational(input);
    if (mpz_set_str(mpq_numref(r.q_), num.c_str(), 10) != 0) bad_rational(input);
    if (mpz_set_str(mpq_denref(r.q_), den.c_str(), 10) != 0) bad_rational(input);
    if (mpz_sgn(mpq_denref(r.q_)) == 0) throw std::domain_error("Rational: zero denominator");
    mpq_canonicalize(r.q_);
    return r;
  }

  auto dot = s.find('.');
  if (dot != std::string_view::npos) {
    std::string_view head = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool neg = !head.empty() && head.front() == '-';
    if (!head.empty() && (head.front() == '+' || head.front() == '-')) head.remove_prefix(1);
    if (frac.empty() && head.empty()) bad_rational(input);
    auto all_digits = [](std::string_view t) {
      return std::all_of(t.begin(), t.end(),
                         [](unsigned char c) { return std::isdigit(c); });
    };
    if (!all_digits(head) || !all_digits(frac)) bad_rational(input);
    std::string digits = std::string(head) + std::string(frac);
    if (digits.empty()) bad_rational(input);
    if (mpz_set_str(mpq_numref(r.q_), digits.c_str(), 10) != 0) bad_rational(input);
    mpz_ui_pow_ui(mpq_denref(r.q_), 10, frac.size());
    if (neg) mpz_neg(mpq_numref(r.q_), mpq_numref(r.q_));
    mpq_canonicalize(r.q_);
    return r;
  }

  if (!valid_integer_token(s)) bad_rational(input);
  std::string tok = strip_plus(s);
  if (mpz_set_str(mpq_numref(r.q_), tok.c_str(), 10) != 0) bad_rational(input);
  mpz_set_ui(mpq_denref(r.q_), 1);
  return r;
}

long Rational::floor_log2() const {
  if (sign() <= 0) throw std::domain_error("floor_log2: argument must be positive");
  // |num| in [2^(bn-1), 2^bn), den in [2^(bd-1), 2^bd), so the true exponent
  // is bn-bd or bn-bd-1; settle it with one exact comparison.
  long bn = static_cast<long>(mpz_sizeinbase(mpq_numref(q_), 2));
  long bd = static_cast<long>(mpz_sizeinbase(mpq_denref(q_), 2));
  long e = bn - bd;
  if (pow2(e) > *this) --e;
  return e;
}

Rational floor_pow2(const Rational& x) {
  return Rational::pow2(x.floor_log2());
}

std::string Rational::to_string() const {
  std::string n = mpz_to_string(mpq_numref(q_));
  if (mpz_cmp_ui(mpq_denref(q_), 1) == 0) return n;
  return n + "/" + mpz_to_string(mpq_denref(q_));
}

std::string Rational::num_string() const { return mpz_to_string(mpq_numref(q_)); }

std::string Rational::den_string() const { return mpz_to_string(mpq_denref(q_)); }

std::string Rational::to_decimal(int sig) const {
  if (sig < 1) throw std::invalid_argument("to_decimal: need at least one digit");
  if (is_zero()) return "0";

  bool neg = sign() < 0;

  // Scale |value| so that t = floor(|value| * 10^P) has a few more than
  // `sig` digits, then round t down to exactly `sig` digits. The crude
  // magnitude estimate from mpz_sizeinbase is off by at most ~2 decimal
  // digits, which the extra guard digits absorb.
  long dn = static_cast<long>(mpz_sizeinbase(mpq_numref(q_), 10));
  long dd = static_cast<long>(mpz_sizeinbase(mpq_denref(q_), 10));
  long P = sig + 6 - dn + dd;

  mpz_t t, scale;
  mpz_init(t);
  mpz_init(scale);
  mpz_abs(t, mpq_numref(q_));
  if (P >= 0) {
    mpz_ui_pow_ui(scale, 10, static_cast<unsigned long>(P));
    mpz_mul(t, t, scale);
    mpz_fdiv_q(t, t, mpq_denref(q_));
  } else {
    mpz_ui_pow_ui(scale, 10, static_cast<unsigned long>(-P));
    mpz_mul(scale, scale, mpq_denref(q_));
    mpz_fdiv_q(t, t, scale);
  }

  std::string digits = mpz_to_string(t);
  long shift = static_cast<long>(digits.size()) - sig;
  long tens = -P;  // value ~= digits * 10^tens
  if (shift > 0) {
    mpz_t half, p10;
    mpz_init(half);
    mpz_init(p10);
    mpz_ui_pow_ui(p10, 10, static_cast<unsigned long>(shift));
    mpz_fdiv_q_ui(half, p10, 2);
    mpz_add(t, t, half);
    mpz_fdiv_q(t, t, p10);
    mpz_clear(half);
    mpz_clear(p10);
    tens += shift;
    digits = mpz_to_string(t);
    if (static_cast<long>(digits.size()) > sig) {  // rounding bumped a digit
      digits.pop_back();
      ++tens;
    }
  }
  mpz_clear(t);
  mpz_clear(scale);

  // Decimal point sits E digits after the start of `digits`.
  long E = static_cast<long>(digits.size()) + tens;

  auto trim_zeros = [](std::string& f) {
    while (!f.empty() && f.back() == '0') f.pop_back();
  };

  std::string out;
  if (E > 0 && E <= 18) {
    if (E >= static_cast<long>(digits.size())) {
      out = digits + std::string(E - digits.size(), '0');
    } else {
      std::string ip = digits.substr(0, E);
      std::string fp = digits.substr(E);
      trim_zeros(fp);
      out = fp.empty() ? ip : ip + "." + fp;
    }
  } else if (E <= 0 && E > -6) {
    std::string fp = std::string(-E, '0') + digits;
    trim_zeros(fp);
    out = fp.empty() ? "0" : "0." + fp;
  } else {
    std::string fp = digits.substr(1);
    trim_zeros(fp);
    out = digits.substr(0, 1) + (fp.empty() ? "" : "." + fp) + "e" +
          std::to_string(E - 1);
  }
  return neg ? "-" + out : out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

std::ostream& operator<<(std::ostream& os, const ExtendedRational& x) {
  return os << x.to_string();
}

}  // namespace lipset
