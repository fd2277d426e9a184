#pragma once

// Arbitrary-precision real on top of MPFR, carrying its working precision and
// the number of bits the producing computation can actually vouch for.

#include "defexp/rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>

namespace defexp {

class PrecReal {
public:
  explicit PrecReal(long bits = 64) : accuracy_(bits) {
    mpfr_init2(v_, clamp(bits));
    mpfr_set_zero(v_, 1);
  }
  PrecReal(const Rational& r, long bits) : PrecReal(bits) { mpfr_set_q(v_, r.get_mpq_t(), MPFR_RNDN); }
  PrecReal(long value, long bits) : PrecReal(bits) { mpfr_set_si(v_, value, MPFR_RNDN); }
  PrecReal(double value, long bits) : PrecReal(bits) { mpfr_set_d(v_, value, MPFR_RNDN); }
  PrecReal(int value, long bits) : PrecReal(static_cast<long>(value), bits) {}

  PrecReal(const PrecReal& o) : accuracy_(o.accuracy_) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  PrecReal(PrecReal&& o) noexcept : accuracy_(o.accuracy_) {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  PrecReal& operator=(const PrecReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
      accuracy_ = o.accuracy_;
    }
    return *this;
  }
  PrecReal& operator=(PrecReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    std::swap(accuracy_, o.accuracy_);
    return *this;
  }
  ~PrecReal() { mpfr_clear(v_); }

  static PrecReal from_string(const std::string& s, long bits) {
    PrecReal r(bits);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) throw DomainError("malformed real literal '" + s + "'");
    return r;
  }

  long precision_bits() const { return static_cast<long>(mpfr_get_prec(v_)); }
  /// Bits warranted by the computation that produced this value.
  long accuracy_bits() const { return accuracy_; }
  PrecReal& set_accuracy(long bits) {
    accuracy_ = std::min(bits, precision_bits());
    return *this;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; meaningless for zero.
  long exponent() const { return is_zero() ? std::numeric_limits<long>::min() / 2 : static_cast<long>(mpfr_get_exp(v_)); }
  /// log2 |x| as a double, -inf for zero.
  double log2_abs() const {
    if (is_zero()) return -INFINITY;
    long e = 0;
    double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
    return std::log2(std::fabs(m)) + static_cast<double>(e);
  }

  PrecReal abs() const {
    PrecReal r(*this);
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }
  PrecReal with_precision(long bits) const {
    PrecReal r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    r.accuracy_ = std::min(accuracy_, bits);
    return r;
  }

  friend PrecReal operator-(const PrecReal& a) {
    PrecReal r(a);
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

#define DEFEXP_PREC_BINOP(op, fn)                                          \
  friend PrecReal operator op(const PrecReal& a, const PrecReal& b) {     \
    PrecReal r(std::min(a.precision_bits(), b.precision_bits()));          \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                       \
    r.accuracy_ = std::min({a.accuracy_, b.accuracy_, r.precision_bits()}); \
    return r;                                                              \
  }                                                                        \
  PrecReal& operator op##=(const PrecReal& b) { return *this = *this op b; }
  DEFEXP_PREC_BINOP(+, mpfr_add)
  DEFEXP_PREC_BINOP(-, mpfr_sub)
  DEFEXP_PREC_BINOP(*, mpfr_mul)
  DEFEXP_PREC_BINOP(/, mpfr_div)
#undef DEFEXP_PREC_BINOP

  friend PrecReal operator*(const PrecReal& a, long k) {
    PrecReal r(a);
    mpfr_mul_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
  }
  friend PrecReal operator*(long k, const PrecReal& a) { return a * k; }
  friend PrecReal operator/(const PrecReal& a, long k) {
    PrecReal r(a);
    mpfr_div_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
  }
  friend PrecReal operator+(const PrecReal& a, long k) {
    PrecReal r(a);
    mpfr_add_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
  }
  friend PrecReal operator-(const PrecReal& a, long k) {
    PrecReal r(a);
    mpfr_sub_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
  }
  friend PrecReal operator*(const PrecReal& a, const Rational& q) {
    PrecReal r(a);
    mpfr_mul_q(r.v_, a.v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  friend PrecReal operator+(const PrecReal& a, const Rational& q) {
    PrecReal r(a);
    mpfr_add_q(r.v_, a.v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
  }

  friend bool operator<(const PrecReal& a, const PrecReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const PrecReal& a, const PrecReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const PrecReal& a, const PrecReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const PrecReal& a, const PrecReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const PrecReal& a, const PrecReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

  PrecReal pow(long e) const {
    PrecReal r(*this);
    mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
    return r;
  }
  PrecReal log() const {
    PrecReal r(*this);
    mpfr_log(r.v_, v_, MPFR_RNDN);
    return r;
  }

  /// Scientific notation with as many significant digits as the accuracy
  /// metadata warrants (at least one).
  std::string to_decimal() const { return to_decimal_digits(warranted_digits()); }

  std::string to_decimal_digits(long digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return sign() < 0 ? "-inf" : "inf";
    if (is_zero()) return "0";
    digits = std::max(1L, digits);
    mpfr_exp_t exp10 = 0;
    char* s = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits), v_, MPFR_RNDN);
    std::string m(s);
    mpfr_free_str(s);
    std::string out;
    std::size_t pos = 0;
    if (m[0] == '-') {
      out.push_back('-');
      pos = 1;
    }
    out.push_back(m[pos]);
    if (m.size() > pos + 1) {
      out.push_back('.');
      out.append(m, pos + 1, std::string::npos);
    }
    const long e = static_cast<long>(exp10) - 1;
    out += (e < 0 ? "e-" : "e+");
    out += std::to_string(std::labs(e));
    return out;
  }

  long warranted_digits() const {
    return std::max(1L, static_cast<long>(std::floor(static_cast<double>(accuracy_) * 0.30102999566398120)));
  }

private:
  static mpfr_prec_t clamp(long bits) {
    return static_cast<mpfr_prec_t>(std::clamp<long>(bits, MPFR_PREC_MIN, MPFR_PREC_MAX));
  }

  mpfr_t v_;
  long accuracy_;
};

}  // namespace defexp
