#pragma once

// Exact rational scalar used by every symbolic object in the library.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace defexp {

/// Arbitrary-size rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown for malformed input that a caller could have validated.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// "p/q", or "p" when q == 1. The sign lives on the numerator.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p", "p/q" or a plain decimal literal such as "0.25" or "-1.5e-3".
/// Decimals are converted exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw DomainError("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0)
      throw DomainError("malformed rational literal '" + s + "'");
    r.canonicalize();
    return r;
  }

  std::string mantissa = s;
  long exponent = 0;
  auto e = s.find_first_of("eE");
  if (e != std::string::npos) {
    mantissa = s.substr(0, e);
    try {
      std::size_t used = 0;
      exponent = std::stol(s.substr(e + 1), &used);
      if (used != s.size() - e - 1) throw DomainError("");
    } catch (const std::exception&) {
      throw DomainError("malformed exponent in '" + s + "'");
    }
  }
  bool negative = false;
  std::size_t pos = 0;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    pos = 1;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; pos < mantissa.size(); ++pos) {
    char c = mantissa[pos];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      throw DomainError("malformed decimal literal '" + s + "'");
    }
  }
  if (digits.empty()) throw DomainError("malformed decimal literal '" + s + "'");

  Integer num(digits, 10);
  Integer scale;
  long shift = exponent - frac_digits;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift < 0 ? Rational(num, scale) : Rational(num * scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

inline Rational pow(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return r;
}

}  // namespace defexp
