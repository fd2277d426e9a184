#pragma once

// Dense univariate polynomials over the rationals. The library uses them
// for polynomials in the summation index j.

#include "defexp/rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <utility>
#include <vector>

namespace defexp {

class JPoly {
public:
  JPoly() = default;
  JPoly(const Rational& c) : coeffs_{c} { trim(); }  // NOLINT: implicit scalar embedding
  JPoly(long c) : JPoly(Rational(c)) {}             // NOLINT
  explicit JPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  JPoly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

  /// The polynomial j.
  static JPoly monomial(std::size_t degree, const Rational& c = 1) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return JPoly(std::move(v));
  }
  static JPoly j() { return monomial(1); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// p(a*j + b), by Horner over polynomials.
  JPoly compose_affine(const Rational& a, const Rational& b) const {
    JPoly lin{b, a};
    JPoly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lin + JPoly(*it);
    return acc;
  }

  JPoly& operator+=(const JPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  JPoly& operator-=(const JPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  JPoly& operator*=(const Rational& c) {
    if (c == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  friend JPoly operator+(JPoly a, const JPoly& b) { return a += b; }
  friend JPoly operator-(JPoly a, const JPoly& b) { return a -= b; }
  friend JPoly operator-(JPoly a) { return a *= Rational(-1); }
  friend JPoly operator*(JPoly a, const Rational& c) { return a *= c; }
  friend JPoly operator*(const Rational& c, JPoly a) { return a *= c; }
  friend JPoly operator*(const JPoly& a, const JPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[i + k] += a.coeffs_[i] * b.coeffs_[k];
    }
    return JPoly(std::move(out));
  }
  friend JPoly& operator*=(JPoly& a, const JPoly& b) { return a = a * b; }
  friend bool operator==(const JPoly& a, const JPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division; returns (quotient, remainder).
  std::pair<JPoly, JPoly> divmod(const JPoly& divisor) const {
    if (divisor.is_zero()) throw DomainError("polynomial division by zero");
    JPoly rem = *this;
    const long dd = divisor.degree();
    if (rem.degree() < dd) return {JPoly{}, rem};
    std::vector<Rational> quot(static_cast<std::size_t>(rem.degree() - dd + 1));
    const Rational lead = divisor.leading();
    while (!rem.is_zero() && rem.degree() >= dd) {
      const auto shift = static_cast<std::size_t>(rem.degree() - dd);
      Rational c = rem.leading() / lead;
      quot[shift] = c;
      for (std::size_t i = 0; i < divisor.coeffs_.size(); ++i) rem.coeffs_[i + shift] -= c * divisor.coeffs_[i];
      rem.trim();
    }
    return {JPoly(std::move(quot)), rem};
  }

  bool divisible_by(const JPoly& divisor) const { return divmod(divisor).second.is_zero(); }

private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

inline JPoly pow(const JPoly& p, unsigned e) {
  JPoly r(1);
  for (unsigned i = 0; i < e; ++i) r *= p;
  return r;
}

}  // namespace defexp
