#pragma once

// Truncated power series in q with exact coefficients, the concrete
// expansions of A_i, E_2, E_4, E_6 and P_0, and numeric evaluation.

#include "defexp/exactmath.hpp"
#include "defexp/mpoly.hpp"
#include "defexp/precreal.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace defexp {

/// Known modulo q^{trunc+1}.
class QSeries {
public:
  explicit QSeries(std::size_t trunc = 0) : coeffs_(trunc + 1) {}
  QSeries(std::size_t trunc, std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(trunc + 1);
  }
  static QSeries constant(std::size_t trunc, const Rational& c) {
    QSeries s(trunc);
    s.coeffs_[0] = c;
    return s;
  }

  std::size_t trunc() const { return coeffs_.size() - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_.at(i); }
  Rational& operator[](std::size_t i) { return coeffs_.at(i); }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
  }

  QSeries truncated(std::size_t n) const {
    if (n > trunc()) throw DomainError("cannot extend a truncated series");
    return QSeries(n, std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(n + 1)));
  }

  friend QSeries operator+(const QSeries& a, const QSeries& b) {
    QSeries r(std::min(a.trunc(), b.trunc()));
    for (std::size_t i = 0; i <= r.trunc(); ++i) r.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
    return r;
  }
  friend QSeries operator-(const QSeries& a, const QSeries& b) {
    QSeries r(std::min(a.trunc(), b.trunc()));
    for (std::size_t i = 0; i <= r.trunc(); ++i) r.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
    return r;
  }
  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    QSeries r(std::min(a.trunc(), b.trunc()));
    const std::size_t n = r.trunc();
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t k = 0; i + k <= n; ++k)
        if (b.coeffs_[k] != 0) r.coeffs_[i + k] += a.coeffs_[i] * b.coeffs_[k];
    }
    return r;
  }
  friend QSeries operator*(QSeries a, const Rational& c) {
    for (auto& x : a.coeffs_) x *= c;
    return a;
  }
  friend QSeries operator*(const Rational& c, QSeries a) { return std::move(a) * c; }
  friend bool operator==(const QSeries& a, const QSeries& b) { return a.coeffs_ == b.coeffs_; }

private:
  std::vector<Rational> coeffs_;
};

/// Theta = q d/dq, term by term.
inline QSeries theta_q(const QSeries& s) {
  QSeries r(s.trunc());
  for (std::size_t m = 1; m <= s.trunc(); ++m) r[m] = s[m] * Rational(static_cast<long>(m));
  return r;
}

/// A_i = sum_{m >= 1} m^i sigma(m) q^m.
inline QSeries a_series(unsigned i, std::size_t trunc) {
  QSeries s(trunc);
  for (std::size_t m = 1; m <= trunc; ++m) {
    Integer mi;
    mpz_ui_pow_ui(mi.get_mpz_t(), m, i);
    s[m] = Rational(mi * Integer(static_cast<unsigned long>(divisor_sigma(m))));
  }
  return s;
}

enum class Eisenstein { E2, E4, E6 };

/// 1 + c sum_n n^a q^n/(1 - q^n) = 1 + c sum_m sigma_a(m) q^m.
inline QSeries eisenstein_q(Eisenstein which, std::size_t trunc) {
  long c = 0;
  unsigned a = 0;
  switch (which) {
    case Eisenstein::E2: c = -24, a = 1; break;
    case Eisenstein::E4: c = 240, a = 3; break;
    case Eisenstein::E6: c = -504, a = 5; break;
  }
  QSeries s = QSeries::constant(trunc, 1);
  for (std::size_t m = 1; m <= trunc; ++m) s[m] = Rational(divisor_power_sum(m, a) * c);
  return s;
}

/// P_0 = sum_{j >= 1} (-1)^{j-1} (2j - 1) q^{j(j-1)/2}.
inline QSeries jacobi_p0(std::size_t trunc) {
  QSeries s(trunc);
  for (std::size_t j = 1;; ++j) {
    const std::size_t e = j * (j - 1) / 2;
    if (e > trunc) break;
    const long c = static_cast<long>(2 * j - 1);
    s[e] += Rational(j % 2 == 1 ? c : -c);
  }
  return s;
}

/// Substitutes the q-expansions of the A- or E-symbols into p.
inline QSeries eval_mpoly_series(const MPoly& p, std::size_t trunc) {
  if (p.is_constant()) return QSeries::constant(trunc, p.constant_term());
  std::function<QSeries(std::size_t)> value;
  switch (p.family()) {
    case SymbolFamily::A: value = [&](std::size_t i) { return a_series(static_cast<unsigned>(i), trunc); }; break;
    case SymbolFamily::E:
      value = [&](std::size_t i) {
        static const Eisenstein which[] = {Eisenstein::E2, Eisenstein::E4, Eisenstein::E6};
        return eisenstein_q(which[i], trunc);
      };
      break;
    default: throw DomainError("eval_mpoly_series supports A- and E-symbol polynomials only");
  }
  return p.evaluate<QSeries>(value, [&](const Rational& c) { return QSeries::constant(trunc, c); });
}

struct SeriesValue {
  PrecReal value;
  /// |last coefficient| q0^{N+1} / (1 - q0); a diagnostic, not a bound.
  PrecReal tail_estimate;
};

/// Horner evaluation of the truncated polynomial at 0 < q0 < 1.
inline SeriesValue eval_series_numeric(const QSeries& s, const PrecReal& q0, long bits) {
  if (q0.sign() <= 0 || !(q0 < PrecReal(1L, bits))) throw DomainError("series evaluation needs 0 < q < 1");
  const PrecReal q = q0.with_precision(bits);
  PrecReal acc(bits);
  for (std::size_t i = s.trunc() + 1; i-- > 0;) acc = acc * q + PrecReal(s[i], bits);
  PrecReal last(s[s.trunc()], bits);
  PrecReal tail = last.abs() * q.pow(static_cast<long>(s.trunc() + 1)) / (PrecReal(1L, bits) - q);
  acc.set_accuracy(std::min(bits, q0.accuracy_bits()));
  return {acc, tail};
}

}  // namespace defexp
