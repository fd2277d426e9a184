#pragma once

// Brute-force reference computations for the tests. Nothing here calls the
// library routine it is used to check.

#include "defexp/rational.hpp"

#include <mpfr.h>

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using defexp::Integer;
using defexp::Rational;

/// Akiyama-Tanigawa; returns B_1 = -1/2.
inline Rational bernoulli(unsigned n) {
  std::vector<Rational> a(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (unsigned j = m; j >= 1; --j) a[j - 1] = Rational(static_cast<long>(j)) * (a[j - 1] - a[j]);
  }
  return n == 1 ? -a[0] : a[0];
}

inline Integer divisor_power_sum(std::uint64_t m, unsigned a) {
  Integer s = 0;
  for (std::uint64_t d = 1; d <= m; ++d)
    if (m % d == 0) {
      Integer p;
      mpz_ui_pow_ui(p.get_mpz_t(), d, a);
      s += p;
    }
  return s;
}

/// 1^m + 2^m + ... + (j-1)^m.
inline Integer power_sum(unsigned m, unsigned j) {
  Integer s = 0;
  for (unsigned t = 1; t < j; ++t) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), t, m);
    s += p;
  }
  return s;
}

/// Elementary symmetric e_i of {1, ..., j-1}.
inline Integer elementary(unsigned i, unsigned j) {
  std::vector<Integer> e(i + 1, 0);
  e[0] = 1;
  for (unsigned t = 1; t < j; ++t)
    for (unsigned r = i; r >= 1; --r) e[r] += e[r - 1] * t;
  return e[i];
}

/// Coefficient of x^k in prod_{t=0}^{j-1} 1/(1 + t x).
inline Integer reciprocal_product(unsigned k, unsigned j) {
  std::vector<Integer> c(k + 1, 0);
  c[0] = 1;
  for (unsigned t = 1; t < j; ++t) {
    // multiply by 1/(1 + t x) = sum (-t)^r x^r
    for (unsigned r = 1; r <= k; ++r) c[r] -= c[r - 1] * t;
  }
  return c[k];
}

/// Generalized binomial alpha (alpha-1) ... (alpha-k+1) / k!.
inline Rational binom(const Rational& alpha, unsigned k) {
  Rational r = 1;
  for (unsigned i = 0; i < k; ++i) r *= (alpha - Rational(i)) / Rational(i + 1);
  return r;
}

/// prod_{n=1}^{N} (1 - q^n)^3 modulo q^{N+1}.
inline std::vector<Integer> triple_product(std::size_t N) {
  std::vector<Integer> c(N + 1, 0);
  c[0] = 1;
  for (std::size_t n = 1; n <= N; ++n)
    for (int rep = 0; rep < 3; ++rep)
      for (std::size_t i = N; i >= n; --i) c[i] -= c[i - n];
  return c;
}

/// sum_{n < terms} x^n q^{n(n-1)/2} / n! with plain MPFR arithmetic.
inline double f_direct(const Rational& x, const Rational& q, long bits, unsigned terms = 200) {
  mpfr_t sum, term, xm, qm, qn;
  mpfr_inits2(bits, sum, term, xm, qm, qn, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(xm, x.get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(qm, q.get_mpq_t(), MPFR_RNDN);
  mpfr_set_ui(sum, 0, MPFR_RNDN);
  mpfr_set_ui(term, 1, MPFR_RNDN);
  mpfr_set_ui(qn, 1, MPFR_RNDN);
  for (unsigned n = 0; n < terms; ++n) {
    mpfr_add(sum, sum, term, MPFR_RNDN);
    // term_{n+1} = term_n * x * q^n / (n+1)
    mpfr_mul(term, term, xm, MPFR_RNDN);
    mpfr_mul(term, term, qn, MPFR_RNDN);
    mpfr_div_ui(term, term, n + 1, MPFR_RNDN);
    mpfr_mul(qn, qn, qm, MPFR_RNDN);
  }
  const double out = mpfr_get_d(sum, MPFR_RNDN);
  mpfr_clears(sum, term, xm, qm, qn, static_cast<mpfr_ptr>(nullptr));
  return out;
}

/// Deterministic generator for property tests.
class Gen {
public:
  explicit Gen(std::uint64_t seed = 20241018) : rng_(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  Rational rational(long span = 9) {
    const long den = integer(1, span);
    return defexp::make_rational(integer(-span, span), den);
  }
  std::vector<Rational> coeffs(std::size_t max_len) {
    std::vector<Rational> c(static_cast<std::size_t>(integer(0, static_cast<long>(max_len))));
    for (auto& x : c) x = rational();
    return c;
  }

private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
