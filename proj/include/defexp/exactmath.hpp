#pragma once

// Scalar substrate: Bernoulli numbers, binomials, divisor sums and the
// Faulhaber polynomials p_m(j) = 1^m + 2^m + ... + (j-1)^m.

#include "defexp/rational.hpp"
#include "defexp/upoly.hpp"

#include <cstdint>
#include <mutex>
#include <vector>

namespace defexp {

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// B_n with B_1 = -1/2, from sum_{k<=n} C(n+1,k) B_k = 0.
inline Rational bernoulli(unsigned n) {
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= n) {
    const auto m = static_cast<unsigned long>(table.size());
    Rational acc = 0;
    for (unsigned long k = 0; k < m; ++k) acc += Rational(binomial(m + 1, k)) * table[k];
    Rational b = -acc / Rational(static_cast<long>(m + 1));
    b.canonicalize();
    table.push_back(b);
  }
  return table[n];
}

/// alpha (alpha-1) ... (alpha-k+1) / k!
inline Rational gen_binomial(const Rational& alpha, unsigned k) {
  Rational num = 1;
  for (unsigned i = 0; i < k; ++i) num *= alpha - i;
  Rational r = num / Rational(factorial(k));
  r.canonicalize();
  return r;
}

/// Same product with a polynomial argument.
inline JPoly gen_binomial(const JPoly& alpha, unsigned k) {
  JPoly num(1);
  for (unsigned i = 0; i < k; ++i) num *= alpha - JPoly(Rational(i));
  Rational inv = Rational(1) / Rational(factorial(k));
  return num * inv;
}

/// sum of d^power over positive divisors d of m, by trial division.
inline Integer divisor_power_sum(std::uint64_t m, unsigned power) {
  if (m == 0) throw DomainError("divisor sum of 0");
  Integer total = 0;
  auto add = [&](std::uint64_t d) {
    Integer t;
    mpz_ui_pow_ui(t.get_mpz_t(), d, power);
    total += t;
  };
  for (std::uint64_t d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    add(d);
    if (d != m / d) add(m / d);
  }
  return total;
}

inline std::uint64_t divisor_sigma(std::uint64_t m) {
  if (m == 0) throw DomainError("divisor_sigma requires m >= 1");
  std::uint64_t total = 0;
  for (std::uint64_t d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    total += d;
    if (d != m / d) total += m / d;
  }
  return total;
}

/// p_m(j) = sum_{k=1}^{j-1} k^m as a polynomial of degree m+1 in j.
inline JPoly power_sum_poly(unsigned m) {
  if (m == 0) throw DomainError("power_sum_poly requires m >= 1");
  std::vector<Rational> c(m + 2);
  for (unsigned i = 0; i <= m; ++i) {
    Rational term = Rational(binomial(m + 1, i)) * bernoulli(i) / Rational(static_cast<long>(m + 1));
    if (i % 2 == 1) term = -term;
    c[m + 1 - i] += term;
  }
  c[m] -= 1;
  for (auto& x : c) x.canonicalize();
  return JPoly(std::move(c));
}

}  // namespace defexp
