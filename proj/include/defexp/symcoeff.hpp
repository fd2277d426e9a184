#pragma once

// Symbolic coefficients of the zero expansion
//
//   x_k = -k q^{1-k} (1 + sum_i C_i(q) k^{-1-i} + ...)
//
// C_n is built from the structured coefficients S_i(n) of the kernel
// (G - H)/x^2 (1 + a(x) x^2) and the polynomials P_m defined by
// Theta^m(P_0) = -3 P_0 P_m. Everything here is exact.

#include "defexp/exactmath.hpp"
#include "defexp/jpoly.hpp"
#include "defexp/mpoly.hpp"

#include <array>
#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace defexp {

// ---------------------------------------------------------------------------
// Theta operator and reduction to Q[A0, A1, A2]
// ---------------------------------------------------------------------------

inline MPoly a_sym(std::size_t i, const Rational& c = 1) { return MPoly::variable(SymbolFamily::A, i, c); }

/// A_3 = A_2 + 36 A_1^2 - 24 A_0 A_2.
inline MPoly a3_relation() {
  MPoly r = a_sym(2);
  r += MPoly::monomial(SymbolFamily::A, {0, 2}, 36);
  r += MPoly::monomial(SymbolFamily::A, {1, 0, 1}, -24);
  return r;
}

/// Theta(A_i) = A_{i+1}, extended as a derivation.
inline MPoly theta_extended(const MPoly& p) {
  MPoly out(SymbolFamily::A);
  const std::size_t n = p.num_symbols();
  for (std::size_t i = 0; i < n; ++i) {
    MPoly d = p.derivative(i);
    if (!d.is_zero()) out += d * a_sym(i + 1);
  }
  return out;
}

/// Theta on Q[A0, A1, A2] with Theta(A2) replaced by the A_3 relation.
inline MPoly theta_closed(const MPoly& p) {
  if (p.num_symbols() > 3) throw DomainError("theta_closed expects a polynomial in A0, A1, A2");
  static const MPoly a3 = a3_relation();
  MPoly out(SymbolFamily::A);
  out += p.derivative(0) * a_sym(1);
  out += p.derivative(1) * a_sym(2);
  out += p.derivative(2) * a3;
  return out;
}

namespace detail {

// R_n: the representative of A_n in Q[A0, A1, A2].
class ReductionTable {
public:
  static ReductionTable& instance() {
    static ReductionTable t;
    return t;
  }
  MPoly get(std::size_t n) {
    std::lock_guard<std::mutex> lock(mu_);
    while (table_.size() <= n) {
      const std::size_t k = table_.size();
      table_.push_back(k < 3 ? a_sym(k) : k == 3 ? a3_relation() : theta_closed(table_.back()));
    }
    return table_[n];
  }

private:
  std::mutex mu_;
  std::deque<MPoly> table_;
};

}  // namespace detail

/// The unique representative of A_n in Q[A0, A1, A2].
inline MPoly reduced_a(std::size_t n) { return detail::ReductionTable::instance().get(n); }

inline MPoly reduce_to_A012(const MPoly& p) {
  if (p.is_constant()) return p.relabeled(SymbolFamily::A);
  if (p.family() != SymbolFamily::A) throw DomainError("reduce_to_A012 expects an A-symbol polynomial");
  const std::size_t n = p.num_symbols();
  if (n <= 3) return p;
  std::vector<MPoly> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) images.push_back(reduced_a(i));
  return p.substitute(images, SymbolFamily::A);
}

/// Theta on A-polynomials. With extend = false the result is brought back
/// into Q[A0, A1, A2].
inline MPoly theta(const MPoly& p, bool extend = true) {
  MPoly t = theta_extended(p);
  return extend ? t : reduce_to_A012(t);
}

// ---------------------------------------------------------------------------
// Kernel oracle: brute-force series expansion of (G - H)/x^2 (1 + a(x) x^2)
// ---------------------------------------------------------------------------

inline MPoly jpoly_to_kernel(const JPoly& p) {
  MPoly out(SymbolFamily::Kernel);
  const auto& c = p.coeffs();
  for (std::size_t d = 0; d < c.size(); ++d) out.add_term(Exponents{static_cast<unsigned>(d)}, c[d]);
  return out;
}

/// Coefficient of x^{n-1} in (G(x) - H(x))/x^2 (1 + a(x) x^2) with
/// a(x) = a_0 + a_1 x + ..., as a polynomial in j and the a_k.
/// G and H are expanded from their product generating functions.
inline MPoly kernel_coefficient(unsigned n) {
  if (n == 0) throw DomainError("kernel_coefficient requires n >= 1");
  using Series = std::vector<MPoly>;
  const std::size_t len = n + 2;  // x^0 .. x^{n+1}
  const SymbolFamily K = SymbolFamily::Kernel;

  auto zero = [&] { return Series(len, MPoly(K)); };
  auto mul = [&](const Series& a, const Series& b) {
    Series out = zero();
    for (std::size_t i = 0; i < len; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t k = 0; i + k < len; ++k)
        if (!b[k].is_zero()) out[i + k] += a[i] * b[k];
    }
    return out;
  };

  // a(x) x^2
  Series ax2 = zero();
  for (std::size_t k = 2; k < len; ++k) ax2[k] = MPoly::variable(K, k - 2 + 1);

  // (1 + a x^2)^j = sum_m binom(j, m) (a x^2)^m, and likewise with exponent 1 - j
  Series bin_g = zero(), bin_h = zero();
  Series ax2_pow = zero();
  ax2_pow[0] = MPoly::constant(K, 1);
  const JPoly one_minus_j{Rational(1), Rational(-1)};
  for (unsigned m = 0; 2 * m < len; ++m) {
    const MPoly cg = jpoly_to_kernel(gen_binomial(JPoly::j(), m));
    const MPoly ch = jpoly_to_kernel(gen_binomial(one_minus_j, m));
    for (std::size_t i = 0; i < len; ++i) {
      if (ax2_pow[i].is_zero()) continue;
      bin_g[i] += cg * ax2_pow[i];
      bin_h[i] += ch * ax2_pow[i];
    }
    ax2_pow = mul(ax2_pow, ax2);
  }

  // prod_{i=0}^{j-1} 1/(1 + i x) = sum Q_k x^k;  prod_{i=1}^{j-1} (1 - i x) = sum (-1)^k sigma_k x^k
  Series q_series = zero(), s_series = zero();
  for (unsigned k = 0; k < len; ++k) {
    q_series[k] = jpoly_to_kernel(q_poly(k));
    JPoly s = sigma_poly(k);
    s_series[k] = jpoly_to_kernel(k % 2 == 0 ? s : -s);
  }

  const Series g = mul(bin_g, q_series);
  const Series h = mul(bin_h, s_series);
  Series diff = zero();
  for (std::size_t i = 0; i < len; ++i) diff[i] = g[i] - h[i];
  if (!diff[0].is_zero() || !diff[1].is_zero())
    throw std::logic_error("kernel: G - H does not vanish to second order");

  // (G - H)/x^2 (1 + a x^2): coefficient of x^{n-1}
  MPoly out = diff[n + 1];
  for (std::size_t t = 0; t + 2 <= n - 1; ++t) {
    // diff[t + 2] x^t times a_{n-1-t-2} x^{n-1-t-2} x^2
    const std::size_t ai = n - 1 - t - 2;
    out += diff[t + 2] * MPoly::variable(K, ai + 1);
  }
  return out;
}

/// The kernel coefficient written as u (a_{n-1} + S_0 + S_1 v + ... + S_n v^n).
struct KernelForm {
  unsigned n = 0;
  std::vector<MPoly> s;  ///< S_i(n) as polynomials in the lower-case a_k, i = 0..n
};

inline KernelForm kernel_expand(unsigned n) {
  const MPoly raw = kernel_coefficient(n);

  // Group by the a-part of each monomial; the j-part becomes a JPoly.
  std::map<Exponents, std::vector<Rational>> groups;
  for (const auto& [e, c] : raw.terms()) {
    const unsigned jdeg = e.empty() ? 0 : e[0];
    Exponents a_part(e.size() > 1 ? e.begin() + 1 : e.end(), e.end());
    auto& coeffs = groups[a_part];
    if (coeffs.size() <= jdeg) coeffs.resize(jdeg + 1);
    coeffs[jdeg] += c;
  }

  KernelForm out;
  out.n = n;
  out.s.assign(n + 1, MPoly(SymbolFamily::LowerA));
  Exponents lead(n, 0);
  lead[n - 1] = 1;
  bool saw_lead = false;
  for (auto& [a_part, coeffs] : groups) {
    UVDecomposition dec = uv_decompose(JPoly(std::move(coeffs)));
    if (!dec.even.empty()) throw std::logic_error("kernel coefficient has a pure-v component");
    auto odd = dec.odd.vcoeffs;
    Exponents key = a_part;
    while (!key.empty() && key.back() == 0) key.pop_back();
    Exponents lead_key = lead;
    while (!lead_key.empty() && lead_key.back() == 0) lead_key.pop_back();
    if (key == lead_key) {
      if (odd.empty() || odd[0] != 1) throw std::logic_error("kernel coefficient of a_{n-1} is not u");
      odd[0] -= 1;
      saw_lead = true;
    } else if (a_part.size() >= n && a_part[n - 1] != 0) {
      throw std::logic_error("a_{n-1} occurs non-linearly in the kernel coefficient");
    }
    for (std::size_t i = 0; i < odd.size(); ++i) {
      if (i > n) {
        if (odd[i] != 0) throw std::logic_error("kernel coefficient exceeds degree n in v");
        continue;
      }
      out.s[i].add_term(key, odd[i]);
    }
  }
  if (!saw_lead) throw std::logic_error("kernel coefficient lacks the u a_{n-1} term");
  return out;
}

// ---------------------------------------------------------------------------
// S_i(n), P_m and C_n
// ---------------------------------------------------------------------------

namespace detail {

class DeltaCache {
public:
  static DeltaCache& instance() {
    static DeltaCache c;
    return c;
  }
  UVForm get(long N, long m) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(N, m);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, delta(N, m)).first->second;
  }

private:
  std::mutex mu_;
  std::map<std::pair<long, long>, UVForm> cache_;
};

/// sum over compositions i_1 + ... + i_m = total with parts >= 1 of C_{i_1}...C_{i_m}.
inline MPoly composition_sum(unsigned parts, unsigned total) {
  MPoly out(SymbolFamily::C);
  if (parts == 0) {
    if (total == 0) out.add_term({}, 1);
    return out;
  }
  Exponents e;
  auto rec = [&](auto&& self, unsigned left, unsigned remaining) -> void {
    if (left == 0) {
      if (remaining == 0) out.add_term(e, 1);
      return;
    }
    for (unsigned part = 1; part + (left - 1) <= remaining; ++part) {
      if (e.size() < part) e.resize(part, 0);
      ++e[part - 1];
      self(self, left - 1, remaining - part);
      --e[part - 1];
    }
  };
  rec(rec, parts, total);
  return out;
}

}  // namespace detail

/// [u v^i] Delta(N, m).
inline Rational delta_coeff(long N, long m, std::size_t i) { return detail::DeltaCache::instance().get(N, m).coeff(i); }

/// S_i(n) as a polynomial in C_1, ..., C_{n-1}:
///   [u v^i] Delta(n+1, 0)
///   + sum_{N=3}^{n+1} sum_{m=1}^{N/2} ([u v^i] Delta(N,m) + [u v^i] Delta(N-2,m-1))
///       * sum_{i_1+...+i_m = n-N+m+1} C_{i_1} ... C_{i_m}
inline MPoly s_poly_uncached(unsigned i, unsigned n) {
  if (n == 0 || i > n) throw DomainError("s_poly requires 0 <= i <= n and n >= 1");
  MPoly out = MPoly::constant(SymbolFamily::C, delta_coeff(n + 1, 0, i));
  for (long N = 3; N <= static_cast<long>(n) + 1; ++N) {
    for (long m = 1; m <= N / 2; ++m) {
      Rational c = delta_coeff(N, m, i) + delta_coeff(N - 2, m - 1, i);
      if (c == 0) continue;
      out += detail::composition_sum(static_cast<unsigned>(m), static_cast<unsigned>(n - N + m + 1)) * c;
    }
  }
  return out;
}

/// Memoized C_n, P_m and S_i(n). Entries are append-only; references stay
/// valid for the life of the table.
class CoeffTable {
public:
  static CoeffTable& shared() {
    static CoeffTable t;
    return t;
  }

  const MPoly& p(unsigned m) {
    if (m == 0) throw DomainError("P_m requires m >= 1");
    std::lock_guard<std::mutex> lock(mu_);
    grow_p(m);
    return p_[m - 1];
  }

  const MPoly& s(unsigned i, unsigned n) {
    if (n == 0 || i > n) throw DomainError("s_poly requires 0 <= i <= n and n >= 1");
    std::lock_guard<std::mutex> lock(mu_);
    grow_s(n);
    return s_[n - 1][i];
  }

  const MPoly& c(unsigned n) {
    if (n == 0) throw DomainError("C_n requires n >= 1");
    std::lock_guard<std::mutex> lock(mu_);
    grow_c(n);
    return c_[n - 1];
  }

  const MPoly& c_reduced(unsigned n) {
    if (n == 0) throw DomainError("C_n requires n >= 1");
    std::lock_guard<std::mutex> lock(mu_);
    grow_c(n);
    while (c_reduced_.size() < n) c_reduced_.push_back(reduce_to_A012(c_[c_reduced_.size()]));
    return c_reduced_[n - 1];
  }

private:
  void grow_p(unsigned m) {
    if (p_.empty()) p_.push_back(a_sym(0));
    while (p_.size() < m) p_.push_back(theta_extended(p_.back()) - a_sym(0) * p_.back() * Rational(3));
  }

  void grow_s(unsigned n) {
    while (s_.size() < n) {
      const auto k = static_cast<unsigned>(s_.size() + 1);
      std::vector<MPoly> row;
      row.reserve(k + 1);
      for (unsigned i = 0; i <= k; ++i) row.push_back(s_poly_uncached(i, k));
      s_.push_back(std::move(row));
    }
  }

  void grow_c(unsigned n) {
    while (c_.size() < n) {
      const auto k = static_cast<unsigned>(c_.size() + 1);
      grow_s(k);
      grow_p(k);
      // C-symbol index t stands for C_{t+1}
      std::vector<MPoly> images(c_.begin(), c_.end());
      const auto& row = s_[k - 1];
      MPoly ck = -row[0].substitute(images, SymbolFamily::A);
      Integer scale = 6;  // 3 * 2^i
      for (unsigned i = 1; i <= k; ++i, scale *= 2) {
        MPoly si = row[i].substitute(images, SymbolFamily::A);
        if (si.is_zero()) continue;
        ck += si * p_[i - 1] * Rational(scale);
      }
      c_.push_back(ck.relabeled(SymbolFamily::A));
    }
  }

  std::mutex mu_;
  std::deque<MPoly> p_;
  std::deque<std::vector<MPoly>> s_;
  std::deque<MPoly> c_;
  std::deque<MPoly> c_reduced_;
};

inline MPoly p_m(unsigned m) { return CoeffTable::shared().p(m); }
inline MPoly s_poly(unsigned i, unsigned n) { return CoeffTable::shared().s(i, n); }
/// C_n in A_0, ..., A_{n-1} as produced by the recursion.
inline MPoly c_n(unsigned n) { return CoeffTable::shared().c(n); }
/// C_n in Q[A0, A1, A2].
inline MPoly c_n_reduced(unsigned n) { return CoeffTable::shared().c_reduced(n); }

// ---------------------------------------------------------------------------
// Eisenstein basis
// ---------------------------------------------------------------------------

inline MPoly e_sym(std::size_t i, const Rational& c = 1) { return MPoly::variable(SymbolFamily::E, i, c); }

/// A0, A1, A2 as polynomials in E2, E4, E6.
inline std::array<MPoly, 3> a012_in_eisenstein() {
  const MPoly one = MPoly::constant(SymbolFamily::E, 1);
  const MPoly e2 = e_sym(0), e4 = e_sym(1), e6 = e_sym(2);
  MPoly a0 = (one - e2) * Rational(1, 24);
  MPoly a1 = (e4 - e2 * e2) * Rational(1, 288);
  MPoly a2 = (e2 * e2 * e2 - e2 * e4 * Rational(3) + e6 * Rational(2)) * Rational(-1, 1728);
  return {a0, a1, a2};
}

/// E2, E4, E6 as polynomials in A0, A1, A2.
inline std::array<MPoly, 3> eisenstein_in_a012() {
  auto A = [](Exponents e, long c) { return MPoly::monomial(SymbolFamily::A, std::move(e), c); };
  MPoly e2 = A({}, 1) + A({1}, -24);
  MPoly e4 = A({}, 1) + A({1}, -48) + A({2}, 576) + A({0, 1}, 288);
  MPoly e6 = A({}, 1) + A({1}, -72) + A({2}, 1728) + A({3}, -13824) + A({0, 1}, 432) + A({1, 1}, -10368) +
             A({0, 0, 1}, -864);
  return {e2, e4, e6};
}

inline MPoly to_eisenstein(const MPoly& p) {
  if (p.is_constant()) return p.relabeled(SymbolFamily::E);
  if (p.family() != SymbolFamily::A || p.num_symbols() > 3)
    throw DomainError("to_eisenstein expects a polynomial in A0, A1, A2");
  auto images = a012_in_eisenstein();
  return p.substitute({images.begin(), images.end()}, SymbolFamily::E);
}

inline MPoly from_eisenstein(const MPoly& p) {
  if (p.is_constant()) return p.relabeled(SymbolFamily::A);
  if (p.family() != SymbolFamily::E) throw DomainError("from_eisenstein expects an E-symbol polynomial");
  auto images = eisenstein_in_a012();
  return p.substitute({images.begin(), images.end()}, SymbolFamily::A);
}

/// Coefficients of A0, A1, A2.
inline std::array<Rational, 3> linear_part(const MPoly& p) {
  if (!p.is_constant() && p.num_symbols() > 3) throw DomainError("linear_part expects a polynomial in A0, A1, A2");
  return {p.linear_coeff(0), p.linear_coeff(1), p.linear_coeff(2)};
}

/// Sum of the coefficients of all degree-one terms.
inline Rational linear_coeff_sum(const MPoly& p) {
  Rational s = 0;
  for (const auto& [e, c] : p.terms())
    if (total_degree(e) == 1) s += c;
  return s;
}

}  // namespace defexp
