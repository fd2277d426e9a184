#pragma once

// Stirling-type polynomial families in the index j and the (u, v) change of
// basis u = 2j - 1, v = j(j - 1).
//
//   sigma_i(j) = sum_{1 <= n_1 < ... < n_i <= j-1} n_1 ... n_i
//   Q_k(j)     = -sum_{i=1}^{k} sigma_i Q_{k-i},  Q_0 = 1
//   G(N,m)     = binom(j, m) Q_{N-2m}(j)
//   H(N,m)     = (-1)^N binom(1-j, m) sigma_{N-2m}(j)
//   Delta(N,m) = G(N,m) - H(N,m)

#include "defexp/exactmath.hpp"
#include "defexp/upoly.hpp"

#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace defexp {

/// u * sum_i vcoeffs[i] v^i.
struct UVForm {
  std::vector<Rational> vcoeffs;

  bool is_zero() const { return vcoeffs.empty(); }
  Rational coeff(std::size_t i) const { return i < vcoeffs.size() ? vcoeffs[i] : Rational(0); }
  /// Degree in v; -1 when zero.
  long degree() const { return static_cast<long>(vcoeffs.size()) - 1; }

  JPoly to_jpoly() const;

  friend bool operator==(const UVForm&, const UVForm&) = default;
};

/// p = sum even[i] v^i + u * sum odd.vcoeffs[i] v^i.
struct UVDecomposition {
  std::vector<Rational> even;
  UVForm odd;
};

inline JPoly u_poly() { return JPoly{Rational(-1), Rational(2)}; }
inline JPoly v_poly() { return JPoly{Rational(0), Rational(-1), Rational(1)}; }

inline JPoly UVForm::to_jpoly() const {
  JPoly acc;
  const JPoly v = v_poly();
  for (auto it = vcoeffs.rbegin(); it != vcoeffs.rend(); ++it) acc = acc * v + JPoly(*it);
  return acc * u_poly();
}

namespace detail {
inline void trim(std::vector<Rational>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}
}  // namespace detail

/// Peels the leading term: j^{2e} against v^e and j^{2e+1} against u v^e / 2.
/// Exact and unique; terminates after deg(p)+1 steps.
inline UVDecomposition uv_decompose(const JPoly& p) {
  UVDecomposition out;
  JPoly rest = p;
  const JPoly u = u_poly();
  const JPoly v = v_poly();
  while (!rest.is_zero()) {
    const auto d = static_cast<std::size_t>(rest.degree());
    const std::size_t e = d / 2;
    Rational c = rest.leading();
    if (d % 2 == 0) {
      if (out.even.size() <= e) out.even.resize(e + 1);
      out.even[e] += c;
      rest -= pow(v, static_cast<unsigned>(e)) * c;
    } else {
      Rational half = c / 2;
      auto& odd = out.odd.vcoeffs;
      if (odd.size() <= e) odd.resize(e + 1);
      odd[e] += half;
      rest -= u * pow(v, static_cast<unsigned>(e)) * half;
    }
  }
  detail::trim(out.even);
  detail::trim(out.odd.vcoeffs);
  return out;
}

inline JPoly uv_recompose(const UVDecomposition& d) {
  JPoly acc;
  const JPoly v = v_poly();
  for (auto it = d.even.rbegin(); it != d.even.rend(); ++it) acc = acc * v + JPoly(*it);
  return acc + d.odd.to_jpoly();
}

namespace detail {

// sigma_i and Q_k tables, grown on demand under a lock.
class StirlingTables {
public:
  static StirlingTables& instance() {
    static StirlingTables t;
    return t;
  }

  JPoly sigma(unsigned i) {
    std::lock_guard<std::mutex> lock(mu_);
    grow(i);
    return sigma_[i];
  }
  JPoly q(unsigned k) {
    std::lock_guard<std::mutex> lock(mu_);
    grow(k);
    return q_[k];
  }

private:
  StirlingTables() : sigma_{JPoly(1)}, q_{JPoly(1)} {}

  void grow(unsigned n) {
    while (power_sums_.size() < n + 1) power_sums_.push_back(power_sum_poly(static_cast<unsigned>(power_sums_.size() + 1)));
    while (sigma_.size() <= n) {
      // Newton: m sigma_m = sum_{k=1}^{m} (-1)^{k-1} p_k sigma_{m-k}
      const auto m = static_cast<unsigned>(sigma_.size());
      JPoly acc;
      for (unsigned k = 1; k <= m; ++k) {
        JPoly term = power_sums_[k - 1] * sigma_[m - k];
        if (k % 2 == 0) acc -= term;
        else acc += term;
      }
      sigma_.push_back(acc * (Rational(1) / Rational(static_cast<long>(m))));
    }
    while (q_.size() <= n) {
      const auto k = static_cast<unsigned>(q_.size());
      JPoly acc;
      for (unsigned i = 1; i <= k; ++i) acc -= sigma_[i] * q_[k - i];
      q_.push_back(acc);
    }
  }

  std::mutex mu_;
  std::vector<JPoly> power_sums_;
  std::vector<JPoly> sigma_;
  std::vector<JPoly> q_;
};

}  // namespace detail

inline JPoly sigma_poly(unsigned i) { return detail::StirlingTables::instance().sigma(i); }
inline JPoly q_poly(unsigned k) { return detail::StirlingTables::instance().q(k); }

inline void check_block_indices(long N, long m) {
  if (m < 0 || N < 2 * m) throw DomainError("block index requires N >= 2m >= 0");
}

inline JPoly g_coeff(long N, long m) {
  check_block_indices(N, m);
  return gen_binomial(JPoly::j(), static_cast<unsigned>(m)) * q_poly(static_cast<unsigned>(N - 2 * m));
}

inline JPoly h_coeff(long N, long m) {
  check_block_indices(N, m);
  JPoly r = gen_binomial(JPoly{Rational(1), Rational(-1)}, static_cast<unsigned>(m)) *
            sigma_poly(static_cast<unsigned>(N - 2 * m));
  return N % 2 == 0 ? r : -r;
}

/// Delta(N,m) in the u-times-polynomial-in-v form. Throws std::logic_error if
/// a pure-v part survives, which would mean the families above are wrong.
inline UVForm delta(long N, long m) {
  JPoly d = g_coeff(N, m) - h_coeff(N, m);
  UVDecomposition dec = uv_decompose(d);
  if (!dec.even.empty()) throw std::logic_error("Delta(N,m) has a pure-v component");
  return dec.odd;
}

}  // namespace defexp
