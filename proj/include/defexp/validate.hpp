#pragma once

// Experiment harness connecting the symbolic coefficients C_n(q) to the
// numerically located zeros: scaled residual profiles, the ratio law for
// consecutive zeros and the F_j repackaging of the q-expansions.

#include "defexp/qseries.hpp"
#include "defexp/symcoeff.hpp"
#include "defexp/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <span>
#include <thread>
#include <vector>

namespace defexp {

namespace detail {

inline Rational power(const Rational& b, long e) {
  return e >= 0 ? pow(b, static_cast<unsigned long>(e)) : Rational(1) / pow(b, static_cast<unsigned long>(-e));
}
inline PrecReal power(const PrecReal& b, long e) { return b.pow(e); }

inline Rational scalar(long v, const Rational&) { return Rational(v); }
inline PrecReal scalar(long v, const PrecReal& like) { return PrecReal(v, like.precision_bits()); }

/// Runs fn(i) for i in [0, n), concurrently when more than one core is available.
template <class Fn>
auto parallel_map(std::size_t n, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  const unsigned cores = std::max(1u, std::thread::hardware_concurrency());
  std::vector<R> out;
  out.reserve(n);
  if (cores == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
    return out;
  }
  std::vector<std::future<R>> pending;
  for (std::size_t i = 0; i < n; ++i) pending.push_back(std::async(std::launch::async, fn, i));
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

}  // namespace detail

/// r_n(k) = (-x/(k q^{1-k}) - 1 - sum_{i=1}^{n} C_i k^{-1-i}) k^{n+2}, with
/// `c` holding C_1..C_n.
template <class T>
T scaled_residual(const T& x, unsigned k, const T& q, std::span<const T> c) {
  const T kk = detail::scalar(static_cast<long>(k), q);
  T r = -x / (kk * detail::power(q, 1L - static_cast<long>(k))) - detail::scalar(1, q);
  for (std::size_t i = 1; i <= c.size(); ++i) r = r - c[i - 1] / detail::power(kk, static_cast<long>(i + 1));
  return r * detail::power(kk, static_cast<long>(c.size() + 2));
}

/// q x_{k+1} / x_k - 1 - 1/k.
template <class T>
T ratio_deviation(const T& x_k, const T& x_next, unsigned k, const T& q) {
  const T kk = detail::scalar(static_cast<long>(k), q);
  const T one = detail::scalar(1, q);
  return q * x_next / x_k - one - one / kk;
}

// ---------------------------------------------------------------------------
// Residual profiles
// ---------------------------------------------------------------------------

struct ResidualRow {
  unsigned k = 0;
  PrecReal x;
  PrecReal residual;
};

struct ResidualProfile {
  Rational q;
  std::string q_text;
  unsigned n = 0;
  std::vector<ResidualRow> rows;  ///< sorted by k
  PrecReal target;                ///< C_{n+1}(q)
};

struct ProfileOptions {
  long extra_bits = 0;
  unsigned guess_order = 4;
  std::string q_text;
};

inline ResidualProfile residual_profile(const Rational& q, std::vector<unsigned> k_list, unsigned n,
                                        const ProfileOptions& opt = {}) {
  check_q(q);
  if (k_list.empty()) throw DomainError("residual_profile needs at least one k");
  std::sort(k_list.begin(), k_list.end());
  k_list.erase(std::unique(k_list.begin(), k_list.end()), k_list.end());
  if (k_list.front() == 0) throw DomainError("zero index k must be >= 1");

  ResidualProfile prof;
  prof.q = q;
  prof.q_text = opt.q_text.empty() ? to_string(q) : opt.q_text;
  prof.n = n;
  const long target_bits = required_precision(k_list.back(), q) + opt.extra_bits;
  prof.target = c_value(n + 1, q, target_bits);

  // Warm the coefficient caches before fanning out.
  for (unsigned i = 1; i <= n + 1; ++i) c_n_reduced(i);

  prof.rows = detail::parallel_map(k_list.size(), [&](std::size_t idx) {
    const unsigned k = k_list[idx];
    ZeroOptions zo;
    zo.guess_order = opt.guess_order;
    zo.bits = required_precision(k, q) + opt.extra_bits;
    zo.q_text = prof.q_text;
    ZeroResult z = locate_zero(k, q, zo);
    const long bits = z.precision_bits;
    std::vector<PrecReal> c;
    for (unsigned i = 1; i <= n; ++i) c.push_back(c_value(i, q, bits));
    PrecReal r = scaled_residual<PrecReal>(z.x, k, PrecReal(q, bits), c);
    // the bracketed quantity is a difference from 1 scaled by k^{n+2}
    const double lost = static_cast<double>(n + 2) * std::log2(static_cast<double>(k)) - r.log2_abs();
    r.set_accuracy(static_cast<long>(std::floor(static_cast<double>(z.x.accuracy_bits()) - std::max(0.0, lost))));
    return ResidualRow{k, z.x, r};
  });
  return prof;
}

struct TrendReport {
  bool top_decade_shrinking = false;  ///< |r - target| strictly decreasing over k >= k_max - 10
  bool endpoints_shrinking = false;   ///< |r(k_max) - target| < |r(k_min) - target|
  double final_relative_gap = 0.0;
  bool converging(double tolerance = 0.15) const { return top_decade_shrinking && final_relative_gap < tolerance; }
};

inline TrendReport convergence_trend(const ResidualProfile& p) {
  TrendReport t;
  if (p.rows.empty()) return t;
  auto gap = [&](const ResidualRow& r) { return (r.residual - p.target).abs().to_double(); };
  const unsigned k_max = p.rows.back().k;
  t.top_decade_shrinking = true;
  double prev = INFINITY;
  for (const auto& row : p.rows) {
    if (row.k + 10 < k_max) continue;
    const double g = gap(row);
    if (!(g < prev)) t.top_decade_shrinking = false;
    prev = g;
  }
  t.endpoints_shrinking = gap(p.rows.back()) < gap(p.rows.front());
  t.final_relative_gap = gap(p.rows.back()) / std::fabs(p.target.to_double());
  return t;
}

// ---------------------------------------------------------------------------
// Ratio of consecutive zeros
// ---------------------------------------------------------------------------

struct RatioRow {
  unsigned k = 0;
  PrecReal deviation;  ///< q x_{k+1}/x_k - 1 - 1/k
  PrecReal scaled;     ///< deviation k^2
};

struct RatioTable {
  Rational q;
  std::string q_text;
  std::vector<RatioRow> rows;
};

inline RatioTable ratio_check(const Rational& q, unsigned k_min, unsigned k_max, const ZeroOptions& base = {}) {
  check_q(q);
  if (k_min == 0 || k_max < k_min) throw DomainError("ratio_check needs 1 <= k_min <= k_max");
  RatioTable t;
  t.q = q;
  t.q_text = base.q_text.empty() ? to_string(q) : base.q_text;
  for (unsigned i = 1; i <= base.guess_order; ++i) c_n_reduced(i);
  const std::size_t count = k_max - k_min + 2;
  std::vector<ZeroResult> zs = detail::parallel_map(count, [&](std::size_t idx) {
    ZeroOptions zo = base;
    const unsigned k = k_min + static_cast<unsigned>(idx);
    return locate_zero(k, q, zo);
  });
  for (unsigned k = k_min; k <= k_max; ++k) {
    const ZeroResult& a = zs[k - k_min];
    const ZeroResult& b = zs[k - k_min + 1];
    const long bits = std::min(a.precision_bits, b.precision_bits);
    PrecReal d = ratio_deviation<PrecReal>(a.x, b.x, k, PrecReal(q, bits));
    const long acc = std::min(a.x.accuracy_bits(), b.x.accuracy_bits()) + static_cast<long>(std::floor(d.log2_abs()));
    d.set_accuracy(std::max(1L, acc));
    PrecReal s = d * static_cast<long>(k) * static_cast<long>(k);
    s.set_accuracy(d.accuracy_bits());
    t.rows.push_back({k, d, s});
  }
  return t;
}

/// Bounded without growth: the largest |deviation k^2| over the upper half of
/// the range does not exceed the largest over the lower half.
inline bool ratio_growth_free(const RatioTable& t) {
  if (t.rows.size() < 2) return true;
  const std::size_t half = t.rows.size() / 2;
  double lower = 0.0, upper = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double v = std::fabs(t.rows[i].scaled.to_double());
    if (!std::isfinite(v)) return false;
    (i < half ? lower : upper) = std::max(i < half ? lower : upper, v);
  }
  return upper <= lower;
}

// ---------------------------------------------------------------------------
// q-expansion coefficients C_{ij} and the F_j repackaging
// ---------------------------------------------------------------------------

struct FjNegative {
  unsigned j = 0;
  unsigned k = 0;
  Rational value;
};

struct FjTable {
  unsigned i_max = 0;
  unsigned j_max = 0;
  /// c[i][j] = coefficient of q^j in C_i(q); row 0 and column 0 unused (zero).
  std::vector<std::vector<Rational>> c;
  /// F_j(1/k) = sum_{i <= i_max} C_{ij} k^{-i-1}, indexed [j][k], k = 1..20.
  std::vector<std::vector<Rational>> f_values;
  std::vector<FjNegative> negatives;

  static constexpr unsigned k_points = 20;
};

/// F_j truncated at i_max, evaluated at x.
inline Rational f_j_truncated(const FjTable& t, unsigned j, const Rational& x) {
  Rational acc = 0;
  Rational xp = x;  // x^{i+1}
  for (unsigned i = 1; i <= t.i_max; ++i) {
    xp *= x;
    acc += t.c[i][j] * xp;
  }
  return acc;
}

inline FjTable fj_extract(unsigned i_max, unsigned j_max) {
  if (i_max == 0 || j_max == 0) throw DomainError("fj_extract needs i_max, j_max >= 1");
  FjTable t;
  t.i_max = i_max;
  t.j_max = j_max;
  t.c.assign(i_max + 1, std::vector<Rational>(j_max + 1));
  for (unsigned i = 1; i <= i_max; ++i) {
    const QSeries s = eval_mpoly_series(c_n_reduced(i), j_max);
    for (unsigned j = 0; j <= j_max; ++j) t.c[i][j] = s[j];
  }
  t.f_values.assign(j_max + 1, std::vector<Rational>(FjTable::k_points + 1));
  for (unsigned j = 1; j <= j_max; ++j)
    for (unsigned k = 1; k <= FjTable::k_points; ++k) {
      Rational v = f_j_truncated(t, j, Rational(1, k));
      if (v < 0) t.negatives.push_back({j, k, v});
      t.f_values[j][k] = std::move(v);
    }
  return t;
}

// ---------------------------------------------------------------------------
// The expansion as a polynomial in 1/k
// ---------------------------------------------------------------------------

/// 1 + sum_{i=1}^{n} C_i y^{i+1} with y = 1/k; entry p is the coefficient of y^p.
inline std::vector<MPoly> inverse_k_expansion(unsigned n) {
  std::vector<MPoly> e(n + 2, MPoly::constant(SymbolFamily::A, 0));
  e[0] = MPoly::constant(SymbolFamily::A, 1);
  for (unsigned i = 1; i <= n; ++i) e[i + 1] = c_n_reduced(i);
  return e;
}

}  // namespace defexp
