#pragma once

// Numerical ground truth: the deformed exponential
//
//   f(x) = sum_{n >= 0} x^n q^{n(n-1)/2} / n!,   0 < q < 1,
//
// evaluated in MPFR with a cancellation-aware accuracy estimate, and its
// negative zeros x_1 > x_2 > ... located to high precision.

#include "defexp/precreal.hpp"
#include "defexp/qseries.hpp"
#include "defexp/symcoeff.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace defexp {

/// The requested working precision cannot separate f(x) from rounding noise.
class InsufficientPrecision : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// No sign change was found inside the admissible bracket.
class BracketFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline void check_q(const Rational& q) {
  if (q <= 0 || q >= 1) throw DomainError("q must lie in (0, 1)");
}

inline double log2_inverse(const Rational& q) { return -std::log2(q.get_d()); }

struct FEvaluation {
  PrecReal value;
  PrecReal max_term;  ///< largest |x^n q^{n(n-1)/2}/n!| seen
  long accuracy_bits = 0;  ///< bits of `value` above cancellation noise; <= 0 means sign unknown
  std::size_t terms = 0;

  bool resolved() const { return accuracy_bits > 0; }
};

/// Sums f(x) at `bits` of working precision. Terms follow
/// t_{n+1} = t_n x q^n / (n+1); once |t_{n+1}/t_n| < 1/2 the tail is bounded
/// by 2|t_{n+1}| and summation stops when that drops below 2^{-bits-1} max|t|.
inline FEvaluation evaluate_f(const PrecReal& x, const PrecReal& q, long bits) {
  const PrecReal xs = x.with_precision(bits);
  const PrecReal qs = q.with_precision(bits);
  PrecReal term(1L, bits), sum(1L, bits), qn(1L, bits), max_term(1L, bits);
  double log2_max = 0.0;
  const double log2_x = xs.log2_abs();
  const double log2_q = qs.log2_abs();
  std::size_t n = 0;
  for (;; ++n) {
    // log2 of the ratio |t_{n+1} / t_n| = |x| q^n / (n+1)
    const double log2_ratio = log2_x + static_cast<double>(n) * log2_q - std::log2(static_cast<double>(n + 1));
    term = term * xs * qn / static_cast<long>(n + 1);
    qn = qn * qs;
    sum += term;
    const double log2_t = term.log2_abs();
    if (log2_t > log2_max) {
      log2_max = log2_t;
      max_term = term.abs();
    }
    if (xs.is_zero()) break;
    if (log2_ratio < -1.0 && log2_t + 1.0 < log2_max - static_cast<double>(bits) - 1.0) break;
  }
  FEvaluation out{sum, max_term, 0, n + 2};
  if (sum.is_zero()) {
    out.accuracy_bits = std::numeric_limits<long>::min() / 2;
  } else {
    const double lost = log2_max - sum.log2_abs() + std::log2(static_cast<double>(out.terms)) + 1.0;
    out.accuracy_bits = std::min<long>(bits, static_cast<long>(std::floor(static_cast<double>(bits) - std::max(0.0, lost))));
  }
  out.value.set_accuracy(out.accuracy_bits);
  return out;
}

/// f(x), throwing InsufficientPrecision when the result drowns in cancellation noise.
inline PrecReal eval_f(const PrecReal& x, const PrecReal& q, long bits) {
  FEvaluation e = evaluate_f(x, q, bits);
  if (!e.resolved())
    throw InsufficientPrecision("f(x) is below cancellation noise at " + std::to_string(bits) + " bits");
  return e.value;
}

inline PrecReal eval_f(const PrecReal& x, const Rational& q, long bits) { return eval_f(x, PrecReal(q, bits), bits); }

/// ceil(k(k-1)/2 log2(1/q) + k log2 k) + 64 guard bits.
inline long required_precision(unsigned k, const Rational& q) {
  if (k == 0) throw DomainError("required_precision needs k >= 1");
  check_q(q);
  const double kk = static_cast<double>(k);
  const double est = kk * (kk - 1.0) / 2.0 * log2_inverse(q) + kk * std::log2(kk);
  return static_cast<long>(std::ceil(est - 1e-9)) + 64;
}

// ---------------------------------------------------------------------------
// Numeric values of C_i(q)
// ---------------------------------------------------------------------------

/// Truncation order making the omitted q-expansion tail negligible at `bits`.
inline std::size_t series_order_for(const Rational& q, long bits) {
  const double per_term = log2_inverse(q);
  const double n = std::ceil((static_cast<double>(bits) + 32.0) / per_term) + 32.0;
  return static_cast<std::size_t>(std::clamp(n, 60.0, 3000.0));
}

namespace detail {

class CSeriesCache {
public:
  static CSeriesCache& instance() {
    static CSeriesCache c;
    return c;
  }
  QSeries get(unsigned i, std::size_t trunc) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find({i, trunc});
      if (it != cache_.end()) return it->second;
    }
    QSeries s = eval_mpoly_series(c_n_reduced(i), trunc);
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(std::make_pair(i, trunc), std::move(s)).first->second;
  }

private:
  std::mutex mu_;
  std::map<std::pair<unsigned, std::size_t>, QSeries> cache_;
};

}  // namespace detail

/// C_i(q) as a real number, via its exact q-expansion.
inline PrecReal c_value(unsigned i, const Rational& q, long bits) {
  check_q(q);
  const QSeries s = detail::CSeriesCache::instance().get(i, series_order_for(q, bits));
  return eval_series_numeric(s, PrecReal(q, bits), bits).value;
}

/// 1 + sum_{i=1}^{n} C_i(q) k^{-1-i}.
inline PrecReal expansion_factor(unsigned k, const Rational& q, unsigned n, long bits) {
  PrecReal acc(1L, bits);
  const PrecReal kk(static_cast<long>(k), bits);
  for (unsigned i = 1; i <= n; ++i) acc += c_value(i, q, bits) / kk.pow(static_cast<long>(i + 1));
  return acc;
}

/// -k q^{1-k}.
inline PrecReal leading_location(unsigned k, const Rational& q, long bits) {
  return -PrecReal(static_cast<long>(k), bits) * PrecReal(q, bits).pow(1L - static_cast<long>(k));
}

// ---------------------------------------------------------------------------
// Zero finding
// ---------------------------------------------------------------------------

struct ZeroResult {
  unsigned k = 0;
  Rational q;
  std::string q_text;
  PrecReal x;
  PrecReal bracket_lo;  ///< more negative endpoint
  PrecReal bracket_hi;
  PrecReal residual;  ///< |f(x)| / max_n |t_n|, scale free
  long precision_bits = 0;
  std::vector<double> newton_log2_steps;  ///< log2(|step| / |x|) per Newton iteration
};

struct ZeroOptions {
  unsigned guess_order = 4;
  long bits = 0;  ///< 0: required_precision(k, q)
  std::string q_text;
};

namespace detail {

inline int sign_at(const PrecReal& x, const PrecReal& q, long bits, bool* resolved = nullptr) {
  FEvaluation e = evaluate_f(x, q, bits);
  if (resolved) *resolved = e.resolved();
  return e.resolved() ? e.value.sign() : 0;
}

inline PrecReal midpoint(const PrecReal& a, const PrecReal& b) { return (a + b) / 2L; }

/// Bisects [lo, hi] (f of opposite signs at the ends) until the relative
/// width drops below 2^{-target_bits} or f is indistinguishable from zero.
inline PrecReal bisect(PrecReal& lo, PrecReal& hi, int sign_lo, const PrecReal& q, long bits, long target_bits) {
  for (int it = 0; it < 4 * bits; ++it) {
    PrecReal mid = midpoint(lo, hi);
    const PrecReal width = (hi - lo).abs();
    if (width.log2_abs() - mid.log2_abs() < -static_cast<double>(target_bits)) return mid;
    bool ok = false;
    const int s = sign_at(mid, q, bits, &ok);
    if (!ok) return mid;
    if (s == sign_lo) lo = mid;
    else hi = mid;
  }
  return midpoint(lo, hi);
}

/// Relative residual and the accuracy warranted for a located zero.
/// `located` caps the accuracy at the relative width of the final bracket.
inline void finish(ZeroResult& z, const PrecReal& q, long bits, long located = std::numeric_limits<long>::max()) {
  FEvaluation at = evaluate_f(z.x, q, bits);
  z.residual = at.value.abs() / at.max_term;
  z.residual.set_accuracy(8);
  const PrecReal slope = evaluate_f(z.x * q, q, bits).value.abs();
  // noise in f ~ max|t| 2^{-bits}; relative location error ~ noise / (|f'| |x|)
  const double lost = at.max_term.log2_abs() - slope.log2_abs() - z.x.log2_abs();
  const long acc = static_cast<long>(std::floor(static_cast<double>(bits) - std::max(0.0, lost) - 4.0));
  z.x.set_accuracy(std::max(1L, std::min(acc, located)));
}

}  // namespace detail

/// The k-th zero, starting from the asymptotic guess
/// -k q^{1-k} (1 + sum_{i <= guess_order} C_i(q) k^{-1-i}).
inline ZeroResult find_zero(unsigned k, const Rational& q, const ZeroOptions& opt = {}) {
  if (k == 0) throw DomainError("zero index k must be >= 1");
  check_q(q);
  const long bits = opt.bits > 0 ? opt.bits : required_precision(k, q);
  const PrecReal qr(q, bits);
  const PrecReal guess = leading_location(k, q, bits) * expansion_factor(k, q, opt.guess_order, bits);

  ZeroResult z;
  z.k = k;
  z.q = q;
  z.q_text = opt.q_text.empty() ? to_string(q) : opt.q_text;
  z.precision_bits = bits;

  const double kk = static_cast<double>(k);
  const double delta_max = 1.0 / (4.0 * kk);
  double delta = std::pow(kk, -static_cast<double>(opt.guess_order) - 2.0);
  bool bracketed = false;
  PrecReal lo(bits), hi(bits);
  int sign_lo = 0;
  while (true) {
    delta = std::min(delta, delta_max);
    const PrecReal d(delta, bits);
    lo = guess * (d + 1L);
    hi = guess * (PrecReal(1L, bits) - d);
    bool ok_lo = false, ok_hi = false;
    sign_lo = detail::sign_at(lo, qr, bits, &ok_lo);
    const int sign_hi = detail::sign_at(hi, qr, bits, &ok_hi);
    if (!ok_lo || !ok_hi) throw InsufficientPrecision("cannot resolve the sign of f at the bracket endpoints");
    if (sign_lo != sign_hi) {
      bracketed = true;
      break;
    }
    if (delta >= delta_max) break;
    delta *= 2.0;
  }
  if (!bracketed)
    throw BracketFailure("no sign change within relative radius 1/(4k) of the asymptotic guess for k=" +
                         std::to_string(k));
  z.bracket_lo = lo;
  z.bracket_hi = hi;

  PrecReal x = detail::bisect(lo, hi, sign_lo, qr, bits, std::min<long>(60, bits / 2));

  // Newton with f'(x) = f(qx).
  const double stop = -static_cast<double>(bits) + 8.0;
  double prev = 0.0;
  for (int it = 0; it < 64; ++it) {
    FEvaluation fx = evaluate_f(x, qr, bits);
    if (!fx.resolved()) break;
    const PrecReal slope = evaluate_f(x * qr, qr, bits).value;
    const PrecReal step = fx.value / slope;
    const PrecReal next = x - step;
    if (next < z.bracket_lo || next > z.bracket_hi) break;
    const double rel = step.log2_abs() - x.log2_abs();
    x = next;
    z.newton_log2_steps.push_back(rel);
    if (rel < stop) break;
    if (it > 1 && rel > prev - 1.0) break;  // no longer converging
    prev = rel;
  }
  z.x = x;
  detail::finish(z, qr, bits);
  return z;
}

/// Independent oracle: scans f on a geometric grid from -1/2 toward x_min and
/// bisects every sign change. Slow; meant for small k.
inline std::vector<ZeroResult> scan_zeros(const Rational& q, const Rational& x_min, unsigned count, long bits = 0,
                                          const std::string& q_text = {}) {
  check_q(q);
  if (x_min >= 0) throw DomainError("scan_zeros needs x_min < 0");
  if (bits <= 0) {
    unsigned kmax = 1;
    const double xm = std::fabs(x_min.get_d());
    while (static_cast<double>(kmax) * std::pow(q.get_d(), 1.0 - kmax) < xm && kmax < 400) ++kmax;
    bits = required_precision(kmax + 1, q);
  }
  const PrecReal qr(q, bits);
  const PrecReal limit(x_min, bits);

  for (unsigned points_per_decade = 64; points_per_decade <= 4096; points_per_decade *= 4) {
    const PrecReal ratio(std::pow(10.0, 1.0 / points_per_decade), bits);
    std::vector<std::pair<PrecReal, PrecReal>> brackets;
    PrecReal prev_x(Rational(-1, 2), bits);
    int prev_sign = detail::sign_at(prev_x, qr, bits);
    for (PrecReal x = prev_x * ratio; !(x < limit) && brackets.size() < count; x = x * ratio) {
      bool ok = false;
      const int s = detail::sign_at(x, qr, bits, &ok);
      if (!ok) continue;
      if (prev_sign != 0 && s != prev_sign) brackets.emplace_back(x, prev_x);
      prev_x = x;
      prev_sign = s;
    }
    if (brackets.size() < count) {
      if (points_per_decade * 4 <= 4096) continue;
      throw BracketFailure("scan_zeros found only " + std::to_string(brackets.size()) + " zeros above x_min");
    }

    // Consecutive zeros are roughly a factor (1/q)(1 + 1/k) apart; a much
    // larger gap means a pair of sign changes slipped between grid points.
    bool suspicious = false;
    for (std::size_t i = 1; i < brackets.size(); ++i) {
      const double r = (brackets[i].second / brackets[i - 1].first).to_double();
      const double expected = (1.0 / q.get_d()) * (1.0 + 1.0 / static_cast<double>(i));
      if (r > std::pow(expected, 1.5) + 0.5) suspicious = true;
    }
    if (suspicious && points_per_decade * 4 <= 4096) continue;

    std::vector<ZeroResult> out;
    for (std::size_t i = 0; i < brackets.size(); ++i) {
      auto [lo, hi] = brackets[i];
      ZeroResult z;
      z.k = static_cast<unsigned>(i + 1);
      z.q = q;
      z.q_text = q_text.empty() ? to_string(q) : q_text;
      z.precision_bits = bits;
      z.bracket_lo = lo;
      z.bracket_hi = hi;
      const int s_lo = detail::sign_at(lo, qr, bits);
      z.x = detail::bisect(lo, hi, s_lo, qr, bits, bits - 16);
      const double width = (hi - lo).abs().log2_abs() - z.x.log2_abs();
      detail::finish(z, qr, bits, static_cast<long>(std::floor(-width)));
      out.push_back(std::move(z));
    }
    return out;
  }
  throw BracketFailure("scan_zeros could not isolate the requested zeros");
}

/// find_zero, falling back to the scan oracle when the asymptotic guess is
/// too poor to bracket (small k).
inline ZeroResult locate_zero(unsigned k, const Rational& q, const ZeroOptions& opt = {}) {
  try {
    return find_zero(k, q, opt);
  } catch (const BracketFailure&) {
    const Rational reach = Rational(-4) * Rational(static_cast<long>(k + 1)) * pow(Rational(1) / q, k);
    auto all = scan_zeros(q, reach, k, opt.bits > 0 ? opt.bits : 0, opt.q_text);
    return all.at(k - 1);
  }
}

// ---------------------------------------------------------------------------
// The paired differences v_j of the alternating series at the trial point
// ---------------------------------------------------------------------------

/// v_j = u_{2k-j-1} - u_j for 0 <= j <= k-1, with
/// u_n = (k + a/k)^n / n! * q^{-n(2k-n-1)/2}, all exact.
inline std::vector<Rational> vj_sequence(unsigned k, const Rational& q, const Rational& a) {
  if (k == 0) throw DomainError("vj_sequence needs k >= 1");
  check_q(q);
  const Rational base = Rational(static_cast<long>(k)) + a / Rational(static_cast<long>(k));
  const Rational inv_q = Rational(1) / q;
  auto u = [&](unsigned n) {
    const long e = static_cast<long>(n) * (2L * k - n - 1) / 2;  // exponent of 1/q
    Rational r = pow(base, static_cast<unsigned long>(n)) / Rational(factorial(n));
    r *= e >= 0 ? pow(inv_q, static_cast<unsigned long>(e)) : pow(q, static_cast<unsigned long>(-e));
    return r;
  };
  std::vector<Rational> v;
  v.reserve(k);
  for (unsigned j = 0; j < k; ++j) v.push_back(u(2 * k - j - 1) - u(j));
  return v;
}

/// Smallest N >= 2 with v_j < v_{j+1} for all 0 <= j <= k - N.
inline std::optional<unsigned> vj_monotone_threshold(const std::vector<Rational>& v) {
  const auto k = static_cast<unsigned>(v.size());
  for (unsigned N = 2; N <= k; ++N) {
    bool ok = true;
    for (unsigned j = 0; j + N <= k && ok; ++j) ok = v[j] < v[j + 1];
    if (ok) return N;
  }
  return std::nullopt;
}

}  // namespace defexp
