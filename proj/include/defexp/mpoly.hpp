#pragma once

// Sparse multivariate polynomials over the rationals in one ordered symbol
// family. Terms are kept in graded-lex order so that every traversal (and
// hence every serialization) is deterministic.

#include "defexp/rational.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace defexp {

enum class SymbolFamily {
  A,       ///< A_0, A_1, ...           (index i -> A_i)
  C,       ///< C_1, C_2, ...           (index i -> C_{i+1})
  E,       ///< E_2, E_4, E_6           (index 0, 1, 2)
  LowerA,  ///< a_0, a_1, ...           (index i -> a_i)
  Kernel,  ///< j, a_0, a_1, ...        (index 0 -> j, i -> a_{i-1})
};

inline std::string symbol_name(SymbolFamily f, std::size_t index) {
  switch (f) {
    case SymbolFamily::A: return "A" + std::to_string(index);
    case SymbolFamily::C: return "C" + std::to_string(index + 1);
    case SymbolFamily::E: {
      static const std::array<const char*, 3> names{"E2", "E4", "E6"};
      if (index >= names.size()) throw DomainError("E-family has only E2, E4, E6");
      return names[index];
    }
    case SymbolFamily::LowerA: return "a" + std::to_string(index);
    case SymbolFamily::Kernel: return index == 0 ? std::string("j") : "a" + std::to_string(index - 1);
  }
  return "?";
}

inline const char* family_name(SymbolFamily f) {
  switch (f) {
    case SymbolFamily::A: return "A";
    case SymbolFamily::C: return "C";
    case SymbolFamily::E: return "E";
    case SymbolFamily::LowerA: return "a";
    case SymbolFamily::Kernel: return "kernel";
  }
  return "?";
}

using Exponents = std::vector<unsigned>;

inline unsigned total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

/// Graded order: lower total degree first; within a degree, larger exponents
/// on earlier symbols first (A0^2, A0 A1, A0 A2, A1^2, ...).
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned x = i < a.size() ? a[i] : 0u;
      const unsigned y = i < b.size() ? b[i] : 0u;
      if (x != y) return x > y;
    }
    return false;
  }
};

class MPoly {
public:
  using Terms = std::map<Exponents, Rational, GrlexLess>;

  explicit MPoly(SymbolFamily family = SymbolFamily::A) : family_(family) {}

  static MPoly constant(SymbolFamily f, const Rational& c) {
    MPoly p(f);
    p.add_term({}, c);
    return p;
  }
  static MPoly variable(SymbolFamily f, std::size_t index, const Rational& c = 1) {
    Exponents e(index + 1, 0);
    e[index] = 1;
    MPoly p(f);
    p.add_term(std::move(e), c);
    return p;
  }
  static MPoly monomial(SymbolFamily f, Exponents e, const Rational& c = 1) {
    MPoly p(f);
    p.add_term(std::move(e), c);
    return p;
  }

  SymbolFamily family() const { return family_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

  Rational coeff(Exponents e) const {
    normalize(e);
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational constant_term() const { return coeff({}); }
  /// Coefficient of the single symbol `index` to the first power.
  Rational linear_coeff(std::size_t index) const {
    Exponents e(index + 1, 0);
    e[index] = 1;
    return coeff(std::move(e));
  }

  /// Number of symbols in use (highest index + 1).
  std::size_t num_symbols() const {
    std::size_t n = 0;
    for (const auto& [e, c] : terms_) n = std::max(n, e.size());
    return n;
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  /// Whether symbol `index` occurs in any term.
  bool uses(std::size_t index) const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return index < t.first.size() && t.first[index] != 0; });
  }

  void add_term(Exponents e, const Rational& c) {
    if (c == 0) return;
    normalize(e);
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MPoly relabeled(SymbolFamily f) const {
    MPoly r = *this;
    r.family_ = f;
    return r;
  }

  MPoly& operator+=(const MPoly& o) {
    adopt(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    adopt(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  MPoly& operator*=(const Rational& c) {
    if (c == 0) terms_.clear();
    else
      for (auto& [e, x] : terms_) x *= c;
    return *this;
  }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(MPoly a) { return a *= Rational(-1); }
  friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
  friend MPoly operator*(const Rational& c, MPoly a) { return a *= c; }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    if (!a.is_constant() && !b.is_constant() && a.family_ != b.family_)
      throw DomainError(std::string("mixing symbol families ") + family_name(a.family_) + " and " +
                        family_name(b.family_));
    MPoly out(a.is_constant() ? b.family_ : a.family_);
    if (a.is_zero() || b.is_zero()) return out;
    Exponents e;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        e.assign(std::max(ea.size(), eb.size()), 0);
        for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
        for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }
  friend MPoly& operator*=(MPoly& a, const MPoly& b) { return a = a * b; }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (a.is_constant() && b.is_constant()) return a.terms_ == b.terms_;
    return a.family_ == b.family_ && a.terms_ == b.terms_;
  }

  MPoly derivative(std::size_t index) const {
    MPoly out(family_);
    for (const auto& [e, c] : terms_) {
      if (index >= e.size() || e[index] == 0) continue;
      Exponents d = e;
      const unsigned k = d[index]--;
      out.add_term(std::move(d), c * k);
    }
    return out;
  }

  /// Substitutes every symbol by a value in some ring R. `embed` maps a
  /// rational coefficient into R; `value_of(i)` gives the value of symbol i.
  template <class R, class ValueOf, class Embed>
  R evaluate(ValueOf&& value_of, Embed&& embed) const {
    std::vector<std::vector<R>> powers;  // powers[i][k] = value_of(i)^(k+1)
    auto power = [&](std::size_t i, unsigned k) -> const R& {
      if (powers.size() <= i) powers.resize(i + 1);
      auto& row = powers[i];
      if (row.empty()) row.push_back(value_of(i));
      while (row.size() < k) row.push_back(row.back() * row.front());
      return row[k - 1];
    };
    R acc = embed(Rational(0));
    for (const auto& [e, c] : terms_) {
      R term = embed(c);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) term = term * power(i, e[i]);
      acc = acc + term;
    }
    return acc;
  }

  /// Polynomial substitution: symbol i -> images[i], result in the images' family.
  MPoly substitute(const std::vector<MPoly>& images, SymbolFamily target) const {
    if (num_symbols() > images.size()) throw DomainError("substitute: too few images");
    return evaluate<MPoly>([&](std::size_t i) { return images[i]; },
                           [&](const Rational& c) { return MPoly::constant(target, c); });
  }

private:
  static void normalize(Exponents& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
  }
  void adopt(const MPoly& o) {
    if (o.family_ == family_) return;
    if (terms_.empty() || (is_constant() && !o.is_zero())) {
      family_ = o.family_;
      return;
    }
    if (o.is_constant()) return;
    throw DomainError(std::string("mixing symbol families ") + family_name(family_) + " and " +
                      family_name(o.family_));
  }

  SymbolFamily family_;
  Terms terms_;
};

}  // namespace defexp
