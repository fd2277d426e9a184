#pragma once

// Reference formulas compiled into the binary: the low-order coefficients,
// the small Delta blocks, the first S-values and the linear terms in terms
// of Bernoulli numbers. `run_fixtures` recomputes each and compares exactly.

#include "defexp/jpoly.hpp"
#include "defexp/symcoeff.hpp"

#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace defexp {

/// Parses sums of terms like "-13/10*A0^2 + 3/5*A1" or "2*E2*E4". Symbols are
/// A<i>, C<i> (i >= 1), E2/E4/E6 and a<i>; one family per expression.
inline MPoly parse_mpoly(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&]() -> unsigned long {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw DomainError("expected a number in '" + std::string(text) + "'");
    return std::stoul(std::string(text.substr(start, pos - start)));
  };

  std::optional<SymbolFamily> family;
  MPoly out;
  skip();
  if (pos == text.size()) return out;
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      throw DomainError("expected '+' or '-' in '" + std::string(text) + "'");
    }
    first = false;

    Rational coeff = sign;
    Exponents exps;
    bool need_factor = true;
    while (need_factor) {
      skip();
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        Rational c(Integer(std::to_string(number())));
        if (pos < text.size() && text[pos] == '/') {
          ++pos;
          c /= Rational(Integer(std::to_string(number())));
        }
        coeff *= c;
      } else if (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) {
        const char s = text[pos++];
        const unsigned long idx = number();
        SymbolFamily f;
        std::size_t slot = 0;
        switch (s) {
          case 'A': f = SymbolFamily::A, slot = idx; break;
          case 'a': f = SymbolFamily::LowerA, slot = idx; break;
          case 'C':
            if (idx == 0) throw DomainError("C-symbols start at C1");
            f = SymbolFamily::C, slot = idx - 1;
            break;
          case 'E':
            if (idx != 2 && idx != 4 && idx != 6) throw DomainError("E-symbols are E2, E4, E6");
            f = SymbolFamily::E, slot = idx / 2 - 1;
            break;
          default: throw DomainError(std::string("unknown symbol '") + s + "'");
        }
        if (family && *family != f) throw DomainError("mixed symbol families in '" + std::string(text) + "'");
        family = f;
        unsigned long e = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          e = number();
        }
        if (exps.size() <= slot) exps.resize(slot + 1, 0);
        exps[slot] += static_cast<unsigned>(e);
      } else {
        throw DomainError("malformed polynomial '" + std::string(text) + "'");
      }
      skip();
      need_factor = pos < text.size() && text[pos] == '*';
      if (need_factor) ++pos;
    }
    out = out + MPoly::monomial(family.value_or(SymbolFamily::A), exps, coeff);
  }
  if (family && out.is_constant()) return MPoly::constant(*family, out.constant_term());
  return out;
}

struct FixtureResult {
  std::string name;
  bool pass = false;
};

namespace fixtures {

// Coefficients as printed, in A0, A1, ... (raw) or A0, A1, A2 (reduced).
inline constexpr std::string_view c1 = "A0";
inline constexpr std::string_view c2 = "-A1";
inline constexpr std::string_view c3 = "-1/10*A0 + 3/5*A1 + 1/2*A2 - 13/10*A0^2";
inline constexpr std::string_view c4_raw = "1/10*A1 - 14/15*A2 - 1/6*A3 + 23/5*A0*A1";
inline constexpr std::string_view c4_reduced = "1/10*A1 - 11/10*A2 + 23/5*A0*A1 - 6*A1^2 + 4*A0*A2";
inline constexpr std::string_view c5_reduced =
    "1/21*A0 - 2/7*A1 + 26/21*A2 + 53/70*A0^2 + 22*A1^2 - 36*A0*A1^2"
    " - 159/35*A0*A1 - 43/2*A0*A2 + 2*A1*A2 + 737/210*A0^3 + 24*A0^2*A2";
inline constexpr std::string_view c6_reduced =
    "-1/21*A1 - 20/21*A2 - 74/35*A0*A1 - 1401/35*A1^2 - 2/5*A2^2 + 705/14*A0*A2"
    " - 101/10*A1*A2 + 1662/5*A0*A1^2 - 321/14*A0^2*A1 - 36/5*A1^3"
    " - 1132/5*A0^2*A2 - 864/5*A0^2*A1^2 + 72/5*A0*A1*A2 + 576/5*A0^3*A2";

struct DeltaExample {
  long N, m;
  Rational scale;
  std::vector<std::vector<long>> factors;  ///< each factor's coefficients in j, lowest degree first
};

/// Factored closed forms of the small Delta blocks.
inline std::vector<DeltaExample> delta_examples() {
  const std::vector<long> j = {0, 1}, jm1 = {-1, 1}, u = {-1, 2};
  return {
      {0, 0, 0, {}},
      {1, 0, 0, {}},
      {2, 0, Rational(1, 6), {j, jm1, u}},
      {2, 1, 1, {u}},
      {3, 0, Rational(-1, 12), {jm1, jm1, j, j, u}},
      {3, 1, Rational(-1, 2), {jm1, j, u}},
      {4, 0, Rational(1, 240), {jm1, j, u, {-4, -12, 17, -10, 5}}},
      {4, 1, Rational(1, 24), {jm1, j, u, {2, -3, 3}}},
      {4, 2, 0, {}},
      {5, 0, Rational(-1, 1440), {jm1, jm1, j, j, u, {-12, -56, 61, -10, 5}}},
      {5, 1, Rational(-1, 48), {jm1, jm1, j, j, u, {6, -1, 1}}},
      {5, 2, 0, {}},
  };
}

inline JPoly expand(const DeltaExample& d) {
  JPoly p(d.scale);
  for (const auto& f : d.factors) {
    std::vector<Rational> c(f.begin(), f.end());
    p = p * JPoly(c);
  }
  return p;
}

struct SValue {
  unsigned i, n;
  std::string_view value;  ///< in C-symbols
};

inline std::vector<SValue> s_values() {
  return {{0, 1, "0"}, {1, 1, "1/6"}, {0, 2, "0"}, {1, 2, "-1/2*C1"}, {2, 2, "-1/12"}};
}

}  // namespace fixtures

/// Expected (A0, A1, A2) coefficients of reduced C_{2n-1} and C_{2n}.
inline std::array<std::array<Rational, 3>, 2> linear_terms_expected(unsigned n) {
  const Rational b = bernoulli(2 * n) / Rational(static_cast<long>(n));
  return {{{6 * b, -36 * b, 1 + 30 * b}, {Rational(0), -6 * b, 6 * b - 1}}};
}

inline std::vector<FixtureResult> run_fixtures() {
  std::vector<FixtureResult> out;
  auto check = [&](std::string name, bool ok) { out.push_back({std::move(name), ok}); };

  check("C1 raw", c_n(1) == parse_mpoly(fixtures::c1));
  check("C2 raw", c_n(2) == parse_mpoly(fixtures::c2));
  check("C3 raw", c_n(3) == parse_mpoly(fixtures::c3));
  check("C4 raw", c_n(4) == parse_mpoly(fixtures::c4_raw));
  check("C4 reduced", c_n_reduced(4) == parse_mpoly(fixtures::c4_reduced));
  check("C5 reduced", c_n_reduced(5) == parse_mpoly(fixtures::c5_reduced));
  check("C6 reduced", c_n_reduced(6) == parse_mpoly(fixtures::c6_reduced));

  for (const auto& d : fixtures::delta_examples())
    check("Delta(" + std::to_string(d.N) + "," + std::to_string(d.m) + ")",
          delta(d.N, d.m).to_jpoly() == fixtures::expand(d));

  for (const auto& s : fixtures::s_values()) {
    const MPoly expected = parse_mpoly(s.value);
    check("S" + std::to_string(s.i) + "(" + std::to_string(s.n) + ")", s_poly(s.i, s.n) == expected);
  }

  for (unsigned n = 2; n <= 6; ++n) {
    const auto want = linear_terms_expected(n);
    check("linear terms C" + std::to_string(2 * n - 1), linear_part(c_n_reduced(2 * n - 1)) == want[0]);
    check("linear terms C" + std::to_string(2 * n), linear_part(c_n_reduced(2 * n)) == want[1]);
  }
  return out;
}

}  // namespace defexp
