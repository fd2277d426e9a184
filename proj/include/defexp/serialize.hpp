#pragma once

// JSON and CSV renderings. Key order is fixed and term order is the
// polynomial's canonical order, so equal inputs give byte-identical output.

#include "defexp/jpoly.hpp"
#include "defexp/mpoly.hpp"
#include "defexp/qseries.hpp"
#include "defexp/validate.hpp"
#include "defexp/zeros.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace defexp {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return to_string(r); }

inline Json to_json(const JPoly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_string(c));
  return a;
}

inline Json to_json(const UVForm& f) {
  Json a = Json::array();
  for (const auto& c : f.vcoeffs) a.push_back(to_string(c));
  return Json{{"u_times", a}};
}

/// `symbols` pads the exponent vectors; 0 means just enough for p.
inline Json to_json(const MPoly& p, std::size_t symbols = 0) {
  symbols = std::max(symbols, p.num_symbols());
  Json names = Json::array();
  for (std::size_t i = 0; i < symbols; ++i) names.push_back(symbol_name(p.family(), i));
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json exps = Json::array();
    for (std::size_t i = 0; i < symbols; ++i) exps.push_back(i < e.size() ? e[i] : 0u);
    terms.push_back(Json{{"exps", exps}, {"coeff", to_string(c)}});
  }
  return Json{{"symbols", names}, {"terms", terms}};
}

inline Json to_json(const QSeries& s) {
  Json a = Json::array();
  for (const auto& c : s.coeffs()) a.push_back(to_string(c));
  return Json{{"trunc", s.trunc()}, {"coeffs", a}};
}

/// Decimal string limited to the digits the value's accuracy metadata warrants.
inline Json to_json(const PrecReal& x) { return x.to_decimal(); }

inline Json to_json(const ZeroResult& z) {
  return Json{{"k", z.k},
              {"q", z.q_text},
              {"x", z.x.to_decimal()},
              {"bracket", Json::array({z.bracket_lo.to_decimal_digits(z.x.warranted_digits()),
                                       z.bracket_hi.to_decimal_digits(z.x.warranted_digits())})},
              {"residual", z.residual.to_decimal_digits(3)},
              {"precision_bits", z.precision_bits}};
}

inline Json to_json(const ResidualProfile& p) {
  Json rows = Json::array();
  for (const auto& r : p.rows) rows.push_back(Json{{"k", r.k}, {"x", r.x.to_decimal()}, {"r", r.residual.to_decimal()}});
  const TrendReport t = convergence_trend(p);
  return Json{{"q", p.q_text},
              {"n", p.n},
              {"target", p.target.to_decimal_digits(20)},
              {"rows", rows},
              {"trend",
               Json{{"top_decade_shrinking", t.top_decade_shrinking},
                    {"endpoints_shrinking", t.endpoints_shrinking},
                    {"final_relative_gap", PrecReal(t.final_relative_gap, 53).to_decimal_digits(6)}}}};
}

inline std::string to_csv(const ResidualProfile& p) {
  std::ostringstream os;
  os << "k,x_k,r_n(k)\n";
  for (const auto& r : p.rows) os << r.k << ',' << r.x.to_decimal() << ',' << r.residual.to_decimal() << '\n';
  return os.str();
}

inline Json to_json(const RatioTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows)
    rows.push_back(Json{{"k", r.k}, {"deviation", r.deviation.to_decimal()}, {"scaled", r.scaled.to_decimal()}});
  return Json{{"q", t.q_text}, {"rows", rows}, {"growth_free", ratio_growth_free(t)}};
}

inline Json to_json(const FjTable& t) {
  Json c = Json::array();
  for (unsigned i = 1; i <= t.i_max; ++i) {
    Json row = Json::array();
    for (unsigned j = 1; j <= t.j_max; ++j) row.push_back(to_string(t.c[i][j]));
    c.push_back(row);
  }
  Json neg = Json::array();
  for (const auto& n : t.negatives)
    neg.push_back(Json{{"j", n.j}, {"k", n.k}, {"value", PrecReal(n.value, 64).to_decimal_digits(10)}});
  return Json{{"i_max", t.i_max},
              {"j_max", t.j_max},
              {"c", c},
              {"positivity", Json{{"k_points", FjTable::k_points}, {"negative_count", t.negatives.size()}, {"negatives", neg}}}};
}

}  // namespace defexp
