#pragma once

// Command-line driver. Every invocation writes exactly one JSON document to
// `out`; diagnostics and help text go to `err`.

#include "defexp/fixtures.hpp"
#include "defexp/serialize.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace defexp::cli {

inline constexpr const char* precision_env = "DEFEXP_PRECISION_BITS";

enum ExitCode : int { ok = 0, computation_error = 1, argument_error = 2 };

/// Bits from the environment override, if set to a positive integer.
inline std::optional<long> precision_from_env(const char* value) {
  if (value == nullptr || *value == '\0') return std::nullopt;
  char* end = nullptr;
  const long bits = std::strtol(value, &end, 10);
  if (*end != '\0' || bits <= 0) throw DomainError(std::string(precision_env) + " must be a positive integer");
  return bits;
}

/// Parses the q-series names A_i (or Ai), E2, E4, E6, P0 and C_n (or Cn).
inline QSeries named_series(const std::string& name, std::size_t trunc) {
  auto index = [&](std::size_t from) {
    std::size_t p = from;
    if (p < name.size() && name[p] == '_') ++p;
    if (p == name.size() || name.find_first_not_of("0123456789", p) != std::string::npos)
      throw DomainError("unknown series '" + name + "'");
    return static_cast<unsigned>(std::stoul(name.substr(p)));
  };
  if (name == "E2") return eisenstein_q(Eisenstein::E2, trunc);
  if (name == "E4") return eisenstein_q(Eisenstein::E4, trunc);
  if (name == "E6") return eisenstein_q(Eisenstein::E6, trunc);
  if (name == "P0") return jacobi_p0(trunc);
  if (!name.empty() && name[0] == 'A') return a_series(index(1), trunc);
  if (!name.empty() && name[0] == 'C') {
    const unsigned n = index(1);
    if (n == 0) throw DomainError("C-coefficients start at C_1");
    return eval_mpoly_series(c_n_reduced(n), trunc);
  }
  throw DomainError("unknown series '" + name + "'");
}

namespace detail {

inline Json error_doc(const std::string& code, const std::string& message) {
  return Json{{"error", Json{{"code", code}, {"message", message}}}};
}

struct Options {
  // coeff
  unsigned n = 1;
  std::string basis = "a012";
  // reduce / eisenstein
  std::string expr;
  // series
  std::size_t trunc = 20;
  // numeric verbs
  std::string q = "1/2";
  unsigned k = 1;
  unsigned k_max = 0;
  unsigned k_min = 10;
  unsigned guess_order = 4;
  long bits = 0;
  long extra_bits = 0;
  std::string csv_path;
  // fj
  unsigned i_max = 8;
  unsigned j_max = 8;
};

inline Rational parse_q(const std::string& text) {
  const Rational q = parse_rational(text);
  check_q(q);
  return q;
}

inline Json coeff_doc(const Options& o) {
  if (o.n == 0) throw DomainError("--n must be >= 1");
  Json doc{{"n", o.n}, {"basis", o.basis}};
  Json poly;
  if (o.basis == "raw") poly = to_json(c_n(o.n), o.n);
  else if (o.basis == "a012") poly = to_json(c_n_reduced(o.n), 3);
  else if (o.basis == "eisenstein") poly = to_json(to_eisenstein(c_n_reduced(o.n)), 3);
  else throw DomainError("--basis must be raw, a012 or eisenstein");
  for (auto& [key, value] : poly.items()) doc[key] = value;
  return doc;
}

inline Json reduce_doc(const Options& o) {
  const MPoly p = parse_mpoly(o.expr);
  if (!p.is_constant() && p.family() != SymbolFamily::A) throw DomainError("reduce expects a polynomial in A-symbols");
  const MPoly r = reduce_to_A012(p.is_constant() ? MPoly::constant(SymbolFamily::A, p.constant_term()) : p);
  Json doc{{"input", to_json(p)}};
  doc["basis"] = "a012";
  const Json body = to_json(r, 3);
  for (const auto& [key, value] : body.items()) doc[key] = value;
  return doc;
}

/// A-polynomials go to E2, E4, E6; E-polynomials come back to A0, A1, A2.
inline Json eisenstein_doc(const Options& o) {
  const MPoly p = parse_mpoly(o.expr);
  const bool from_e = !p.is_constant() && p.family() == SymbolFamily::E;
  if (!p.is_constant() && !from_e && p.family() != SymbolFamily::A)
    throw DomainError("eisenstein expects a polynomial in A- or E-symbols");
  MPoly r = from_e ? from_eisenstein(p)
                   : to_eisenstein(reduce_to_A012(p.is_constant() ? MPoly::constant(SymbolFamily::A, p.constant_term()) : p));
  Json doc{{"input", to_json(p)}};
  doc["basis"] = from_e ? "a012" : "eisenstein";
  const Json body = to_json(r, 3);
  for (const auto& [key, value] : body.items()) doc[key] = value;
  return doc;
}

inline Json zeros_doc(const Options& o, std::optional<long> env_bits) {
  const Rational q = parse_q(o.q);
  if (o.k == 0) throw DomainError("--k must be >= 1");
  const unsigned last = std::max(o.k, o.k_max);
  std::vector<unsigned> ks;
  for (unsigned k = o.k; k <= last; ++k) ks.push_back(k);
  for (unsigned i = 1; i <= o.guess_order; ++i) c_n_reduced(i);
  auto results = defexp::detail::parallel_map(ks.size(), [&](std::size_t idx) {
    ZeroOptions zo;
    zo.guess_order = o.guess_order;
    zo.bits = o.bits > 0 ? o.bits : env_bits.value_or(0);
    zo.q_text = o.q;
    return locate_zero(ks[idx], q, zo);
  });
  Json list = Json::array();
  for (const auto& z : results) list.push_back(to_json(z));
  return Json{{"q", o.q}, {"zeros", list}};
}

inline Json residuals_doc(const Options& o) {
  const Rational q = parse_q(o.q);
  if (o.k_min == 0 || o.k_max < o.k_min) throw DomainError("need 1 <= --kmin <= --kmax");
  std::vector<unsigned> ks;
  for (unsigned k = o.k_min; k <= o.k_max; ++k) ks.push_back(k);
  ProfileOptions po;
  po.extra_bits = o.extra_bits;
  po.guess_order = o.guess_order;
  po.q_text = o.q;
  const ResidualProfile p = residual_profile(q, ks, o.n, po);
  if (!o.csv_path.empty()) {
    std::ofstream f(o.csv_path);
    if (!f) throw DomainError("cannot write '" + o.csv_path + "'");
    f << to_csv(p);
  }
  return to_json(p);
}

inline Json ratio_doc(const Options& o, std::optional<long> env_bits) {
  const Rational q = parse_q(o.q);
  ZeroOptions zo;
  zo.guess_order = o.guess_order;
  zo.bits = o.bits > 0 ? o.bits : env_bits.value_or(0);
  zo.q_text = o.q;
  return to_json(ratio_check(q, o.k_min, o.k_max, zo));
}

inline Json selftest_doc(bool& all_pass) {
  Json list = Json::array();
  std::size_t passed = 0;
  for (const auto& r : run_fixtures()) {
    list.push_back(Json{{"name", r.name}, {"pass", r.pass}});
    passed += r.pass ? 1 : 0;
  }
  all_pass = passed == list.size();
  return Json{{"fixtures", list}, {"passed", passed}, {"failed", list.size() - passed}};
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const char* env_precision = std::getenv(precision_env)) {
  detail::Options o;
  CLI::App app{"Asymptotic coefficients and zeros of the deformed exponential", "defexp"};
  app.require_subcommand(1, 1);

  auto* coeff = app.add_subcommand("coeff", "coefficient polynomial C_n");
  coeff->add_option("--n", o.n, "index n >= 1")->required();
  coeff->add_option("--basis", o.basis, "raw | a012 | eisenstein")->check(CLI::IsMember({"raw", "a012", "eisenstein"}));

  auto* reduce = app.add_subcommand("reduce", "rewrite an A-polynomial in A0, A1, A2");
  reduce->add_option("--expr", o.expr, "polynomial, e.g. \"A3 - 2*A0*A1\"")->required();

  auto* eis = app.add_subcommand("eisenstein", "convert between A0, A1, A2 and E2, E4, E6");
  eis->add_option("--expr", o.expr, "polynomial in A- or E-symbols")->required();

  std::string series_name;
  auto* series = app.add_subcommand("series", "q-expansion of a named object");
  series->add_option("--expr", series_name, "A_i | E2 | E4 | E6 | P0 | C_n")->required();
  series->add_option("--trunc", o.trunc, "truncation order");

  auto* zeros = app.add_subcommand("zeros", "zeros x_k of f");
  zeros->add_option("--q", o.q, "q in (0,1), rational or decimal")->required();
  zeros->add_option("--k", o.k, "first index")->required();
  zeros->add_option("--kmax", o.k_max, "last index");
  zeros->add_option("--guess-order", o.guess_order, "terms of the expansion used for the initial guess");
  zeros->add_option("--bits", o.bits, "working precision (default: per-k estimate)");

  auto* residuals = app.add_subcommand("residuals", "scaled residual profile r_n(k)");
  residuals->add_option("--q", o.q)->required();
  residuals->add_option("--n", o.n, "expansion order")->required();
  residuals->add_option("--kmin", o.k_min)->required();
  residuals->add_option("--kmax", o.k_max)->required();
  residuals->add_option("--extra-bits", o.extra_bits, "added to the per-k working precision");
  residuals->add_option("--guess-order", o.guess_order);
  residuals->add_option("--csv", o.csv_path, "also write k, x_k, r_n(k) as CSV");

  auto* ratio = app.add_subcommand("ratio", "q x_{k+1}/x_k - 1 - 1/k, scaled by k^2");
  ratio->add_option("--q", o.q)->required();
  ratio->add_option("--kmin", o.k_min)->required();
  ratio->add_option("--kmax", o.k_max)->required();
  ratio->add_option("--bits", o.bits);

  auto* fj = app.add_subcommand("fj", "q-expansion coefficients C_ij and F_j(1/k) signs");
  fj->add_option("--imax", o.i_max)->required();
  fj->add_option("--jmax", o.j_max)->required();

  auto* selftest = app.add_subcommand("selftest", "check the built-in reference fixtures");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success&) {
    out << Json{{"help", app.help()}}.dump(2) << '\n';
    return ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    out << detail::error_doc("argument_error", e.what()).dump(2) << '\n';
    return argument_error;
  }

  Json doc;
  int code = ok;
  try {
    const std::optional<long> env_bits = precision_from_env(env_precision);
    if (*coeff) doc = detail::coeff_doc(o);
    else if (*reduce) doc = detail::reduce_doc(o);
    else if (*eis) doc = detail::eisenstein_doc(o);
    else if (*series) doc = Json{{"expr", series_name}, {"series", to_json(named_series(series_name, o.trunc))}};
    else if (*zeros) doc = detail::zeros_doc(o, env_bits);
    else if (*residuals) doc = detail::residuals_doc(o);
    else if (*ratio) doc = detail::ratio_doc(o, env_bits);
    else if (*fj) doc = to_json(fj_extract(o.i_max, o.j_max));
    else if (*selftest) {
      bool all = false;
      doc = detail::selftest_doc(all);
      if (!all) code = computation_error;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    out << detail::error_doc("argument_error", e.what()).dump(2) << '\n';
    return argument_error;
  } catch (const BracketFailure& e) {
    err << "error: " << e.what() << '\n';
    out << detail::error_doc("bracket_failure", e.what()).dump(2) << '\n';
    return computation_error;
  } catch (const InsufficientPrecision& e) {
    err << "error: " << e.what() << '\n';
    out << detail::error_doc("insufficient_precision", e.what()).dump(2) << '\n';
    return computation_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    out << detail::error_doc("internal_error", e.what()).dump(2) << '\n';
    return computation_error;
  }
  out << doc.dump(2) << '\n';
  return code;
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace defexp::cli
