#include "defexp/serialize.hpp"
#include "defexp/validate.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace defexp;

namespace {

const Rational half(1, 2);

}  // namespace

TEST(ScaledResidual, ExactOnTheTruncatedExpansion) {
  oracle::Gen g(5);
  for (int t = 0; t < 40; ++t) {
    const auto n = static_cast<std::size_t>(g.integer(0, 5));
    const auto k = static_cast<unsigned>(g.integer(1, 30));
    const Rational q(g.integer(1, 9), 10);
    std::vector<Rational> c(n + 1);
    for (auto& x : c) x = g.rational();
    // x = -k q^{1-k} (1 + sum_{i<=n+1} C_i k^{-1-i})
    Rational factor = 1;
    for (std::size_t i = 1; i <= n + 1; ++i) factor += c[i - 1] / detail::power(Rational(k), static_cast<long>(i + 1));
    const Rational x = -Rational(k) * detail::power(q, 1L - static_cast<long>(k)) * factor;
    const Rational r = scaled_residual<Rational>(x, k, q, std::span<const Rational>(c.data(), n));
    EXPECT_EQ(r, c[n]);
  }
}

TEST(RatioDeviation, VanishesOnLeadingAsymptotics) {
  for (const Rational& q : {Rational(1, 2), Rational(3, 10)})
    for (unsigned k = 1; k <= 12; ++k) {
      auto lead = [&](unsigned kk) -> Rational { return -Rational(kk) * detail::power(q, 1L - static_cast<long>(kk)); };
      EXPECT_EQ(ratio_deviation<Rational>(lead(k), lead(k + 1), k, q), 0);
    }
}

TEST(ResidualProfile, LeadingOrderApproachesA0) {
  const ResidualProfile p = residual_profile(half, {14, 10, 12, 16}, 0);
  ASSERT_EQ(p.rows.size(), 4u);
  EXPECT_EQ(p.rows.front().k, 10u);
  const double target = eval_series_numeric(a_series(0, 200), PrecReal(half, 128), 128).value.to_double();
  EXPECT_NEAR(p.target.to_double(), target, 1e-14);
  double prev_gap = INFINITY;
  for (const auto& row : p.rows) {
    const double gap = std::fabs(row.residual.to_double() - target);
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
    EXPECT_GT(row.residual.accuracy_bits(), 64);
  }
  EXPECT_LT(prev_gap / target, 0.25);
}

TEST(ResidualProfile, StableUnderExtraPrecision) {
  const std::vector<unsigned> ks{10, 13, 16};
  const ResidualProfile base = residual_profile(half, ks, 2);
  ProfileOptions more;
  more.extra_bits = 64;
  const ResidualProfile fine = residual_profile(half, ks, 2, more);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const PrecReal rel = ((base.rows[i].residual - fine.rows[i].residual) / fine.rows[i].residual).abs();
    EXPECT_LT(rel.log2_abs(), -32.0) << ks[i];
  }
}

TEST(ResidualProfile, CsvLayout) {
  const ResidualProfile p = residual_profile(half, {6, 7}, 1);
  const std::string csv = to_csv(p);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,x_k,r_n(k)");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("6,-", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line.rfind("7,-", 0), 0u);
  EXPECT_FALSE(std::getline(in, line));
}

TEST(ResidualProfile, RejectsEmptyInput) {
  EXPECT_THROW(residual_profile(half, {}, 1), DomainError);
  EXPECT_THROW(residual_profile(half, {0, 3}, 1), DomainError);
  EXPECT_THROW(residual_profile(Rational(2), {5}, 1), DomainError);
}

TEST(Trend, TopDecadeAndEndpoints) {
  ResidualProfile p;
  p.target = PrecReal(10L, 64);
  for (unsigned k = 10; k <= 30; ++k) {
    // gap grows until k = 15 and shrinks afterwards
    const double gap = k <= 15 ? 0.5 + 0.1 * (k - 10) : 1.0 * 15.0 / k;
    p.rows.push_back({k, PrecReal(-1L, 64), PrecReal(10.0 - gap, 64)});
  }
  const TrendReport t = convergence_trend(p);
  EXPECT_TRUE(t.top_decade_shrinking);
  EXPECT_FALSE(t.endpoints_shrinking);
  EXPECT_NEAR(t.final_relative_gap, 0.05, 1e-12);
  EXPECT_TRUE(t.converging());
  EXPECT_FALSE(t.converging(0.01));
}

TEST(RatioCheck, BoundedOnShortRange) {
  const RatioTable t = ratio_check(half, 8, 13);
  ASSERT_EQ(t.rows.size(), 6u);
  for (const auto& r : t.rows) {
    EXPECT_LT(std::fabs(r.scaled.to_double()), 1.0) << r.k;
    EXPECT_NEAR(r.scaled.to_double(), r.deviation.to_double() * r.k * r.k, 1e-12);
  }
  EXPECT_TRUE(ratio_growth_free(t));
  EXPECT_THROW(ratio_check(half, 5, 4), DomainError);
}

TEST(RatioCheck, GrowthDetector) {
  RatioTable t;
  for (unsigned k = 1; k <= 6; ++k) t.rows.push_back({k, PrecReal(64), PrecReal(static_cast<double>(k), 64)});
  EXPECT_FALSE(ratio_growth_free(t));
  std::reverse(t.rows.begin(), t.rows.end());
  EXPECT_TRUE(ratio_growth_free(t));
}

TEST(FjTable, ColumnsAndRows) {
  const FjTable t = fj_extract(10, 6);
  for (unsigned i = 1; i <= 10; ++i) EXPECT_EQ(t.c[i][1], Rational(i % 2 == 1 ? 1 : -1)) << i;
  const std::vector<long> sigma{1, 3, 4, 7, 6, 12};
  for (unsigned j = 1; j <= 6; ++j) EXPECT_EQ(t.c[1][j], sigma[j - 1]);
  for (unsigned k = 1; k <= FjTable::k_points; ++k) {
    const Rational closed = Rational(1, k * (k + 1));
    const Rational bound = 1 / detail::power(Rational(k), 12);
    EXPECT_LE(abs(t.f_values[1][k] - closed), bound) << k;
  }
  for (const auto& n : t.negatives) EXPECT_LT(n.value, 0);
  EXPECT_THROW(fj_extract(0, 3), DomainError);
}

TEST(Expansion, Telescoping) {
  for (unsigned n = 0; n <= 8; ++n) {
    const auto lo = inverse_k_expansion(n), hi = inverse_k_expansion(n + 1);
    ASSERT_EQ(hi.size(), lo.size() + 1);
    for (std::size_t p = 0; p < lo.size(); ++p) EXPECT_EQ(hi[p], lo[p]) << n << " " << p;
    EXPECT_EQ(hi.back(), c_n_reduced(n + 1));
  }
}
