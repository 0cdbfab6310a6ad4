#include <cmath>

#include <gtest/gtest.h>

#include "pgap/analysis.hpp"

namespace pgap {
namespace {

const CensusSeries& series_to_2_24() {
  static const CensusSeries s = build_census(std::uint64_t{1} << 24, {16, 17, 18, 19, 20, 21, 22, 23, 24});
  return s;
}

TEST(RatioTable, FirstRowsOfPrintedTables) {
  const CensusSeries s = series_to_2_24().window(1 << 24, 1 << 24);
  const RatioTable t2 = ratio_table(s, 2);
  ASSERT_EQ(t2.rows.size(), 1u);
  EXPECT_NEAR(t2.rows[0].ratios[0], 0.7971, 2e-4);
  EXPECT_NEAR(t2.rows[0].ratios[1], 0.9104, 2e-4);
  EXPECT_NEAR(t2.rows[0].ratios[2], 0.8519, 2e-4);
  const RatioTable t3 = ratio_table(s, 3);
  EXPECT_NEAR(t3.rows[0].ratios[0], 0.6104, 2e-4);
  EXPECT_NEAR(t3.rows[0].ratios[1], 0.7975, 2e-4);
  EXPECT_NEAR(t3.rows[0].ratios[2], 0.6972, 2e-4);
}

TEST(RatioTable, RowsIncreaseAndStayInRange) {
  for (unsigned k : {2u, 3u, 4u}) {
    const RatioTable t = ratio_table(series_to_2_24(), k);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (i > 0) EXPECT_GT(t.rows[i].x, t.rows[i - 1].x);
      for (double r : t.rows[i].ratios) {
        EXPECT_GT(r, 0.0);
        EXPECT_LT(r, 1.2);
      }
    }
  }
}

TEST(RatioTable, Errors) {
  EXPECT_THROW(ratio_table(series_to_2_24(), 5), argument_error);
  EXPECT_THROW(ratio_table(series_to_2_24(), 1), argument_error);
  EXPECT_THROW(ratio_table(CensusSeries{}, 2), argument_error);
}

TEST(FormatFixed, HalfAwayFromZero) {
  EXPECT_EQ(format_fixed(0.125, 2), "0.13");
  EXPECT_EQ(format_fixed(-0.125, 2), "-0.13");
  EXPECT_EQ(format_fixed(0.91039, 4), "0.9104");
  EXPECT_EQ(format_fixed(0.79709, 4), "0.7971");
  EXPECT_EQ(format_fixed(1.0, 4), "1.0000");
}

TEST(ErrorFit, SyntheticFiveX) {
  std::vector<DeficitPoint> pts;
  for (int j = 20; j <= 30; ++j) {
    const double x = std::ldexp(1.0, j);
    pts.push_back({.x = x, .predicted = 3.0 * x * x + 5.0 * x, .exact = 3.0 * x * x});
  }
  const ErrorFit fit = fit_power_law(pts);
  EXPECT_NEAR(fit.A, 5.0, 5e-10);
  EXPECT_NEAR(fit.alpha, 1.0, 1e-10);
  EXPECT_NEAR(fit.pointwise_A, 5.0, 1e-10);
  EXPECT_EQ(fit.window.size(), 11u);
  EXPECT_LT(fit.rms_residual, 1e-10);
}

TEST(ErrorFit, SyntheticPowerLaw) {
  std::vector<DeficitPoint> pts;
  for (int j = 10; j <= 20; j += 2) {
    const double x = std::ldexp(1.0, j);
    pts.push_back({.x = x, .predicted = 2.0 * std::pow(x, 1.1), .exact = 0.0});
  }
  const ErrorFit fit = fit_power_law(pts);
  EXPECT_NEAR(fit.A, 2.0, 1e-9);
  EXPECT_NEAR(fit.alpha, 1.1, 1e-12);
}

TEST(ErrorFit, NeedsFourOvershootingCheckpoints) {
  std::vector<DeficitPoint> pts{{1e3, 2, 1}, {1e4, 3, 1}, {1e5, 4, 1}};
  EXPECT_THROW(fit_power_law(pts), fit_error);
  pts.push_back({1e6, 1, 2});
  try {
    fit_power_law(pts);
    FAIL();
  } catch (const fit_error& e) {
    EXPECT_NE(std::string(e.what()).find("1.000000e+06"), std::string::npos) << e.what();
  }
}

TEST(ErrorFit, RealCensusExponentNearOne) {
  const ErrorFit fit = fit_error_term(series_to_2_24(), 2, Predictor::hb);
  EXPECT_EQ(fit.k, 2u);
  EXPECT_GE(fit.alpha, 0.90);
  EXPECT_LE(fit.alpha, 1.15);
  EXPECT_GT(fit.pointwise_A, 0.0);
}

TEST(Dkn, RecoversSyntheticPolynomial) {
  std::vector<double> L, y;
  for (int j = 10; j <= 60; j += 5) {
    const double l = j * std::log(2.0);
    L.push_back(l);
    y.push_back(1.0 - 3.0 / l + 2.0 / (l * l));
  }
  const DknFit fit = fit_dkn_points(L, y, 2, 2);
  ASSERT_EQ(fit.coefficients.size(), 3u);
  EXPECT_NEAR(fit.coefficients[0], 1.0, 1e-8);
  EXPECT_NEAR(fit.coefficients[1], -3.0, 1e-8);
  EXPECT_NEAR(fit.coefficients[2], 2.0, 1e-8);
  EXPECT_GT(fit.condition_number, 1.0);
}

TEST(Dkn, Errors) {
  std::vector<double> L{10, 11, 12}, y{1, 1, 1};
  EXPECT_THROW(fit_dkn_points(L, y, 2, 2), fit_error);
  std::vector<double> Lr{10, 10, 10, 10, 10}, yr{1, 1, 1, 1, 1};
  EXPECT_THROW(fit_dkn_points(Lr, yr, 2, 2), fit_error);
}

TEST(Dkn, LeadingCoefficientNearOne) {
  const DknFit fit = fit_dkn(series_to_2_24(), 2, 2);
  EXPECT_GE(fit.coefficients[0], 0.8);
  EXPECT_LE(fit.coefficients[0], 1.2);
}

std::vector<Rational> coeffs(const InverseLogSeries& s) { return s.coefficients(); }

TEST(Expansion, GeneralFormulaForPnt) {
  for (int k = 2; k <= 4; ++k) {
    const Rational K(k);
    const InverseLogSeries s = expansion_coefficients(Predictor::pnt, K, 3);
    EXPECT_EQ(s[0], 1);
    EXPECT_EQ(s[1], 1 - K);
    EXPECT_EQ(s[2], (4 - 5 * K + K * K) / 2);
    EXPECT_EQ(s[3], 6 - Rational(47, 6) * K + 2 * K * K - K * K * K / 6);
  }
  // The same polynomial identities hold at fractional order.
  const Rational K(5, 2);
  const InverseLogSeries s = expansion_coefficients(Predictor::pnt, 2.5, 3);
  EXPECT_EQ(s[1], 1 - K);
  EXPECT_EQ(s[2], (4 - 5 * K + K * K) / 2);
  EXPECT_EQ(s[3], 6 - Rational(47, 6) * K + 2 * K * K - K * K * K / 6);
  EXPECT_EQ(coeffs(expansion_coefficients(Predictor::pnt, 3.0, 3)),
            (std::vector<Rational>{1, -2, -1, -4}));
}

TEST(Expansion, ClosedThirdMoment) {
  const InverseLogSeries s = expansion_coefficients(Predictor::closed, 3.0, 3);
  EXPECT_EQ(coeffs(s), (std::vector<Rational>{1, -4, Rational(5, 3), -2}));
  EXPECT_EQ(expansion_coefficients(Predictor::closed, 3.0, 4)[4], -13);
}

TEST(Expansion, ClosedSecondMoment) {
  const InverseLogSeries s = expansion_coefficients(Predictor::closed, 2.0, 4);
  EXPECT_EQ(coeffs(s), (std::vector<Rational>{1, -2, -1, -3, -13}));
  // Independent route: (2x^2/pi - 2x)/(2 x L) = S^{-1} - 1/L.
  const InverseLogSeries direct = series_reciprocal(li_series(4)) - InverseLogSeries::one(4).shifted(1);
  EXPECT_EQ(s, direct);
}

TEST(Expansion, FourthMomentMatchesNumericPredictorAtLargeL) {
  // With pi replaced by the truncated Li series, the normalized predictor and
  // the order-N expansion differ by O(L^{-N-1}).
  const double L = 60.0, x = std::exp(L);
  const auto gap = [&](Predictor p, unsigned k, unsigned N) {
    const double pi = x / L * li_series(N).evaluate(L);
    const double norm = detail::factorial_real(k) * x * std::pow(L, k - 1.0);
    return std::abs(expansion_coefficients(p, double(k), N).evaluate(L) - predict(p, k, x, pi) / norm);
  };
  for (unsigned k : {2u, 3u, 4u})
    for (Predictor p : {Predictor::closed, Predictor::pnt}) {
      EXPECT_LT(gap(p, k, 6), 1e-7) << k;
      EXPECT_LT(gap(p, k, 6), gap(p, k, 3) / 100.0) << k;
    }
}

TEST(Expansion, OrderZeroIsHeathBrownOliveira) {
  for (double x : {1e6, 1e9, 1e12, 1e18}) {
    const double L = std::log(x);
    for (double k : {2.0, 3.0, 4.0, 2.5})
      EXPECT_NEAR(predict_pnt(k, x, x / L) / predict_hb(k, x), 1.0, 1e-12) << x << " " << k;
  }
  EXPECT_EQ(coeffs(expansion_coefficients(Predictor::pnt, 2.0, 0)), std::vector<Rational>{1});
}

TEST(Expansion, Errors) {
  EXPECT_THROW(expansion_coefficients(Predictor::hb, 2.0, 3), argument_error);
  EXPECT_THROW(expansion_coefficients(Predictor::closed, 5.0, 3), argument_error);
  EXPECT_THROW(expansion_coefficients(Predictor::closed, 2.5, 3), argument_error);
  EXPECT_THROW(expansion_coefficients(Predictor::pnt, 2.0, 9), argument_error);
}

}  // namespace
}  // namespace pgap
