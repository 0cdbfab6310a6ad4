#pragma once

// Ratio tables, error-term fits, d_{kn} fits and 1/log x expansions of the
// moment predictors.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pgap/error.hpp"
#include "pgap/gap_census.hpp"
#include "pgap/moments.hpp"
#include "pgap/series.hpp"
#include "pgap/special_fn.hpp"

namespace pgap {

// Predictors in the three ratio columns, in column order.
inline constexpr std::array<Predictor, 3> kTablePredictors = {Predictor::hb, Predictor::closed, Predictor::pnt};

struct RatioRow {
  std::uint64_t x = 0;
  std::uint64_t pi_x = 0;
  unsigned k = 0;
  uint128 exact = 0;
  std::array<double, 3> predictions{};
  std::array<double, 3> ratios{};
};

struct RatioTable {
  unsigned k = 0;
  std::vector<RatioRow> rows;
};

inline RatioTable ratio_table(const CensusSeries& series, unsigned k) {
  if (k < 2 || k > 4) throw argument_error("ratio tables are defined for k = 2, 3, 4");
  if (series.empty()) throw argument_error("ratio table needs at least one census");
  RatioTable table{.k = k};
  for (const auto& census : series) {
    RatioRow row{.x = census.x(), .pi_x = census.pi_x(), .k = k};
    row.exact = exact_moment_integer(census, k);
    const auto exact = static_cast<double>(static_cast<long double>(row.exact));
    for (std::size_t i = 0; i < kTablePredictors.size(); ++i) {
      row.predictions[i] = predict(kTablePredictors[i], k, static_cast<double>(census.x()),
                                   static_cast<double>(census.pi_x()));
      row.ratios[i] = exact / row.predictions[i];
    }
    table.rows.push_back(row);
  }
  return table;
}

// Rounds half away from zero to `digits` decimals and prints fixed.
inline std::string format_fixed(double v, int digits = 4) {
  const double scale = std::pow(10.0, digits);
  const double rounded = std::round(v * scale) / scale;
  std::string buf(64, '\0');
  const int n = std::snprintf(buf.data(), buf.size(), "%.*f", digits, rounded);
  buf.resize(static_cast<std::size_t>(n));
  return buf;
}

inline std::string format_sci(double v, int digits = 10) {
  std::string buf(64, '\0');
  const int n = std::snprintf(buf.data(), buf.size(), "%.*e", digits, v);
  buf.resize(static_cast<std::size_t>(n));
  return buf;
}

// Error-term fits ----------------------------------------------------------

// One checkpoint for the deficit fit: prediction - exact ~ A x^alpha.
struct DeficitPoint {
  double x = 0.0;
  double predicted = 0.0;
  double exact = 0.0;
};

struct ErrorFit {
  unsigned k = 0;
  Predictor predictor = Predictor::hb;
  double A = 0.0;
  double alpha = 0.0;
  std::vector<double> window;      // x values used
  std::vector<double> residuals;   // ln deficit - (ln A + alpha ln x)
  double rms_residual = 0.0;
  double pointwise_A = 0.0;        // (prediction - exact)/x at the largest x
};

// Unweighted least squares of ln(predicted - exact) on ln x.
inline ErrorFit fit_power_law(std::span<const DeficitPoint> points) {
  if (points.size() < 4) throw fit_error("error-term fit needs at least 4 checkpoints");
  std::vector<double> lx, ly;
  for (const auto& p : points) {
    const double deficit = p.predicted - p.exact;
    if (!(deficit > 0.0))
      throw fit_error("prediction does not exceed the exact moment at x = " + format_sci(p.x, 6));
    lx.push_back(std::log(p.x));
    ly.push_back(std::log(deficit));
  }
  const auto n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw fit_error("error-term fit needs distinct checkpoints");
  ErrorFit fit;
  fit.alpha = sxy / sxx;
  const double intercept = my - fit.alpha * mx;
  fit.A = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (intercept + fit.alpha * lx[i]);
    fit.residuals.push_back(r);
    ss += r * r;
    fit.window.push_back(points[i].x);
  }
  fit.rms_residual = std::sqrt(ss / n);
  const auto& last = points.back();
  fit.pointwise_A = (last.predicted - last.exact) / last.x;
  return fit;
}

inline ErrorFit fit_error_term(const CensusSeries& series, unsigned k, Predictor predictor) {
  std::vector<DeficitPoint> points;
  for (const auto& census : series) {
    const auto x = static_cast<double>(census.x());
    points.push_back({.x = x,
                      .predicted = predict(predictor, k, x, static_cast<double>(census.pi_x())),
                      .exact = exact_moment(census, k)});
  }
  ErrorFit fit = fit_power_law(points);
  fit.k = k;
  fit.predictor = predictor;
  return fit;
}

// d_{kn} fits --------------------------------------------------------------

struct DknFit {
  unsigned k = 0;
  unsigned order = 0;
  std::vector<double> coefficients;  // d_{k0} ... d_{kN}
  double condition_number = 0.0;
  double rms_residual = 0.0;
};

// Least squares of y = M_k/(k! x L^{k-1}) on 1, 1/L, ..., 1/L^N.
inline DknFit fit_dkn_points(std::span<const double> L, std::span<const double> y, unsigned k, unsigned order) {
  const auto rows = static_cast<Eigen::Index>(L.size());
  const auto cols = static_cast<Eigen::Index>(order) + 1;
  if (L.size() != y.size()) throw argument_error("fit_dkn: mismatched sample sizes");
  if (rows < cols + 1) throw fit_error("fit_dkn needs at least order + 2 checkpoints");
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double inv = 1.0 / L[static_cast<std::size_t>(i)];
    double p = 1.0;
    for (Eigen::Index j = 0; j < cols; ++j, p *= inv) A(i, j) = p;
    b(i) = y[static_cast<std::size_t>(i)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < cols) throw fit_error("fit_dkn: design matrix is rank deficient");
  const Eigen::VectorXd c = qr.solve(b);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& sv = svd.singularValues();
  DknFit fit{.k = k, .order = order};
  fit.coefficients.assign(c.data(), c.data() + c.size());
  fit.condition_number = sv(0) / sv(sv.size() - 1);
  fit.rms_residual = std::sqrt((A * c - b).squaredNorm() / static_cast<double>(rows));
  return fit;
}

inline DknFit fit_dkn(const CensusSeries& series, unsigned k, unsigned order) {
  if (k < 1) throw argument_error("fit_dkn requires k >= 1");
  std::vector<double> L, y;
  for (const auto& census : series) {
    const auto x = static_cast<double>(census.x());
    const double l = std::log(x);
    L.push_back(l);
    y.push_back(exact_moment(census, k) / (detail::factorial_real(k) * x * std::pow(l, k - 1.0)));
  }
  return fit_dkn_points(L, y, k, order);
}

// Expansions in 1/log x ----------------------------------------------------

inline constexpr unsigned kMaxExpansionOrder = 8;

// Coefficients c_n of predictor = k! x L^{k-1} (c_0 + c_1/L + ... ) after
// substituting pi(x) by the Li asymptotic series x/L (1 + 1/L + 2/L^2 + ...).
//   pnt:    (x/pi)^{k-1} = L^{k-1} S^{1-k}
//   closed: the same times sum_j b_j r^j with r = pi/x = S/L.
inline InverseLogSeries expansion_coefficients(Predictor variant, const Rational& k, unsigned order) {
  if (order > kMaxExpansionOrder) throw argument_error("expansion order is capped at 8");
  const InverseLogSeries S = li_series(order);
  const InverseLogSeries base = series_power(S, Rational(1) - k);
  switch (variant) {
    case Predictor::pnt:
    case Predictor::gamma: return base;
    case Predictor::closed: {
      if (boost::multiprecision::denominator(k) != 1)
        throw argument_error("closed-form expansion requires integer k");
      const auto bracket = closed_bracket(static_cast<unsigned>(boost::multiprecision::numerator(k)));
      InverseLogSeries poly(order);
      InverseLogSeries s_pow = InverseLogSeries::one(order);
      for (std::size_t j = 0; j < bracket.size(); ++j) {
        poly += s_pow.shifted(j) * bracket[j];
        s_pow = s_pow * S;
      }
      return base * poly;
    }
    default: throw argument_error("expansion is available for the closed and pnt predictors");
  }
}

inline InverseLogSeries expansion_coefficients(Predictor variant, double k, unsigned order) {
  return expansion_coefficients(variant, to_rational(k), order);
}

}  // namespace pgap
