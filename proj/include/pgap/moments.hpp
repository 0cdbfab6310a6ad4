#pragma once

// Exact gap moments M_k(x) = sum_{p_{n+1} <= x} (p_{n+1} - p_n)^k and the
// analytic predictors compared against them.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgap/error.hpp"
#include "pgap/gap_census.hpp"
#include "pgap/special_fn.hpp"

namespace pgap {

using uint128 = unsigned __int128;

inline std::string to_string(uint128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

// Largest integer order accumulated exactly.
inline constexpr unsigned kExactMomentMaxOrder = 8;

// sum_d d^k tau_d(x) in 128-bit integers; argument_error on overflow.
inline uint128 exact_moment_integer(const GapCensus& census, unsigned k) {
  if (k > kExactMomentMaxOrder) throw argument_error("exact integer moments are limited to k <= 8");
  uint128 total = 0;
  census.for_each([&](std::uint64_t d, std::uint64_t c) {
    uint128 term = c;
    for (unsigned i = 0; i < k; ++i)
      if (__builtin_mul_overflow(term, uint128{d}, &term)) throw argument_error("moment overflows 128 bits");
    if (__builtin_add_overflow(total, term, &total)) throw argument_error("moment overflows 128 bits");
  });
  return total;
}

inline bool is_small_integer_order(double k) {
  return k == std::floor(k) && k >= 0.0 && k <= kExactMomentMaxOrder;
}

// M_k(x) as a double. Integral k <= 8 goes through the exact integer sum;
// other orders use exp(k ln d) in long double.
inline double exact_moment(const GapCensus& census, double k) {
  if (!(k >= 0.0)) throw domain_error("moment order must be >= 0");
  if (is_small_integer_order(k))
    return static_cast<double>(static_cast<long double>(exact_moment_integer(census, static_cast<unsigned>(k))));
  long double total = 0.0L;
  census.for_each([&](std::uint64_t d, std::uint64_t c) {
    total += static_cast<long double>(c) * std::exp(static_cast<long double>(k) * std::log(static_cast<long double>(d)));
  });
  return static_cast<double>(total);
}

// Predictors -------------------------------------------------------------

enum class Predictor {
  hb,        // (1) Gamma(k+1) x log^{k-1} x
  closed,    // (2) closed bracket polynomials in pi/x, k = 2, 3, 4
  pnt,       // (3) k! x^k / pi^{k-1}
  eulerian,  // Eulerian form of the extended geometric sum
  gamma,     // Gamma(k+1) x^k / pi^{k-1} for real k
};

inline constexpr std::array<Predictor, 5> kAllPredictors = {Predictor::hb, Predictor::closed, Predictor::pnt,
                                                            Predictor::eulerian, Predictor::gamma};

inline std::string_view predictor_name(Predictor p) {
  switch (p) {
    case Predictor::hb: return "hb";
    case Predictor::closed: return "closed";
    case Predictor::pnt: return "pnt";
    case Predictor::eulerian: return "eulerian";
    case Predictor::gamma: return "gamma";
  }
  return "?";
}

inline Predictor parse_predictor(std::string_view s) {
  if (s == "hb" || s == "1") return Predictor::hb;
  if (s == "closed" || s == "2") return Predictor::closed;
  if (s == "pnt" || s == "3") return Predictor::pnt;
  if (s == "eulerian") return Predictor::eulerian;
  if (s == "gamma") return Predictor::gamma;
  throw argument_error("unknown predictor '" + std::string(s) + "'");
}

namespace detail {

inline void require_pi(double x, double pi_x) {
  if (!(pi_x > 0.0)) throw domain_error("pi(x) must be positive");
  if (!(pi_x < x)) throw domain_error("pi(x) must be below x");
}

// k! for integral k, Gamma(k+1) otherwise.
inline double factorial_real(double k) {
  if (k == std::floor(k) && k <= 170.0) {
    double f = 1.0;
    for (int i = 2; i <= static_cast<int>(k); ++i) f *= i;
    return f;
  }
  return gamma_real(k + 1.0);
}

}  // namespace detail

inline double predict_hb(double k, double x) {
  if (!(x > 1.0)) throw domain_error("predict_hb requires x > 1");
  if (!(k >= 0.0)) throw domain_error("moment order must be >= 0");
  return detail::factorial_real(k) * x * std::pow(std::log(x), k - 1.0);
}

// Coefficients of the bracket polynomial in r = pi/x (constant term first).
inline std::vector<Rational> closed_bracket(unsigned k) {
  switch (k) {
    case 2: return {Rational(1), Rational(-1)};
    case 3: return {Rational(1), Rational(-2), Rational(2, 3)};
    case 4: return {Rational(1), Rational(-3), Rational(7, 3), Rational(-1, 3)};
    default: throw argument_error("closed-form predictor supports k = 2, 3, 4 only (use eulerian)");
  }
}

inline double predict_closed(unsigned k, double x, double pi_x) {
  const auto bracket = closed_bracket(k);
  detail::require_pi(x, pi_x);
  const double r = pi_x / x;
  double poly = 0.0;
  for (auto it = bracket.rbegin(); it != bracket.rend(); ++it) poly = poly * r + static_cast<double>(*it);
  return detail::factorial_real(k) * x * std::pow(x / pi_x, static_cast<double>(k) - 1.0) * poly;
}

inline double predict_pnt(double k, double x, double pi_x) {
  if (!(k >= 0.0)) throw domain_error("moment order must be >= 0");
  detail::require_pi(x, pi_x);
  return detail::factorial_real(k) * x * std::pow(x / pi_x, k - 1.0);
}

// 2 pi^2/(x - 2 pi) * 2^k * sum_n n^k q^n with q = 1 - 2pi/x.
inline double predict_eulerian(unsigned k, double x, double pi_x) {
  if (k < 1) throw argument_error("predict_eulerian requires k >= 1");
  detail::require_pi(x, pi_x);
  if (!(2.0 * pi_x < x)) throw model_domain_error("predict_eulerian requires pi(x) < x/2");
  const double eps = 2.0 * pi_x / x;
  return 2.0 * pi_x * pi_x / (x - 2.0 * pi_x) * std::ldexp(geom_power_sum_from_gap(k, eps), static_cast<int>(k));
}

inline double predict_gamma(double k, double x, double pi_x) {
  if (!(k >= 0.0)) throw domain_error("moment order must be >= 0");
  detail::require_pi(x, pi_x);
  return gamma_real(k + 1.0) * x * std::pow(x / pi_x, k - 1.0);
}

inline bool predictor_supports(Predictor p, double k) {
  switch (p) {
    case Predictor::hb: return k >= 0.0;
    case Predictor::closed: return k == 2.0 || k == 3.0 || k == 4.0;
    case Predictor::pnt:
    case Predictor::gamma: return k >= 0.0;
    case Predictor::eulerian: return k >= 1.0 && k == std::floor(k) && k <= kEulerianMaxRow;
  }
  return false;
}

inline double predict(Predictor p, double k, double x, double pi_x) {
  if (!predictor_supports(p, k))
    throw argument_error("predictor " + std::string(predictor_name(p)) + " does not support k = " +
                         std::to_string(k));
  switch (p) {
    case Predictor::hb: return predict_hb(k, x);
    case Predictor::closed: return predict_closed(static_cast<unsigned>(k), x, pi_x);
    case Predictor::pnt: return predict_pnt(k, x, pi_x);
    case Predictor::eulerian: return predict_eulerian(static_cast<unsigned>(k), x, pi_x);
    case Predictor::gamma: return predict_gamma(k, x, pi_x);
  }
  return 0.0;
}

struct MomentReport {
  std::uint64_t x = 0;
  std::uint64_t pi_x = 0;
  double k = 0.0;
  double exact = 0.0;
  std::optional<uint128> exact_integer;  // set for integral k <= 8
  std::map<Predictor, double> predictions;
  std::map<Predictor, double> ratios;  // exact / prediction
};

inline MomentReport moment_report(const GapCensus& census, double k, const std::vector<Predictor>& predictors) {
  MomentReport r;
  r.x = census.x();
  r.pi_x = census.pi_x();
  r.k = k;
  if (is_small_integer_order(k)) r.exact_integer = exact_moment_integer(census, static_cast<unsigned>(k));
  r.exact = exact_moment(census, k);
  const auto x = static_cast<double>(census.x());
  const auto pi = static_cast<double>(census.pi_x());
  for (const Predictor p : predictors) {
    const double v = predict(p, k, x, pi);
    r.predictions[p] = v;
    r.ratios[p] = r.exact / v;
  }
  return r;
}

}  // namespace pgap
