#pragma once

// Eulerian numbers, power-geometric sums, the logarithmic integral and Gamma.

#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pgap/error.hpp"
#include "pgap/series.hpp"

namespace pgap {

// Rows of the Eulerian triangle, k <= kEulerianMaxRow.
inline constexpr unsigned kEulerianMaxRow = 60;

// Row k holds <k,0> ... <k,k-1> (row 0 is [1]). Rows are built with
//   <k,i> = (i+1)<k-1,i> + (k-i)<k-1,i-1>
// in exact integers and memoized; concurrent readers are safe.
class EulerianTriangle {
 public:
  const std::vector<BigInt>& row(unsigned k) {
    if (k > kEulerianMaxRow)
      throw argument_error("Eulerian row " + std::to_string(k) + " exceeds cap " +
                           std::to_string(kEulerianMaxRow));
    {
      std::shared_lock lock(mutex_);
      if (k < rows_.size()) return rows_[k];
    }
    std::unique_lock lock(mutex_);
    if (rows_.empty()) {
      rows_.reserve(kEulerianMaxRow + 1);  // references handed out stay valid
      rows_.push_back({BigInt(1)});
    }
    while (rows_.size() <= k) {
      const unsigned n = static_cast<unsigned>(rows_.size());
      const auto& prev = rows_.back();
      std::vector<BigInt> next(n);
      for (unsigned i = 0; i < n; ++i) {
        BigInt v = 0;
        if (i < prev.size()) v += BigInt(i + 1) * prev[i];
        if (i >= 1 && i - 1 < prev.size()) v += BigInt(n - i) * prev[i - 1];
        next[i] = v;
      }
      rows_.push_back(std::move(next));
    }
    return rows_[k];
  }

  static EulerianTriangle& shared() {
    static EulerianTriangle instance;
    return instance;
  }

 private:
  std::shared_mutex mutex_;
  std::vector<std::vector<BigInt>> rows_;
};

inline std::vector<BigInt> eulerian_row(unsigned k) { return EulerianTriangle::shared().row(k); }

// sum_{n>=1} n^k q^n with q = 1 - gap, 0 < gap < 1, using
//   (1/(1-q)^{k+1}) sum_i <k,i> q^{k-i}.
// Takes the gap 1 - q directly so callers that know it exactly avoid the
// cancellation of forming 1 - q near q = 1.
inline double geom_power_sum_from_gap(unsigned k, double gap) {
  if (!(gap > 0.0 && gap < 1.0)) throw domain_error("geom_power_sum requires 0 < q < 1");
  const double q = 1.0 - gap;
  if (k == 0) return q / gap;
  const auto& row = EulerianTriangle::shared().row(k);
  // Horner in q over coefficients of q^k ... q^1.
  double poly = 0.0;
  for (unsigned i = 0; i < k; ++i) poly = poly * q + static_cast<double>(row[i]);
  poly *= q;
  return poly / std::pow(gap, static_cast<double>(k + 1));
}

inline double geom_power_sum(unsigned k, double q) {
  if (!(q > 0.0 && q < 1.0)) throw domain_error("geom_power_sum requires 0 < q < 1");
  return geom_power_sum_from_gap(k, 1.0 - q);
}

// Logarithmic integral ----------------------------------------------------

enum class LiMethod { quadrature, asymptotic };

struct LiValue {
  double x = 0.0;
  double value = 0.0;
  LiMethod method = LiMethod::quadrature;
  unsigned terms_used = 0;        // asymptotic only
  double error_estimate = 0.0;    // quadrature only
};

// Li(x) = integral_2^x du / ln u, integrated as integral_{ln 2}^{ln x} e^t/t dt
// by adaptive Gauss-Kronrod (61 points). Tolerances below ~1e-14 are not
// reachable in double precision and only cost subdivisions.
inline LiValue li_quadrature(double x, double tol = 1e-12) {
  if (!(x > 2.0)) throw domain_error("li_quadrature requires x > 2");
  if (!(tol > 0.0)) throw argument_error("li_quadrature requires tol > 0");
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [](double t) { return std::exp(t) / t; }, std::log(2.0), std::log(x), 12, tol, &err);
  return LiValue{.x = x, .value = value, .method = LiMethod::quadrature, .error_estimate = err};
}

// sum_{n=1}^{terms} (n-1)! x / ln^n x, cut by default at floor(ln x) terms.
inline LiValue li_asymptotic(double x, std::optional<unsigned> terms = std::nullopt) {
  if (!(x >= std::exp(2.0))) throw domain_error("li_asymptotic requires x >= e^2");
  const double L = std::log(x);
  const unsigned n_terms = terms.value_or(static_cast<unsigned>(std::floor(L)));
  if (n_terms < 1) throw argument_error("li_asymptotic requires at least one term");
  double term = x / L;  // (n-1)! x / L^n at n = 1
  double sum = 0.0;
  for (unsigned n = 1; n <= n_terms; ++n) {
    sum += term;
    term *= static_cast<double>(n) / L;
  }
  return LiValue{.x = x, .value = sum, .method = LiMethod::asymptotic, .terms_used = n_terms};
}

// Li asymptotic series normalized by x/L: 1 + 1/L + 2!/L^2 + ... + N!/L^N.
inline InverseLogSeries li_series(std::size_t order) {
  InverseLogSeries s(order);
  BigInt f = 1;
  for (std::size_t n = 0; n <= order; ++n) {
    if (n > 0) f *= static_cast<unsigned>(n);
    s[n] = Rational(f);
  }
  return s;
}

// Gamma on z > 0 (libm tgamma, relative error well below 1e-10).
inline double gamma_real(double z) {
  if (!(z > 0.0)) throw domain_error("gamma_real requires z > 0");
  return std::tgamma(z);
}

}  // namespace pgap
