#pragma once

// Truncated formal series c_0 + c_1/L + ... + c_N/L^N in the variable 1/L
// (L = log x) with exact rational coefficients.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pgap/error.hpp"

namespace pgap {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact value of a finite double as a rational (doubles are dyadic).
inline Rational to_rational(double v) {
  if (!std::isfinite(v)) throw domain_error("non-finite value has no rational form");
  if (v == 0.0) return Rational(0);
  int exp = 0;
  const double mant = std::frexp(v, &exp);  // v = mant * 2^exp, 0.5 <= |mant| < 1
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  BigInt num = scaled;
  BigInt den = 1;
  if (exp >= 0) num <<= exp;
  else den <<= -exp;
  return Rational(num, den);
}

inline std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

class InverseLogSeries {
 public:
  // Zero series truncated at `order`.
  explicit InverseLogSeries(std::size_t order = 0) : c_(order + 1, Rational(0)) {}
  explicit InverseLogSeries(std::vector<Rational> coefficients) : c_(std::move(coefficients)) {
    if (c_.empty()) throw argument_error("series needs at least one coefficient");
  }
  InverseLogSeries(std::initializer_list<Rational> coefficients)
      : InverseLogSeries(std::vector<Rational>(coefficients)) {}

  static InverseLogSeries one(std::size_t order) {
    InverseLogSeries s(order);
    s.c_[0] = 1;
    return s;
  }

  std::size_t order() const noexcept { return c_.size() - 1; }
  const Rational& operator[](std::size_t n) const { return c_.at(n); }
  Rational& operator[](std::size_t n) { return c_.at(n); }
  const std::vector<Rational>& coefficients() const noexcept { return c_; }

  // Same series at a different truncation order (zero padded).
  InverseLogSeries truncated(std::size_t order) const {
    std::vector<Rational> c(order + 1, Rational(0));
    for (std::size_t n = 0; n <= std::min(order, this->order()); ++n) c[n] = c_[n];
    return InverseLogSeries(std::move(c));
  }

  // Multiplication by L^{-j}.
  InverseLogSeries shifted(std::size_t j) const {
    InverseLogSeries s(order());
    for (std::size_t n = j; n <= order(); ++n) s.c_[n] = c_[n - j];
    return s;
  }

  InverseLogSeries& operator+=(const InverseLogSeries& o) {
    require_same_order(o);
    for (std::size_t n = 0; n < c_.size(); ++n) c_[n] += o.c_[n];
    return *this;
  }
  InverseLogSeries& operator-=(const InverseLogSeries& o) {
    require_same_order(o);
    for (std::size_t n = 0; n < c_.size(); ++n) c_[n] -= o.c_[n];
    return *this;
  }
  InverseLogSeries& operator*=(const Rational& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend InverseLogSeries operator+(InverseLogSeries a, const InverseLogSeries& b) { return a += b; }
  friend InverseLogSeries operator-(InverseLogSeries a, const InverseLogSeries& b) { return a -= b; }
  friend InverseLogSeries operator*(InverseLogSeries a, const Rational& s) { return a *= s; }
  friend InverseLogSeries operator*(const Rational& s, InverseLogSeries a) { return a *= s; }

  friend bool operator==(const InverseLogSeries&, const InverseLogSeries&) = default;

  // Sum of c_n / L^n at a numeric L.
  double evaluate(double L) const {
    double acc = 0.0;
    for (std::size_t n = c_.size(); n-- > 0;) acc = acc / L + static_cast<double>(c_[n]);
    return acc;
  }

 private:
  void require_same_order(const InverseLogSeries& o) const {
    if (o.order() != order()) throw argument_error("series truncation orders differ");
  }

  std::vector<Rational> c_;
};

// Truncated Cauchy product.
inline InverseLogSeries series_multiply(const InverseLogSeries& a, const InverseLogSeries& b) {
  if (a.order() != b.order()) throw argument_error("series truncation orders differ");
  const std::size_t N = a.order();
  InverseLogSeries out(N);
  for (std::size_t i = 0; i <= N; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= N; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline InverseLogSeries operator*(const InverseLogSeries& a, const InverseLogSeries& b) {
  return series_multiply(a, b);
}

// 1/a for a with c_0 = 1, by forward substitution.
inline InverseLogSeries series_reciprocal(const InverseLogSeries& a) {
  if (a[0] != 1) throw domain_error("series reciprocal requires c_0 = 1");
  const std::size_t N = a.order();
  InverseLogSeries b(N);
  b[0] = 1;
  for (std::size_t n = 1; n <= N; ++n) {
    Rational s = 0;
    for (std::size_t j = 1; j <= n; ++j) s += a[j] * b[n - j];
    b[n] = -s;
  }
  return b;
}

// a^alpha for c_0 = 1: with a = 1 + u, sum_j binom(alpha, j) u^j. Since u has
// no constant term, u^j vanishes past order N for j > N.
inline InverseLogSeries series_power(const InverseLogSeries& a, const Rational& alpha) {
  if (a[0] != 1) throw domain_error("series power requires c_0 = 1");
  const std::size_t N = a.order();
  InverseLogSeries u = a;
  u[0] = 0;
  InverseLogSeries out = InverseLogSeries::one(N);
  InverseLogSeries u_pow = InverseLogSeries::one(N);
  Rational binom = 1;
  for (std::size_t j = 1; j <= N; ++j) {
    binom *= (alpha - Rational(static_cast<long long>(j) - 1)) / Rational(static_cast<long long>(j));
    u_pow = u_pow * u;
    out += u_pow * binom;
  }
  return out;
}

inline InverseLogSeries series_power(const InverseLogSeries& a, double alpha) {
  return series_power(a, to_rational(alpha));
}

}  // namespace pgap
