#pragma once

// Twin prime constant, the per-gap singular factor and the tau_d(x) model.

#include <cmath>
#include <cstdint>
#include <vector>

#include "pgap/error.hpp"
#include "pgap/series.hpp"
#include "pgap/sieve.hpp"

namespace pgap {

// C2 to the digits usually quoted.
inline constexpr double kTwinPrimeConstant = 1.320323631693739;

struct TwinConstant {
  double value = 0.0;
  std::uint64_t prime_limit = 0;
  // Upper bound on value(partial) - C2. The omitted factors multiply to
  // at least 1 - sum_{p > P} 1/(p-1)^2 >= 1 - 1/(P - 1) (integral bound).
  double tail_bound = 0.0;
};

// 2 * prod_{2 < p <= prime_limit} (1 - 1/(p-1)^2), accumulated in ascending
// prime order in long double.
inline TwinConstant twin_prime_constant(std::uint64_t prime_limit) {
  if (prime_limit < 3) throw domain_error("twin_prime_constant requires prime_limit >= 3");
  long double prod = 2.0L;
  enumerate_primes(SieveConfig{.limit = prime_limit}, [&](std::uint64_t p) {
    if (p == 2) return;
    const long double a = static_cast<long double>(p - 1);
    prod *= 1.0L - 1.0L / (a * a);
  });
  const double value = static_cast<double>(prod);
  return TwinConstant{.value = value,
                      .prime_limit = prime_limit,
                      .tail_bound = value / static_cast<double>(prime_limit - 1)};
}

// prod_{p | d, p > 2} (p-1)/(p-2); empty product is 1.
inline Rational singular_factor(std::uint64_t d) {
  if (d == 0) throw argument_error("singular_factor requires d >= 1");
  while (d % 2 == 0) d /= 2;
  BigInt num = 1, den = 1;
  for (std::uint64_t p = 3; p * p <= d; p += 2) {
    if (d % p != 0) continue;
    while (d % p == 0) d /= p;
    num *= p - 1;
    den *= p - 2;
  }
  if (d > 1) {
    num *= d - 1;
    den *= d - 2;
  }
  return Rational(num, den);
}

struct MeanValueCheck {
  double sum = 0.0;        // sum_{k <= n} singular_factor(k)
  double predicted = 0.0;  // 2n / C2
  double relative_deviation() const { return std::abs(sum - predicted) / predicted; }
};

// Partial sums of the singular factor against its mean value 2/C2. Uses a
// smallest-prime-factor table rather than trial division per k.
inline MeanValueCheck bd_partial_sum(std::uint64_t n) {
  if (n < 1) throw argument_error("bd_partial_sum requires n >= 1");
  std::vector<std::uint32_t> spf(n + 1, 0);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= n; j += i)
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  }
  long double sum = 0.0L;
  for (std::uint64_t k = 1; k <= n; ++k) {
    long double f = 1.0L;
    std::uint64_t m = k;
    while (m > 1) {
      const std::uint64_t p = spf[m];
      while (m % p == 0) m /= p;
      if (p > 2) f *= static_cast<long double>(p - 1) / static_cast<long double>(p - 2);
    }
    sum += f;
  }
  return MeanValueCheck{.sum = static_cast<double>(sum),
                        .predicted = 2.0 * static_cast<double>(n) / kTwinPrimeConstant};
}

// Expected tau_d(x) given pi(x):
//   d in {2, 4}: C2 pi^2/x
//   d >= 6:      C2 S(d) (pi^2/x) (1 - 2 pi/x)^{d/2 - 1}
inline double tau_model(std::uint64_t d, double x, double pi_x) {
  if (d < 2 || d % 2 != 0) throw domain_error("tau_model requires an even gap d >= 2");
  if (!(pi_x > 0.0) || !(2.0 * pi_x < x)) throw model_domain_error("tau_model requires 0 < pi(x) < x/2");
  const double base = kTwinPrimeConstant * pi_x * pi_x / x;
  if (d <= 4) return base;
  const double eps = 2.0 * pi_x / x;
  return base * static_cast<double>(singular_factor(d)) *
         std::pow(1.0 - eps, static_cast<double>(d / 2 - 1));
}

}  // namespace pgap
