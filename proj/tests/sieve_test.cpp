#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pgap/sieve.hpp"

namespace pgap {
namespace {

std::vector<std::uint64_t> collect(SieveConfig config) {
  std::vector<std::uint64_t> out;
  enumerate_primes(config, [&](std::uint64_t p) { out.push_back(p); });
  return out;
}

TEST(Sieve, SmallLimits) {
  EXPECT_EQ(collect({.limit = 20}), (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19}));
  EXPECT_EQ(collect({.limit = 2}), (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(collect({.limit = 3}), (std::vector<std::uint64_t>{2, 3}));
}

TEST(Sieve, LastPrimeBelowMillion) {
  const auto primes = collect({.limit = 1'000'000});
  ASSERT_FALSE(primes.empty());
  EXPECT_EQ(primes.back(), 999983u);
  EXPECT_TRUE(oracle::is_prime_trial(primes.back()));
  for (std::uint64_t n = 999984; n <= 1'000'000; ++n) EXPECT_FALSE(oracle::is_prime_trial(n));
}

TEST(Sieve, MatchesSimpleSieveToMillion) {
  EXPECT_EQ(collect({.limit = 1'000'000}), oracle::primes_simple_sieve(1'000'000));
}

TEST(Sieve, SegmentSizeDoesNotChangeOutput) {
  const std::uint64_t limit = 3'000'017;
  const auto reference = collect({.limit = limit, .segment_bits = 1u << 10});
  for (std::uint64_t bits : {1u << 11, 1u << 13, 1u << 16, 1u << 20})
    EXPECT_EQ(collect({.limit = limit, .segment_bits = bits}), reference) << "segment_bits=" << bits;
}

TEST(Sieve, ParallelSegmentsKeepOrder) {
  const std::uint64_t limit = 2'000'003;
  const auto reference = collect({.limit = limit, .segment_bits = 1u << 12});
  for (unsigned threads : {2u, 3u, 8u})
    EXPECT_EQ(collect({.limit = limit, .segment_bits = 1u << 12, .threads = threads}), reference);
  EXPECT_EQ(prime_count(limit, 4), reference.size());
}

TEST(Sieve, ConfigValidation) {
  EXPECT_THROW(collect({.limit = 1}), domain_error);
  EXPECT_THROW(collect({.limit = 0}), domain_error);
  EXPECT_THROW(collect({.limit = 100, .segment_bits = 512}), argument_error);
  EXPECT_THROW(collect({.limit = 100, .segment_bits = 3000}), argument_error);
  EXPECT_THROW(collect({.limit = (std::uint64_t{1} << 40) + 1}), argument_error);
}

TEST(PrimeCount, KnownValues) {
  EXPECT_EQ(prime_count(0), 0u);
  EXPECT_EQ(prime_count(1), 0u);
  EXPECT_EQ(prime_count(2), 1u);
  EXPECT_EQ(prime_count(100), 25u);
  EXPECT_EQ(prime_count(100), oracle::primes_trial(100).size());
  EXPECT_EQ(prime_count(1'000'000), 78498u);
  EXPECT_EQ(prime_count(1'000'000), oracle::primes_simple_sieve(1'000'000).size());
}

TEST(PrimeCount, AgreesWithTrialDivisionTo1e5) {
  const auto primes = oracle::primes_trial(100'000);
  std::uint64_t expected = 0;
  std::uint64_t previous = 0;
  for (std::uint64_t n = 0; n <= 100'000; ++n) {
    if (expected < primes.size() && primes[expected] == n) ++expected;
    const std::uint64_t c = prime_count(n);
    ASSERT_EQ(c, expected) << "n=" << n;
    ASSERT_GE(c, previous);
    previous = c;
  }
}

TEST(PrimeCount, StepsExactlyAtPrimes) {
  for (std::uint64_t p = 2; p < 3000; ++p) {
    const bool stepped = prime_count(p) == prime_count(p - 1) + 1;
    EXPECT_EQ(stepped, oracle::is_prime_trial(p)) << p;
  }
}

TEST(Sieve, EveryEmittedValueIsPrimeAndIncreasing) {
  const auto primes = collect({.limit = 200'000, .segment_bits = 1u << 10});
  for (std::size_t i = 1; i < primes.size(); ++i) ASSERT_LT(primes[i - 1], primes[i]);
  for (std::size_t i = 0; i < primes.size(); i += 37) EXPECT_TRUE(oracle::is_prime_trial(primes[i]));
}

}  // namespace
}  // namespace pgap
