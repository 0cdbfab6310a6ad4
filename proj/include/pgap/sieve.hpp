#pragma once

// Odd-only, bit-packed segmented sieve of Eratosthenes.
//
// Bit i of a segment starting at odd `low` stands for the integer low + 2*i.
// The prime 2 is emitted separately. Base primes up to sqrt(limit) come from
// a plain sieve computed once and are shared by every segment.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <new>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "pgap/error.hpp"

namespace pgap {

// Largest supported sieve limit.
inline constexpr std::uint64_t kSieveLimitCap = std::uint64_t{1} << 40;
inline constexpr std::uint64_t kDefaultSegmentBits = std::uint64_t{1} << 18;

struct SieveConfig {
  std::uint64_t limit = 2;  // inclusive
  std::uint64_t segment_bits = kDefaultSegmentBits;
  unsigned threads = 1;

  void validate() const {
    if (limit < 2) throw domain_error("sieve limit must be >= 2");
    if (limit > kSieveLimitCap) throw argument_error("sieve limit exceeds 2^40 cap");
    if (segment_bits < (std::uint64_t{1} << 10) || !std::has_single_bit(segment_bits))
      throw argument_error("segment_bits must be a power of two >= 1024");
    if (threads == 0) throw argument_error("threads must be >= 1");
  }
};

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Odd primes <= n by a plain (unsegmented) sieve.
inline std::vector<std::uint32_t> odd_base_primes(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  if (n < 3) return out;
  std::vector<bool> composite(n / 2 + 1, false);  // index i -> 2i+1
  for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= n; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    for (std::uint64_t j = p * p / 2; j <= n / 2; j += p) composite[j] = true;
  }
  for (std::uint64_t i = 1; 2 * i + 1 <= n; ++i)
    if (!composite[i]) out.push_back(static_cast<std::uint32_t>(2 * i + 1));
  return out;
}

namespace detail {

// One sieved window of odd numbers [low, low + 2*(bits-1)].
struct Segment {
  std::uint64_t low = 1;
  std::uint64_t bits = 0;
  std::vector<std::uint64_t> words;
};

inline void sieve_segment(Segment& seg, std::span<const std::uint32_t> base) {
  const std::uint64_t nwords = (seg.bits + 63) / 64;
  seg.words.assign(nwords, ~std::uint64_t{0});
  if (seg.bits % 64 != 0) seg.words.back() = (std::uint64_t{1} << (seg.bits % 64)) - 1;
  const std::uint64_t high = seg.low + 2 * (seg.bits - 1);
  std::uint64_t* w = seg.words.data();
  for (const std::uint64_t p : base) {
    const std::uint64_t sq = p * p;
    if (sq > high) break;
    std::uint64_t m = sq;
    if (m < seg.low) {
      m = (seg.low + p - 1) / p * p;
      if ((m & 1) == 0) m += p;
    }
    for (std::uint64_t i = (m - seg.low) / 2; i < seg.bits; i += p) w[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  if (seg.low == 1) w[0] &= ~std::uint64_t{1};  // 1 is not prime
}

// Calls visit(const Segment&) for every segment in ascending order. With
// threads > 1 batches of segments are sieved concurrently and released in
// order, so the visitor always observes the same sequence.
template <class Visit>
void for_each_segment(const SieveConfig& config, Visit&& visit) {
  const std::uint64_t limit = config.limit;
  if (limit < 3) return;
  const auto base = odd_base_primes(isqrt(limit));
  const std::uint64_t span_numbers = 2 * config.segment_bits;

  auto place = [&](Segment& s, std::uint64_t low) {
    s.low = low;
    s.bits = std::min(config.segment_bits, (limit - low) / 2 + 1);
  };

  try {
    if (config.threads <= 1) {
      Segment seg;
      for (std::uint64_t low = 1; low <= limit; low += span_numbers) {
        place(seg, low);
        sieve_segment(seg, base);
        visit(std::as_const(seg));
      }
      return;
    }
    std::vector<Segment> batch(config.threads);
    for (std::uint64_t low = 1; low <= limit;) {
      std::size_t used = 0;
      for (; used < batch.size() && low <= limit; ++used, low += span_numbers) {
        place(batch[used], low);
      }
      std::vector<std::jthread> workers;
      workers.reserve(used);
      for (std::size_t i = 0; i < used; ++i)
        workers.emplace_back([&batch, &base, i] { sieve_segment(batch[i], base); });
      workers.clear();  // join
      for (std::size_t i = 0; i < used; ++i) visit(std::as_const(batch[i]));
    }
  } catch (const std::bad_alloc&) {
    throw resource_error("failed to allocate sieve segment");
  }
}

}  // namespace detail

// Invokes consumer(p) once per prime p <= config.limit, ascending.
template <class Consumer>
void enumerate_primes(const SieveConfig& config, Consumer&& consumer) {
  config.validate();
  consumer(std::uint64_t{2});
  detail::for_each_segment(config, [&](const detail::Segment& seg) {
    for (std::size_t wi = 0; wi < seg.words.size(); ++wi) {
      std::uint64_t word = seg.words[wi];
      const std::uint64_t base = seg.low + 128 * wi;
      while (word != 0) {
        const int bit = std::countr_zero(word);
        consumer(base + 2 * static_cast<std::uint64_t>(bit));
        word &= word - 1;
      }
    }
  });
}

// pi(limit). Returns 0 for limit < 2.
inline std::uint64_t prime_count(std::uint64_t limit, unsigned threads = 1) {
  if (limit < 2) return 0;
  SieveConfig config{.limit = limit, .threads = threads};
  config.validate();
  std::uint64_t count = 1;  // the prime 2
  detail::for_each_segment(config, [&](const detail::Segment& seg) {
    for (const std::uint64_t w : seg.words) count += static_cast<std::uint64_t>(std::popcount(w));
  });
  return count;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  enumerate_primes(SieveConfig{.limit = limit}, [&](std::uint64_t p) { out.push_back(p); });
  return out;
}

}  // namespace pgap
