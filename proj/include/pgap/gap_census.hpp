#pragma once

// Gap histogram tau_d(x): number of consecutive prime pairs (p_n, p_{n+1})
// with p_{n+1} <= x and p_{n+1} - p_n = d.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pgap/error.hpp"
#include "pgap/sieve.hpp"

namespace pgap {

class GapCensus {
 public:
  GapCensus() = default;

  // Builds a census from (d, count) pairs. Zero counts are dropped. Odd d >= 3
  // and a count above one for d = 1 are rejected.
  GapCensus(std::uint64_t x, std::uint64_t pi_x, std::uint64_t p_last,
            const std::map<std::uint64_t, std::uint64_t>& counts)
      : x_(x), pi_x_(pi_x), p_last_(p_last) {
    for (const auto& [d, c] : counts) add(d, c);
  }

  std::uint64_t x() const noexcept { return x_; }
  std::uint64_t pi_x() const noexcept { return pi_x_; }
  std::uint64_t p_last() const noexcept { return p_last_; }

  // tau_d(x); zero for gaps never observed.
  std::uint64_t count(std::uint64_t d) const noexcept {
    if (d == 1) return ones_;
    if (d == 0 || d % 2 != 0) return 0;
    const std::uint64_t slot = d / 2 - 1;
    return slot < even_.size() ? even_[slot] : 0;
  }

  std::uint64_t max_gap() const noexcept {
    return even_.empty() ? (ones_ > 0 ? 1 : 0) : 2 * even_.size();
  }

  // Visits nonzero (d, tau_d) pairs in ascending d.
  template <class F>
  void for_each(F&& f) const {
    if (ones_ > 0) f(std::uint64_t{1}, ones_);
    for (std::size_t i = 0; i < even_.size(); ++i)
      if (even_[i] > 0) f(2 * (static_cast<std::uint64_t>(i) + 1), even_[i]);
  }

  std::uint64_t total_pairs() const noexcept {
    std::uint64_t s = 0;
    for_each([&](std::uint64_t, std::uint64_t c) { s += c; });
    return s;
  }

  std::uint64_t total_span() const noexcept {
    std::uint64_t s = 0;
    for_each([&](std::uint64_t d, std::uint64_t c) { s += d * c; });
    return s;
  }

  // sum tau_d = pi(x) - 1 and sum d*tau_d = p_last - 2.
  bool conserves() const noexcept {
    if (pi_x_ == 0) return total_pairs() == 0;
    return total_pairs() == pi_x_ - 1 && total_span() + 2 == p_last_;
  }

  friend bool operator==(const GapCensus& a, const GapCensus& b) noexcept {
    return a.x_ == b.x_ && a.pi_x_ == b.pi_x_ && a.p_last_ == b.p_last_ && a.ones_ == b.ones_ &&
           a.even_ == b.even_;
  }

 private:
  friend class CensusBuilder;

  void add(std::uint64_t d, std::uint64_t c) {
    if (c == 0) return;
    if (d == 0) throw validation_error("gap 0 is not a prime gap");
    if (d == 1) {
      if (ones_ + c > 1) throw validation_error("gap 1 can occur at most once (the pair 2, 3)");
      ones_ += c;
      return;
    }
    if (d % 2 != 0) throw validation_error("odd gap " + std::to_string(d) + " between odd primes");
    const std::uint64_t slot = d / 2 - 1;
    if (slot >= even_.size()) even_.resize(slot + 1, 0);
    even_[slot] += c;
  }

  std::uint64_t x_ = 0;
  std::uint64_t pi_x_ = 0;
  std::uint64_t p_last_ = 0;
  std::uint64_t ones_ = 0;
  std::vector<std::uint64_t> even_;  // even_[i] = tau_{2(i+1)}
};

// tau_d(x) for d >= 1; 0 when absent.
inline std::uint64_t census_lookup(const GapCensus& census, std::uint64_t d) {
  return census.count(d);
}

// Censuses at increasing thresholds (normally x_j = 2^j).
class CensusSeries {
 public:
  CensusSeries() = default;
  explicit CensusSeries(std::vector<GapCensus> checkpoints) : checkpoints_(std::move(checkpoints)) {
    for (std::size_t i = 1; i < checkpoints_.size(); ++i)
      if (checkpoints_[i].x() <= checkpoints_[i - 1].x())
        throw argument_error("census thresholds must be strictly increasing");
  }

  const std::vector<GapCensus>& checkpoints() const noexcept { return checkpoints_; }
  std::size_t size() const noexcept { return checkpoints_.size(); }
  bool empty() const noexcept { return checkpoints_.empty(); }
  const GapCensus& operator[](std::size_t i) const { return checkpoints_[i]; }
  auto begin() const noexcept { return checkpoints_.begin(); }
  auto end() const noexcept { return checkpoints_.end(); }

  // Checkpoints with lo <= x <= hi.
  CensusSeries window(std::uint64_t lo, std::uint64_t hi) const {
    std::vector<GapCensus> out;
    for (const auto& c : checkpoints_)
      if (c.x() >= lo && c.x() <= hi) out.push_back(c);
    return CensusSeries(std::move(out));
  }

 private:
  std::vector<GapCensus> checkpoints_;
};

// Feeds on an ascending prime stream and snapshots the histogram at each
// threshold. A gap is attributed to x when its larger prime is <= x.
class CensusBuilder {
 public:
  explicit CensusBuilder(std::vector<std::uint64_t> thresholds) : thresholds_(std::move(thresholds)) {}

  void push(std::uint64_t p) {
    while (next_ < thresholds_.size() && p > thresholds_[next_]) snapshot();
    if (pi_ > 0) current_.add(p - last_, 1);
    last_ = p;
    ++pi_;
  }

  CensusSeries finish() {
    while (next_ < thresholds_.size()) snapshot();
    return CensusSeries(std::move(out_));
  }

 private:
  void snapshot() {
    GapCensus c = current_;
    c.x_ = thresholds_[next_++];
    c.pi_x_ = pi_;
    c.p_last_ = last_;
    out_.push_back(std::move(c));
  }

  std::vector<std::uint64_t> thresholds_;
  std::size_t next_ = 0;
  std::vector<GapCensus> out_;
  GapCensus current_;
  std::uint64_t last_ = 0;
  std::uint64_t pi_ = 0;
};

// One census per exponent j at x = 2^j from a single sieve pass.
inline CensusSeries build_census(std::uint64_t limit, const std::vector<unsigned>& exponents,
                                 unsigned threads = 1) {
  if (exponents.empty()) throw argument_error("checkpoint exponent list is empty");
  std::vector<std::uint64_t> thresholds;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 1 || exponents[i] > 40) throw argument_error("checkpoint exponent out of range 1..40");
    if (i > 0 && exponents[i] <= exponents[i - 1])
      throw argument_error("checkpoint exponents must be strictly ascending");
    thresholds.push_back(std::uint64_t{1} << exponents[i]);
  }
  if (limit > kSieveLimitCap) throw argument_error("sieve limit exceeds 2^40 cap");
  if (thresholds.back() > limit) throw argument_error("largest checkpoint exceeds the sieve limit");

  CensusBuilder builder(thresholds);
  enumerate_primes(SieveConfig{.limit = thresholds.back(), .threads = threads},
                   [&](std::uint64_t p) { builder.push(p); });
  return builder.finish();
}

// ---------------------------------------------------------------------------
// Text format
//
//   # gap-census v1
//   # x=<integer> pi=<integer> p_last=<integer>
//   <d>\t<count>           (ascending d)

inline void export_census(const GapCensus& census, std::ostream& out) {
  out << "# gap-census v1\n";
  out << "# x=" << census.x() << " pi=" << census.pi_x() << " p_last=" << census.p_last() << '\n';
  census.for_each([&](std::uint64_t d, std::uint64_t c) { out << d << '\t' << c << '\n'; });
}

inline void export_census(const GapCensus& census, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path.string() + " for writing");
  export_census(census, out);
  out.flush();
  if (!out) throw io_error("write failed: " + path.string());
}

struct CensusMetadata {
  std::optional<std::uint64_t> x;
  std::optional<std::uint64_t> pi_x;
  std::optional<std::uint64_t> p_last;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::optional<std::uint64_t> parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

inline void merge_field(std::optional<std::uint64_t>& field, std::uint64_t header_value,
                        const char* name) {
  if (field && *field != header_value)
    throw validation_error(std::string("header ") + name + "=" + std::to_string(header_value) +
                           " conflicts with supplied " + std::to_string(*field));
  field = header_value;
}

}  // namespace detail

// Reads a census file with the v1 header, or a headerless whitespace
// separated "d count" file. Metadata missing from the file must be supplied;
// p_last may be omitted and is then reconstructed as 2 + sum d*tau_d.
inline GapCensus import_census(std::istream& in, CensusMetadata meta = {}) {
  std::map<std::uint64_t, std::uint64_t> counts;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = detail::trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const std::string_view body = detail::trim(t.substr(1));
      if (body.starts_with("gap-census")) {
        if (body != "gap-census v1") throw parse_error(lineno, "unsupported format version: " + std::string(body));
        header_seen = true;
        continue;
      }
      if (header_seen && body.starts_with("x=")) {
        std::istringstream fields{std::string(body)};
        std::string kv;
        while (fields >> kv) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos) throw parse_error(lineno, "malformed metadata field '" + kv + "'");
          const auto value = detail::parse_u64(std::string_view(kv).substr(eq + 1));
          if (!value) throw parse_error(lineno, "malformed metadata value '" + kv + "'");
          const std::string key = kv.substr(0, eq);
          if (key == "x") detail::merge_field(meta.x, *value, "x");
          else if (key == "pi") detail::merge_field(meta.pi_x, *value, "pi");
          else if (key == "p_last") detail::merge_field(meta.p_last, *value, "p_last");
          else throw parse_error(lineno, "unknown metadata key '" + key + "'");
        }
      }
      continue;
    }
    std::istringstream fields{std::string(t)};
    std::string a, b, extra;
    fields >> a >> b;
    const auto d = detail::parse_u64(a);
    const auto c = detail::parse_u64(b);
    if (!d || !c || (fields >> extra)) throw parse_error(lineno, "expected '<d> <count>', got '" + std::string(t) + "'");
    if (counts.contains(*d)) throw parse_error(lineno, "duplicate gap " + a);
    counts[*d] = *c;
  }
  if (in.bad()) throw io_error("read failure");
  if (!meta.x || !meta.pi_x) throw validation_error("census metadata missing: x and pi must be supplied");
  if (!meta.p_last) {
    std::uint64_t span = 0;
    for (const auto& [d, c] : counts) span += d * c;
    meta.p_last = *meta.pi_x == 0 ? 0 : 2 + span;
  }
  if (*meta.p_last > *meta.x) throw validation_error("p_last exceeds x");
  return GapCensus(*meta.x, *meta.pi_x, *meta.p_last, counts);
}

inline GapCensus import_census(const std::filesystem::path& path, CensusMetadata meta = {}) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path.string());
  return import_census(in, meta);
}

}  // namespace pgap
