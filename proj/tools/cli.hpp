#pragma once

// pgap command-line front end. run_cli() is separate from main() so the
// test suite can drive it in-process.
//
// Exit codes: 0 success, 2 usage, 3 I/O, 4 domain/model error.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pgap/pgap.hpp"

namespace pgap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitDomain = 4;

inline constexpr const char* kDataDirEnv = "PGAP_DATA_DIR";

class usage_error : public error {
 public:
  using error::error;
  const char* kind() const noexcept override { return "usage"; }
};

// "12345", "2^26", "1e7".
inline std::uint64_t parse_count(const std::string& text) {
  static const std::regex pow_re(R"(^\s*(\d+)\^(\d+)\s*$)");
  static const std::regex int_re(R"(^\s*\d+\s*$)");
  static const std::regex sci_re(R"(^\s*(\d+(?:\.\d+)?)[eE](\d+)\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, pow_re)) {
    const std::uint64_t b = std::stoull(m[1]);
    const unsigned e = static_cast<unsigned>(std::stoul(m[2]));
    std::uint64_t v = 1;
    for (unsigned i = 0; i < e; ++i) {
      if (v > (std::uint64_t{1} << 62) / std::max<std::uint64_t>(b, 1)) throw usage_error("value too large: " + text);
      v *= b;
    }
    return v;
  }
  if (std::regex_match(text, int_re)) return std::stoull(text);
  if (std::regex_match(text, m, sci_re)) {
    const long double v = std::stold(m[1]) * std::pow(10.0L, std::stoi(m[2]));
    if (v != std::floor(v) || v > 4.0e18L) throw usage_error("not an integer count: " + text);
    return static_cast<std::uint64_t>(v);
  }
  throw usage_error("cannot parse count '" + text + "'");
}

// Checkpoint mini-language: pow2:A..B
inline std::vector<unsigned> parse_checkpoints(const std::string& spec) {
  static const std::regex re(R"(^pow2:(\d+)\.\.(\d+)$)");
  std::smatch m;
  if (!std::regex_match(spec, m, re)) throw usage_error("checkpoint spec must be pow2:A..B, got '" + spec + "'");
  const unsigned a = static_cast<unsigned>(std::stoul(m[1]));
  const unsigned b = static_cast<unsigned>(std::stoul(m[2]));
  if (a > b || a < 1 || b > 40) throw usage_error("checkpoint range must satisfy 1 <= A <= B <= 40");
  std::vector<unsigned> out;
  for (unsigned j = a; j <= b; ++j) out.push_back(j);
  return out;
}

inline std::filesystem::path census_file_name(unsigned exponent) {
  return "census_pow2_" + std::to_string(exponent) + ".tsv";
}

// Loads census files (or every *.tsv in a directory), sorted by x.
inline CensusSeries load_series(const std::vector<std::string>& paths) {
  std::vector<GapCensus> all;
  for (const auto& p : paths) {
    const std::filesystem::path path(p);
    if (std::filesystem::is_directory(path)) {
      std::vector<std::filesystem::path> files;
      for (const auto& entry : std::filesystem::directory_iterator(path))
        if (entry.is_regular_file() && entry.path().extension() == ".tsv") files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) all.push_back(import_census(f));
    } else if (std::filesystem::exists(path)) {
      all.push_back(import_census(path));
    } else {
      throw io_error("census not found: " + p);
    }
  }
  if (all.empty()) throw io_error("no census files found");
  std::sort(all.begin(), all.end(), [](const GapCensus& a, const GapCensus& b) { return a.x() < b.x(); });
  return CensusSeries(std::move(all));
}

inline std::vector<std::string> default_data_paths(const std::vector<std::string>& given, const char* flag) {
  if (!given.empty()) return given;
  if (const char* env = std::getenv(kDataDirEnv); env != nullptr && *env != '\0') return {env};
  throw usage_error(std::string(flag) + " is required (or set " + kDataDirEnv + ")");
}

inline CensusSeries apply_window(const CensusSeries& series, const std::string& window) {
  if (window.empty()) return series;
  const auto exps = parse_checkpoints(window);
  return series.window(std::uint64_t{1} << exps.front(), std::uint64_t{1} << exps.back());
}

inline std::string format_k(double k) {
  std::string buf(32, '\0');
  buf.resize(static_cast<std::size_t>(std::snprintf(buf.data(), buf.size(), "%g", k)));
  return buf;
}

struct Options {
  // census
  std::string limit;
  std::string checkpoints;
  std::string out_dir;
  unsigned threads = 1;
  // moments / fit / dkn
  std::vector<std::string> census_paths;
  std::vector<double> ks;
  std::vector<std::string> predictors;
  std::string format = "tsv";
  int digits = 4;
  std::string window;
  unsigned order = 2;
  double k = 2.0;
  std::string predictor = "hb";
  // expand
  std::string variant = "pnt";
  // constants
  bool c2 = false;
  std::string prime_limit = "1e7";
  std::string bd_n;
};

inline void cmd_census(const Options& o, std::ostream& out) {
  std::string dir = o.out_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv(kDataDirEnv); env != nullptr && *env != '\0') dir = env;
    else throw usage_error(std::string("--out is required (or set ") + kDataDirEnv + ")");
  }
  const std::uint64_t limit = parse_count(o.limit);
  const auto exponents = parse_checkpoints(o.checkpoints);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw io_error("cannot create output directory " + dir);
  const CensusSeries series = build_census(limit, exponents, o.threads);
  out << "x\tpi\tp_last\tfile\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto path = std::filesystem::path(dir) / census_file_name(exponents[i]);
    export_census(series[i], path);
    out << series[i].x() << '\t' << series[i].pi_x() << '\t' << series[i].p_last() << '\t' << path.string() << '\n';
  }
}

inline void cmd_moments(const Options& o, std::ostream& out) {
  if (o.ks.empty()) throw usage_error("--k needs at least one order");
  if (o.format != "tsv" && o.format != "csv") throw usage_error("--format must be tsv or csv");
  if (o.digits < 0 || o.digits > 15) throw usage_error("--digits must be in 0..15");
  const char sep = o.format == "csv" ? ',' : '\t';
  std::vector<Predictor> preds;
  for (const auto& p : o.predictors) preds.push_back(parse_predictor(p));
  if (preds.empty()) preds.assign(kTablePredictors.begin(), kTablePredictors.end());
  const CensusSeries series = apply_window(load_series(default_data_paths(o.census_paths, "--census")), o.window);

  out << "x" << sep << "pi" << sep << "k" << sep << "M_k";
  for (const Predictor p : preds) out << sep << "pred_" << predictor_name(p);
  for (const Predictor p : preds) out << sep << "ratio_" << predictor_name(p);
  out << '\n';
  for (const double k : o.ks) {
    for (const auto& census : series) {
      const MomentReport r = moment_report(census, k, preds);
      out << r.x << sep << r.pi_x << sep << format_k(k) << sep
          << (r.exact_integer ? to_string(*r.exact_integer) : format_sci(r.exact));
      for (const Predictor p : preds) out << sep << format_sci(r.predictions.at(p));
      for (const Predictor p : preds) out << sep << format_fixed(r.ratios.at(p), o.digits);
      out << '\n';
    }
  }
}

inline void cmd_expand(const Options& o, std::ostream& out) {
  const Predictor variant = parse_predictor(o.variant);
  const InverseLogSeries s = expansion_coefficients(variant, o.k, o.order);
  out << "# " << predictor_name(variant) << " k=" << format_k(o.k) << ": k! x log^(k-1) x * sum c_n / log^n x\n";
  out << "n\tc_n\tdecimal\n";
  for (std::size_t n = 0; n <= s.order(); ++n)
    out << n << '\t' << to_string(s[n]) << '\t' << format_sci(static_cast<double>(s[n]), 12) << '\n';
}

inline void cmd_constants(const Options& o, std::ostream& out) {
  const bool want_c2 = o.c2 || o.bd_n.empty();
  if (want_c2) {
    const TwinConstant c = twin_prime_constant(parse_count(o.prime_limit));
    out << "C2\t" << format_fixed(c.value, 15) << "\tprime_limit=" << c.prime_limit
        << "\ttail_bound=" << format_sci(c.tail_bound, 3) << '\n';
  }
  if (!o.bd_n.empty()) {
    const auto n = parse_count(o.bd_n);
    const MeanValueCheck m = bd_partial_sum(n);
    out << "BD\tn=" << n << "\tsum=" << format_fixed(m.sum, 6) << "\tpredicted=" << format_fixed(m.predicted, 6)
        << "\trel_dev=" << format_sci(m.relative_deviation(), 3) << '\n';
  }
}

inline void cmd_fit(const Options& o, std::ostream& out) {
  const Predictor p = parse_predictor(o.predictor);
  if (o.k < 1 || o.k != std::floor(o.k)) throw usage_error("fit requires an integer --k >= 1");
  const CensusSeries series = apply_window(load_series(default_data_paths(o.census_paths, "--series")), o.window);
  const ErrorFit fit = fit_error_term(series, static_cast<unsigned>(o.k), p);
  out << "k\t" << fit.k << "\npredictor\t" << predictor_name(fit.predictor) << '\n';
  out << "A\t" << format_sci(fit.A, 6) << "\nalpha\t" << format_fixed(fit.alpha, 6) << '\n';
  out << "pointwise_A\t" << format_sci(fit.pointwise_A, 6) << "\t(at x=" << format_sci(fit.window.back(), 6) << ")\n";
  out << "rms_residual\t" << format_sci(fit.rms_residual, 3) << '\n';
  out << "x\tresidual\n";
  for (std::size_t i = 0; i < fit.window.size(); ++i)
    out << format_sci(fit.window[i], 6) << '\t' << format_sci(fit.residuals[i], 3) << '\n';
}

inline void cmd_dkn(const Options& o, std::ostream& out) {
  if (o.k < 1 || o.k != std::floor(o.k)) throw usage_error("dkn requires an integer --k >= 1");
  const CensusSeries series = apply_window(load_series(default_data_paths(o.census_paths, "--series")), o.window);
  const DknFit fit = fit_dkn(series, static_cast<unsigned>(o.k), o.order);
  out << "k\t" << fit.k << "\norder\t" << fit.order << '\n';
  for (std::size_t n = 0; n < fit.coefficients.size(); ++n)
    out << "d_" << fit.k << n << '\t' << format_sci(fit.coefficients[n], 8) << '\n';
  out << "condition\t" << format_sci(fit.condition_number, 3) << "\nrms_residual\t" << format_sci(fit.rms_residual, 3)
      << '\n';
}

inline int exit_code_for(const error& e) {
  if (dynamic_cast<const usage_error*>(&e) != nullptr || dynamic_cast<const argument_error*>(&e) != nullptr)
    return kExitUsage;
  if (dynamic_cast<const io_error*>(&e) != nullptr || dynamic_cast<const resource_error*>(&e) != nullptr)
    return kExitIo;
  return kExitDomain;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"prime gap census and moment predictors", "pgap"};
  app.require_subcommand(1);
  Options o;

  auto* census = app.add_subcommand("census", "sieve primes and write gap censuses at 2^j checkpoints");
  census->add_option("--limit", o.limit, "sieve limit (e.g. 2^30, 1e9)")->required();
  census->add_option("--checkpoints", o.checkpoints, "pow2:A..B")->required();
  census->add_option("--out", o.out_dir, "output directory");
  census->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1u, 256u));

  auto* moments = app.add_subcommand("moments", "exact moments against predictors");
  moments->add_option("--census", o.census_paths, "census files or directories");
  moments->add_option("--k", o.ks, "moment orders, comma separated")->required()->delimiter(',');
  moments->add_option("--predictors", o.predictors, "hb,closed,pnt,eulerian,gamma")->delimiter(',');
  moments->add_option("--format", o.format, "tsv or csv");
  moments->add_option("--digits", o.digits, "ratio decimals");
  moments->add_option("--window", o.window, "restrict to pow2:A..B");

  auto* expand = app.add_subcommand("expand", "1/log x expansion of a predictor");
  expand->add_option("--variant", o.variant, "closed or pnt");
  expand->add_option("--k", o.k, "moment order")->required();
  expand->add_option("--order", o.order, "highest power of 1/log x")->required();

  auto* constants = app.add_subcommand("constants", "twin prime constant and mean-value check");
  constants->add_flag("--c2", o.c2, "print the twin prime constant");
  constants->add_option("--prime-limit", o.prime_limit, "primes in the C2 product");
  constants->add_option("--bd", o.bd_n, "check the singular-factor mean value up to n");

  auto* fit = app.add_subcommand("fit", "fit prediction - M_k = A x^alpha");
  fit->add_option("--series", o.census_paths, "census directory or files");
  fit->add_option("--k", o.k, "moment order")->required();
  fit->add_option("--predictor", o.predictor, "hb, closed, pnt, eulerian, gamma");
  fit->add_option("--window", o.window, "pow2:A..B");

  auto* dkn = app.add_subcommand("dkn", "least-squares d_kn coefficients");
  dkn->add_option("--series", o.census_paths, "census directory or files");
  dkn->add_option("--k", o.k, "moment order")->required();
  dkn->add_option("--order", o.order, "N")->required();
  dkn->add_option("--window", o.window, "pow2:A..B");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "pgap: error[usage]: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*census) cmd_census(o, out);
    else if (*moments) cmd_moments(o, out);
    else if (*expand) cmd_expand(o, out);
    else if (*constants) cmd_constants(o, out);
    else if (*fit) cmd_fit(o, out);
    else if (*dkn) cmd_dkn(o, out);
  } catch (const error& e) {
    err << "pgap: error[" << e.kind() << "]: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "pgap: error[internal]: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace pgap::cli
