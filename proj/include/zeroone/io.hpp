#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "zeroone/error.hpp"
#include "zeroone/spectral.hpp"
#include "zeroone/time_series.hpp"
#include "zeroone/translation.hpp"
#include "zeroone/version.hpp"
#include "zeroone/zero_one_test.hpp"

namespace zeroone::io {

enum class SeriesFormat { single_column, time_value_csv };

struct SeriesFile {
  std::string path;
  SeriesFormat format = SeriesFormat::single_column;
  /// Overrides (single_column) or is ignored in favour of the time column.
  std::optional<double> sample_rate;
};

/// Shortest decimal that parses back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::optional<double> parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return v;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  if (in.bad()) throw Error(ErrorCode::io_error, "read failure on '" + path + "'");
  return lines;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io_error, "cannot open '" + path + "' for writing");
  return out;
}

inline void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "write failure on '" + path + "'");
}

[[noreturn]] inline void parse_fail(const std::string& path, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::parse_error, path + ":" + std::to_string(line) + ": " + what);
}

inline constexpr std::string_view kRatePrefix = "# sample_rate=";
inline constexpr double kSpacingTolerance = 1e-6;

}  // namespace detail

/// "time,value" header on the first non-blank line selects time_value_csv.
inline SeriesFormat detect_format(const std::string& path) {
  for (const auto& line : detail::read_lines(path)) {
    const auto t = detail::trim(line);
    if (t.empty()) continue;
    return t == "time,value" ? SeriesFormat::time_value_csv : SeriesFormat::single_column;
  }
  return SeriesFormat::single_column;
}

inline TimeSeries load_series(const SeriesFile& file) {
  const auto lines = detail::read_lines(file.path);
  std::vector<double> samples;
  std::optional<double> rate;

  if (file.format == SeriesFormat::single_column) {
    bool seen_data = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const auto t = detail::trim(lines[i]);
      if (t.empty()) continue;
      if (t.front() == '#') {
        if (!seen_data && t.starts_with(detail::kRatePrefix)) {
          rate = parse_double(t.substr(detail::kRatePrefix.size()));
          if (!rate || !(*rate > 0.0)) detail::parse_fail(file.path, i + 1, "bad sample_rate comment");
        }
        continue;
      }
      const auto v = parse_double(t);
      if (!v) detail::parse_fail(file.path, i + 1, "not a number: '" + std::string(t) + "'");
      samples.push_back(*v);
      seen_data = true;
    }
    if (file.sample_rate) rate = file.sample_rate;
  } else {
    std::vector<double> times;
    bool header = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const auto t = detail::trim(lines[i]);
      if (t.empty()) continue;
      if (!header) {
        if (t != "time,value") detail::parse_fail(file.path, i + 1, "expected header 'time,value'");
        header = true;
        continue;
      }
      const auto comma = t.find(',');
      if (comma == std::string_view::npos) detail::parse_fail(file.path, i + 1, "expected 'time,value'");
      const auto tv = parse_double(t.substr(0, comma));
      const auto vv = parse_double(t.substr(comma + 1));
      if (!tv || !vv) detail::parse_fail(file.path, i + 1, "not a number pair: '" + std::string(t) + "'");
      times.push_back(*tv);
      samples.push_back(*vv);
    }
    if (times.size() >= 2) {
      const double step = times[1] - times[0];
      if (!(step > 0.0)) {
        throw Error(ErrorCode::non_uniform_sampling, file.path + ": time stamps must be strictly increasing");
      }
      for (std::size_t i = 1; i < times.size(); ++i) {
        const double d = times[i] - times[i - 1];
        if (!(d > 0.0) || std::abs(d - step) > detail::kSpacingTolerance * step) {
          throw Error(ErrorCode::non_uniform_sampling,
                      file.path + ": spacing changes at row " + std::to_string(i + 1));
        }
      }
      rate = static_cast<double>(times.size() - 1) / (times.back() - times.front());
    }
  }
  if (samples.empty()) throw Error(ErrorCode::empty_file, file.path + " contains no samples");
  return TimeSeries(std::move(samples), rate, file.path);
}

/// Loads with the format detected from the file header.
inline TimeSeries load_series(const std::string& path) {
  return load_series(SeriesFile{path, detect_format(path), std::nullopt});
}

inline void write_series(const TimeSeries& series, const std::string& path,
                         SeriesFormat format = SeriesFormat::single_column) {
  auto out = detail::open_output(path);
  const auto s = series.samples();
  if (format == SeriesFormat::single_column) {
    if (series.sample_rate()) out << detail::kRatePrefix << format_double(*series.sample_rate()) << '\n';
    for (double v : s) out << format_double(v) << '\n';
  } else {
    if (!series.sample_rate()) {
      throw Error(ErrorCode::missing_sample_rate, "time_value_csv output needs a sample rate");
    }
    const double fs = *series.sample_rate();
    out << "time,value\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
      out << format_double(static_cast<double>(i) / fs) << ',' << format_double(s[i]) << '\n';
    }
  }
  detail::finish(out, path);
}

struct WindowPlan {
  std::size_t window_len = 0;
  std::size_t stride = 1;
};

/// Windows starting at samples 1, 1+stride, ...; each is labelled
/// "<parent>@<start>" with the 1-based start index.
inline std::vector<TimeSeries> segment(const TimeSeries& series, const WindowPlan& plan) {
  if (plan.window_len < 1 || plan.stride < 1) {
    throw Error(ErrorCode::invalid_argument, "window length and stride must be >= 1");
  }
  const std::size_t n = series.size();
  if (plan.window_len > n) {
    throw Error(ErrorCode::window_too_long, "window of " + std::to_string(plan.window_len) +
                                                " exceeds series length " + std::to_string(n));
  }
  const std::size_t count = (n - plan.window_len) / plan.stride + 1;
  const auto s = series.samples();
  std::vector<TimeSeries> out;
  out.reserve(count);
  for (std::size_t w = 0; w < count; ++w) {
    const std::size_t start = w * plan.stride;
    out.emplace_back(std::vector<double>(s.begin() + static_cast<std::ptrdiff_t>(start),
                                         s.begin() + static_cast<std::ptrdiff_t>(start + plan.window_len)),
                     series.sample_rate(), series.label() + "@" + std::to_string(start + 1));
  }
  return out;
}

// --- result JSON ---

inline GrowthMethod parse_method(std::string_view s) {
  if (s == "regression") return GrowthMethod::regression;
  if (s == "correlation") return GrowthMethod::correlation;
  throw Error(ErrorCode::invalid_argument, "unknown method '" + std::string(s) + "'");
}

inline Aggregator parse_aggregator(std::string_view s) {
  if (s == "mean") return Aggregator::mean;
  if (s == "median") return Aggregator::median;
  if (s == "trimmed" || s == "trimmed_mean") return Aggregator::trimmed_mean;
  throw Error(ErrorCode::invalid_argument, "unknown aggregator '" + std::string(s) + "'");
}

inline Regularity parse_regularity(std::string_view s) {
  for (Regularity r : {Regularity::regular, Regularity::quasi_periodic, Regularity::aperiodic,
                       Regularity::chaotic_or_stochastic}) {
    if (s == to_string(r)) return r;
  }
  throw Error(ErrorCode::parse_error, "unknown label '" + std::string(s) + "'");
}

inline nlohmann::json config_to_json(const TestConfig& cfg) {
  return {
      {"num_c", cfg.num_c},
      {"c_low", cfg.c_low},
      {"c_high", cfg.c_high},
      {"method", to_string(cfg.method)},
      {"aggregator", to_string(cfg.aggregator)},
      {"trim_fraction", cfg.trim_fraction},
      {"n0_fraction", cfg.n0_fraction},
      {"seed", cfg.seed},
      {"msd_variant", cfg.msd_variant},
      {"thresholds",
       {{"quasi_periodic", cfg.thresholds.quasi_periodic},
        {"aperiodic", cfg.thresholds.aperiodic},
        {"chaotic", cfg.thresholds.chaotic}}},
  };
}

/// Missing keys keep their defaults, so partial objects (e.g. the shared
/// config of a batch manifest) are accepted.
inline TestConfig config_from_json(const nlohmann::json& j, TestConfig cfg = {}) {
  if (j.contains("num_c")) cfg.num_c = j.at("num_c").get<std::size_t>();
  if (j.contains("c_low")) cfg.c_low = j.at("c_low").get<double>();
  if (j.contains("c_high")) cfg.c_high = j.at("c_high").get<double>();
  if (j.contains("method")) cfg.method = parse_method(j.at("method").get<std::string>());
  if (j.contains("aggregator")) cfg.aggregator = parse_aggregator(j.at("aggregator").get<std::string>());
  if (j.contains("trim_fraction")) cfg.trim_fraction = j.at("trim_fraction").get<double>();
  if (j.contains("n0_fraction")) cfg.n0_fraction = j.at("n0_fraction").get<double>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("msd_variant")) cfg.msd_variant = j.at("msd_variant").get<bool>();
  if (j.contains("thresholds")) {
    const auto& t = j.at("thresholds");
    if (t.contains("quasi_periodic")) cfg.thresholds.quasi_periodic = t.at("quasi_periodic").get<double>();
    if (t.contains("aperiodic")) cfg.thresholds.aperiodic = t.at("aperiodic").get<double>();
    if (t.contains("chaotic")) cfg.thresholds.chaotic = t.at("chaotic").get<double>();
  }
  return cfg;
}

/// Keys are emitted in sorted order, so equal results give equal bytes.
inline nlohmann::json result_to_json(const TestResult& r) {
  nlohmann::json per_c = nlohmann::json::array();
  for (const auto& g : r.per_c) {
    per_c.push_back({{"c", g.c}, {"k", g.degenerate ? 0.0 : g.k}, {"degenerate", g.degenerate}});
  }
  return {
      {"series_label", r.series_label},
      {"series_length", r.series_length},
      {"method", to_string(r.config.method)},
      {"seed", r.config.seed},
      {"num_c", r.config.num_c},
      {"n0", r.n0},
      {"k_m", r.k_m},
      {"label", to_string(r.label)},
      {"short_series", r.short_series},
      {"degenerate_count", r.degenerate_count()},
      {"per_c", std::move(per_c)},
      {"config", config_to_json(r.config)},
      {"tool_version", ZEROONE_VERSION},
  };
}

inline TestResult result_from_json(const nlohmann::json& j) {
  TestResult r;
  r.config = config_from_json(j.at("config"));
  r.series_label = j.at("series_label").get<std::string>();
  r.series_length = j.at("series_length").get<std::size_t>();
  r.n0 = j.at("n0").get<std::size_t>();
  r.k_m = j.at("k_m").get<double>();
  r.label = parse_regularity(j.at("label").get<std::string>());
  r.short_series = j.at("short_series").get<bool>();
  for (const auto& e : j.at("per_c")) {
    r.per_c.push_back({e.at("c").get<double>(), e.at("k").get<double>(), r.config.method,
                       e.at("degenerate").get<bool>()});
  }
  return r;
}

inline std::string result_to_string(const TestResult& r) { return result_to_json(r).dump(2) + "\n"; }

inline void export_result(const TestResult& r, const std::string& path) {
  auto out = detail::open_output(path);
  out << result_to_string(r);
  detail::finish(out, path);
}

inline TestResult load_result(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
  try {
    return result_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, path + ": " + e.what());
  }
}

// --- plot data ---

inline void export_trajectory(const TranslationTrajectory& traj, const std::string& path) {
  auto out = detail::open_output(path);
  out << "p,q\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << format_double(traj.p[i]) << ',' << format_double(traj.q[i]) << '\n';
  }
  detail::finish(out, path);
}

/// Draw index (1-based), c and |K_c| for every angle.
inline void export_kc_scatter(const TestResult& r, const std::string& path) {
  auto out = detail::open_output(path);
  out << "index,c,abs_k\n";
  for (std::size_t i = 0; i < r.per_c.size(); ++i) {
    out << (i + 1) << ',' << format_double(r.per_c[i].c) << ',' << format_double(std::abs(r.per_c[i].k)) << '\n';
  }
  detail::finish(out, path);
}

inline void export_psd(const PsdEstimate& est, const std::string& path) {
  auto out = detail::open_output(path);
  out << "frequency,power\n";
  for (std::size_t i = 0; i < est.power.size(); ++i) {
    out << format_double(est.frequencies[i]) << ',' << format_double(est.power[i]) << '\n';
  }
  detail::finish(out, path);
}

}  // namespace zeroone::io
