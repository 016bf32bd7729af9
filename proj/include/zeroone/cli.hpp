#pragma once

// Command-line front end: generate, analyze, psd and batch subcommands.
// Exit codes: 0 success, 2 usage or invalid parameters, 3 I/O, 4 data.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "zeroone/error.hpp"
#include "zeroone/io.hpp"
#include "zeroone/signals.hpp"
#include "zeroone/spectral.hpp"
#include "zeroone/time_series.hpp"
#include "zeroone/translation.hpp"
#include "zeroone/version.hpp"
#include "zeroone/zero_one_test.hpp"

namespace zeroone::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kIo = 3, kData = 4 };

inline constexpr double kDefaultTrajectoryC = 2.5;
inline constexpr std::size_t kMinWindow = 100;

inline int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument:
    case ErrorCode::invalid_c:
    case ErrorCode::aliasing:
    case ErrorCode::divergence:
    case ErrorCode::negative_input:
      return kUsage;
    case ErrorCode::io_error:
      return kIo;
    default:
      return kData;
  }
}

/// Flags shared by analyze and batch. Unset options leave the base config alone.
struct TestFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> num_c;
  std::optional<std::string> method;
  std::optional<std::string> aggregator;
  std::optional<double> n0_fraction;
  std::optional<double> trim_fraction;
  std::optional<double> c_low;
  std::optional<double> c_high;
  bool msd_variant = false;
  unsigned threads = 1;

  void attach(CLI::App& app) {
    app.add_option("--seed", seed, "Seed for drawing the c values (default 0)");
    app.add_option("--num-c", num_c, "Number of random c values (default 100)");
    app.add_option("--method", method, "Growth-rate estimator")
        ->check(CLI::IsMember({"regression", "correlation"}));
    app.add_option("--aggregator", aggregator, "Aggregate of |K_c| (default trimmed)")
        ->check(CLI::IsMember({"mean", "median", "trimmed"}));
    app.add_option("--n0-fraction", n0_fraction, "Lag count N0 as a fraction of N");
    app.add_option("--trim", trim_fraction, "Fraction trimmed from each end by the trimmed mean");
    app.add_option("--c-low", c_low, "Lower end of the c interval (radians)");
    app.add_option("--c-high", c_high, "Upper end of the c interval (radians)");
    app.add_flag("--msd-variant", msd_variant, "Subtract the oscillatory mean term from the MSD");
    app.add_option("--threads", threads, "Worker threads per test, 0 = all cores (results are unaffected)");
  }

  TestConfig apply(TestConfig cfg) const {
    if (seed) cfg.seed = *seed;
    if (num_c) cfg.num_c = *num_c;
    if (method) cfg.method = io::parse_method(*method);
    if (aggregator) cfg.aggregator = io::parse_aggregator(*aggregator);
    if (n0_fraction) cfg.n0_fraction = *n0_fraction;
    if (trim_fraction) cfg.trim_fraction = *trim_fraction;
    if (c_low) cfg.c_low = *c_low;
    if (c_high) cfg.c_high = *c_high;
    if (msd_variant) cfg.msd_variant = true;
    validate(cfg);
    return cfg;
  }
};

inline std::string describe(const signals::GeneratorSpec& g) {
  using signals::Kind;
  std::ostringstream os;
  os << "kind=" << signals::to_string(g.kind);
  switch (g.kind) {
    case Kind::sine:
    case Kind::sawtooth: os << " f=" << g.f << " fs=" << g.fs; break;
    case Kind::quasi_periodic: os << " fs=" << g.fs; break;
    case Kind::chirp: os << " f0=" << g.f0 << " f1=" << g.f1 << " fs=" << g.fs; break;
    case Kind::henon:
      os << " a=" << g.henon.a << " b=" << g.henon.b << " x0=" << g.henon.start.x << " y0=" << g.henon.start.y
         << " total=" << g.henon.total;
      break;
    case Kind::uniform_random: os << " seed=" << g.seed; break;
  }
  return os.str();
}

/// Generator object as it appears in a batch manifest.
inline signals::GeneratorSpec generator_from_json(const nlohmann::json& j) {
  signals::GeneratorSpec g;
  g.kind = signals::parse_kind(j.at("kind").get<std::string>());
  if (j.contains("f")) g.f = j.at("f").get<double>();
  if (j.contains("fs")) g.fs = j.at("fs").get<double>();
  if (j.contains("n")) g.n = j.at("n").get<std::size_t>();
  if (j.contains("f0")) g.f0 = j.at("f0").get<double>();
  if (j.contains("f1")) g.f1 = j.at("f1").get<double>();
  if (j.contains("seed")) g.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("a")) g.henon.a = j.at("a").get<double>();
  if (j.contains("b")) g.henon.b = j.at("b").get<double>();
  if (j.contains("x0")) g.henon.start.x = j.at("x0").get<double>();
  if (j.contains("y0")) g.henon.start.y = j.at("y0").get<double>();
  if (j.contains("total")) g.henon.total = j.at("total").get<std::size_t>();
  return g;
}

struct BatchEntry {
  std::string name;
  std::variant<std::string, signals::GeneratorSpec> source;
};

struct BatchManifest {
  TestConfig config{};
  std::vector<BatchEntry> entries;
  std::size_t window = 0;
  std::size_t stride = 0;
  unsigned jobs = 1;
  std::string summary;
  std::string results_dir;
};

/// Relative input paths are resolved against the manifest's directory.
inline BatchManifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open manifest '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_argument, "manifest " + path + ": " + e.what());
  }
  const auto base = std::filesystem::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() || base.empty() ? p : (base / fp).string();
  };
  BatchManifest m;
  try {
    if (j.contains("config")) m.config = io::config_from_json(j.at("config"));
    if (j.contains("window")) m.window = j.at("window").get<std::size_t>();
    if (j.contains("stride")) m.stride = j.at("stride").get<std::size_t>();
    if (j.contains("jobs")) m.jobs = j.at("jobs").get<unsigned>();
    if (j.contains("summary")) m.summary = resolve(j.at("summary").get<std::string>());
    if (j.contains("results_dir")) m.results_dir = resolve(j.at("results_dir").get<std::string>());
    if (!j.contains("inputs") || !j.at("inputs").is_array()) {
      throw Error(ErrorCode::invalid_argument, "manifest needs an 'inputs' array");
    }
    for (const auto& e : j.at("inputs")) {
      if (e.is_string()) {
        m.entries.push_back({e.get<std::string>(), resolve(e.get<std::string>())});
      } else if (e.contains("path")) {
        const auto p = e.at("path").get<std::string>();
        m.entries.push_back({e.value("name", p), resolve(p)});
      } else if (e.contains("generator")) {
        auto g = generator_from_json(e.at("generator"));
        m.entries.push_back({e.value("name", std::string(signals::to_string(g.kind))), g});
      } else {
        throw Error(ErrorCode::invalid_argument, "manifest input needs 'path' or 'generator'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_argument, "manifest " + path + ": " + e.what());
  }
  return m;
}

namespace detail {

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    if (ch != '\n' && ch != '\r') out += ch;
  }
  return out + "\"";
}

inline std::string safe_file_stem(std::string s) {
  for (char& ch : s) {
    const bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.';
    if (!ok) ch = '_';
  }
  return s;
}

struct SummaryRow {
  std::string file;
  std::size_t n = 0;
  std::optional<TestResult> result;
  std::string error;
};

}  // namespace detail

inline int cmd_generate(const signals::GeneratorSpec& spec, const std::string& out_path, std::ostream& out) {
  const auto series = signals::generate(spec);
  io::write_series(series, out_path);
  out << "N=" << series.size() << ' ' << describe(spec) << '\n';
  return kOk;
}

struct AnalyzeOutputs {
  std::string result_json;
  std::string scatter_csv;
  std::string trajectory_csv;
  double trajectory_c = kDefaultTrajectoryC;
};

inline int cmd_analyze(const std::string& in_path, const TestConfig& cfg, const AnalyzeOutputs& outputs,
                       unsigned threads, std::ostream& out) {
  const auto series = io::load_series(in_path);
  const auto result = run_test(series, cfg, threads);
  io::export_result(result, outputs.result_json);
  io::export_kc_scatter(result, outputs.scatter_csv);
  if (!outputs.trajectory_csv.empty()) {
    io::export_trajectory(translation_variables(series, outputs.trajectory_c), outputs.trajectory_csv);
  }
  out << "K_m=" << io::format_double(result.k_m) << " label=" << to_string(result.label);
  if (result.short_series) out << " short_series=true";
  out << '\n';
  return kOk;
}

inline int cmd_psd(const std::string& in_path, const std::string& out_path, std::optional<double> fs,
                   Window window, std::ostream& out) {
  auto series = io::load_series(in_path);
  if (fs) series = TimeSeries(std::vector<double>(series.samples().begin(), series.samples().end()), fs,
                              series.label());
  const auto est = psd(series, window);
  io::export_psd(est, out_path);
  out << "bins=" << est.power.size() << " peak_hz=" << io::format_double(peak_frequency(est)) << '\n';
  return kOk;
}

/// Runs the 0-1 test on every manifest input (or every window of it) and
/// writes one summary row per run, in manifest order.
inline int cmd_batch(const BatchManifest& m, std::ostream& out, std::ostream& err, unsigned threads = 1) {
  if (m.entries.empty()) {
    err << "error: manifest lists no inputs\n";
    return kUsage;
  }
  if (m.summary.empty()) {
    err << "error: no summary path (use --out or the manifest 'summary' key)\n";
    return kUsage;
  }
  if (m.window != 0 && m.window < kMinWindow) {
    err << "error: --window must be at least " << kMinWindow << "\n";
    return kUsage;
  }
  validate(m.config);
  if (!m.results_dir.empty()) std::filesystem::create_directories(m.results_dir);

  std::vector<std::vector<detail::SummaryRow>> rows(m.entries.size());
  auto process = [&](std::size_t idx) {
    const auto& e = m.entries[idx];
    auto& dst = rows[idx];
    try {
      const TimeSeries series =
          std::holds_alternative<std::string>(e.source)
              ? io::load_series(std::get<std::string>(e.source)).with_label(e.name)
              : signals::generate(std::get<signals::GeneratorSpec>(e.source)).with_label(e.name);
      std::vector<TimeSeries> parts;
      if (m.window != 0) {
        parts = io::segment(series, {m.window, m.stride == 0 ? m.window : m.stride});
      } else {
        parts.push_back(series);
      }
      for (std::size_t w = 0; w < parts.size(); ++w) {
        detail::SummaryRow row{parts[w].label(), parts[w].size(), std::nullopt, {}};
        try {
          row.result = run_test(parts[w], m.config, threads);
          if (!m.results_dir.empty()) {
            const auto file = std::filesystem::path(m.results_dir) /
                              (std::to_string(idx + 1) + "_" + detail::safe_file_stem(parts[w].label()) + ".json");
            io::export_result(*row.result, file.string());
          }
        } catch (const Error& ex) {
          row.error = ex.what();
        }
        dst.push_back(std::move(row));
      }
    } catch (const std::exception& ex) {
      dst.push_back({e.name, 0, std::nullopt, ex.what()});
    }
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(m.jobs, static_cast<unsigned>(m.entries.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < m.entries.size(); ++i) process(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < m.entries.size(); i = next++) process(i);
      });
    }
  }

  std::ofstream sum(m.summary, std::ios::binary | std::ios::trunc);
  if (!sum) throw Error(ErrorCode::io_error, "cannot open '" + m.summary + "' for writing");
  sum << "file,N,K_m,label,degenerate_count,error\n";
  std::size_t ok = 0, failed = 0;
  for (const auto& group : rows) {
    for (const auto& r : group) {
      sum << detail::csv_quote(r.file) << ',' << r.n << ',';
      if (r.result) {
        sum << io::format_double(r.result->k_m) << ',' << to_string(r.result->label) << ','
            << r.result->degenerate_count() << ",\n";
        ++ok;
      } else {
        sum << ",,," << detail::csv_quote(r.error) << '\n';
        ++failed;
      }
    }
  }
  sum.flush();
  if (!sum) throw Error(ErrorCode::io_error, "write failure on '" + m.summary + "'");
  out << "runs=" << (ok + failed) << " ok=" << ok << " failed=" << failed << '\n';
  return ok > 0 ? kOk : kData;
}

/// Parses `args` (without the program name) and dispatches to a subcommand.
inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"0-1 test for chaos on scalar time series", "zeroone"};
  app.set_version_flag("--version", ZEROONE_VERSION);
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a reference signal in single_column format");
  std::string kind;
  signals::GeneratorSpec spec;
  std::string gen_out;
  gen->add_option("--kind", kind, "sine|sawtooth|quasi_periodic|chirp|henon|uniform_random")->required();
  gen->add_option("--f", spec.f, "Tone frequency in Hz (sine, sawtooth)")->capture_default_str();
  gen->add_option("--fs", spec.fs, "Sample rate in Hz")->capture_default_str();
  gen->add_option("--n", spec.n, "Number of samples (henon: samples kept)")->capture_default_str();
  gen->add_option("--seed", spec.seed, "Seed (uniform_random)")->capture_default_str();
  gen->add_option("--f0", spec.f0, "Chirp start frequency in Hz")->capture_default_str();
  gen->add_option("--f1", spec.f1, "Chirp end frequency in Hz")->capture_default_str();
  gen->add_option("--henon-a", spec.henon.a, "Henon parameter a")->capture_default_str();
  gen->add_option("--henon-b", spec.henon.b, "Henon parameter b")->capture_default_str();
  gen->add_option("--x0", spec.henon.start.x, "Henon initial x")->capture_default_str();
  gen->add_option("--y0", spec.henon.start.y, "Henon initial y")->capture_default_str();
  gen->add_option("--total", spec.henon.total, "Henon iterates generated before keeping the tail")
      ->capture_default_str();
  gen->add_option("--out", gen_out, "Output path")->required();

  // analyze
  auto* ana = app.add_subcommand("analyze", "Run the 0-1 test on a series file");
  std::string ana_in;
  TestFlags ana_flags;
  AnalyzeOutputs ana_outputs;
  std::string ana_out;
  std::optional<double> traj_c;
  ana->add_option("input", ana_in, "Series file (single_column or time,value CSV)")->required();
  ana_flags.attach(*ana);
  ana->add_option("--out", ana_out, "Result JSON path (default <input>.result.json)");
  ana->add_option("--scatter", ana_outputs.scatter_csv, "K_c scatter CSV path (default <input>.kc.csv)");
  ana->add_option("--trajectory", ana_outputs.trajectory_csv, "Write the p-q path to this CSV");
  ana->add_option("--trajectory-c", traj_c, "c used for --trajectory (default 2.5)");

  // psd
  auto* ps = app.add_subcommand("psd", "Write the normalized power spectral density as CSV");
  std::string psd_in, psd_out, taper = "rectangular";
  std::optional<double> psd_fs;
  ps->add_option("input", psd_in, "Series file")->required();
  ps->add_option("--out", psd_out, "Output CSV (frequency,power)")->required();
  ps->add_option("--fs", psd_fs, "Sample rate override in Hz");
  ps->add_option("--taper", taper, "Data window")->check(CLI::IsMember({"rectangular", "hann"}))->capture_default_str();

  // batch
  auto* bat = app.add_subcommand("batch", "Run the 0-1 test for every input of a JSON manifest");
  std::string manifest_path, bat_out, bat_results;
  TestFlags bat_flags;
  std::optional<std::size_t> window, stride;
  std::optional<unsigned> jobs;
  bat->add_option("manifest", manifest_path, "Manifest JSON")->required();
  bat_flags.attach(*bat);
  bat->add_option("--window", window, "Split each input into windows of this many samples (>= 100)");
  bat->add_option("--stride", stride, "Step between window starts (default: window length)");
  bat->add_option("--jobs", jobs, "Inputs processed concurrently");
  bat->add_option("--out", bat_out, "Summary CSV path");
  bat->add_option("--results-dir", bat_results, "Directory for one result JSON per run");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << ZEROONE_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*gen) {
      spec.kind = signals::parse_kind(kind);
      return cmd_generate(spec, gen_out, out);
    }
    if (*ana) {
      const auto cfg = ana_flags.apply(TestConfig{});
      ana_outputs.result_json = ana_out.empty() ? ana_in + ".result.json" : ana_out;
      if (ana_outputs.scatter_csv.empty()) ana_outputs.scatter_csv = ana_in + ".kc.csv";
      if (traj_c) {
        check_angle(*traj_c);
        ana_outputs.trajectory_c = *traj_c;
      }
      return cmd_analyze(ana_in, cfg, ana_outputs, ana_flags.threads, out);
    }
    if (*ps) {
      return cmd_psd(psd_in, psd_out, psd_fs, taper == "hann" ? Window::hann : Window::rectangular, out);
    }
    if (*bat) {
      auto m = load_manifest(manifest_path);
      m.config = bat_flags.apply(m.config);
      if (window) m.window = *window;
      if (stride) m.stride = *stride;
      if (jobs) m.jobs = *jobs;
      if (!bat_out.empty()) m.summary = bat_out;
      if (!bat_results.empty()) m.results_dir = bat_results;
      return cmd_batch(m, out, err, bat_flags.threads);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}

}  // namespace zeroone::cli
