#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "zeroone/error.hpp"
#include "zeroone/random.hpp"
#include "zeroone/time_series.hpp"

namespace zeroone::signals {

namespace detail {

inline void require_count(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "sample count must be >= 1");
}

inline void require_rate(double fs) {
  if (!(fs > 0.0 && std::isfinite(fs))) {
    throw Error(ErrorCode::invalid_argument, "sample rate must be > 0");
  }
}

inline void require_below_nyquist(double f, double fs) {
  if (!(f > 0.0)) throw Error(ErrorCode::invalid_argument, "frequency must be > 0");
  if (!(f < fs / 2.0)) {
    throw Error(ErrorCode::aliasing, "frequency " + std::to_string(f) +
                                         " Hz is not below the Nyquist limit " + std::to_string(fs / 2.0) + " Hz");
  }
}

inline bool is_integral(double v) { return v == std::floor(v) && std::abs(v) < 0x1.0p52; }

}  // namespace detail

/// s(j) = sin(2 pi f (j-1)/fs), j = 1..n.
inline TimeSeries sine(double f, double fs, std::size_t n) {
  detail::require_rate(fs);
  detail::require_below_nyquist(f, fs);
  detail::require_count(n);
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = std::sin(2.0 * std::numbers::pi * f * static_cast<double>(i) / fs);
  }
  return TimeSeries(std::move(s), fs, "sine");
}

/// y(t) = 2 (t f - floor(1/2 + t f)), t = (j-1)/fs. Range (-1, 1].
///
/// Only the fractional part of t f matters. With integral f and fs it is
/// computed exactly as ((j-1) f mod fs) / fs, so the output is exactly
/// periodic whenever fs/f is an integer.
inline TimeSeries sawtooth(double f, double fs, std::size_t n) {
  detail::require_rate(fs);
  detail::require_below_nyquist(f, fs);
  detail::require_count(n);
  const bool exact = detail::is_integral(f) && detail::is_integral(fs);
  const auto fi = static_cast<std::uint64_t>(f);
  const auto fsi = static_cast<std::uint64_t>(fs);
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x;
    if (exact) {
      x = static_cast<double>((static_cast<std::uint64_t>(i) % fsi) * fi % fsi) / fs;
    } else {
      const double cycles = static_cast<double>(i) * f / fs;
      x = cycles - std::floor(cycles);
    }
    s[i] = 2.0 * (x - std::floor(0.5 + x));
  }
  return TimeSeries(std::move(s), fs, "sawtooth");
}

inline constexpr double kQuasiBaseHz = 100.0;

/// y(t) = cos(2 pi 100 t) + cos(2 pi 100 sqrt(2) t): two tones with an
/// irrational frequency ratio.
inline TimeSeries quasi_periodic(double fs, std::size_t n) {
  detail::require_rate(fs);
  detail::require_below_nyquist(kQuasiBaseHz * std::numbers::sqrt2, fs);
  detail::require_count(n);
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / fs;
    s[i] = std::cos(2.0 * std::numbers::pi * kQuasiBaseHz * t) +
           std::cos(2.0 * std::numbers::pi * kQuasiBaseHz * std::numbers::sqrt2 * t);
  }
  return TimeSeries(std::move(s), fs, "quasi_periodic");
}

/// Linear sweep y(t) = sin(2 pi (f0 t + (k/2) t^2)), k = (f1 - f0)/T, sampled
/// at fs over [0, T).
inline TimeSeries chirp(double f0, double f1, double sweep_time, double fs) {
  detail::require_rate(fs);
  if (!(f0 >= 0.0 && f1 > f0)) {
    throw Error(ErrorCode::invalid_argument, "chirp needs 0 <= f0 < f1");
  }
  if (!(sweep_time > 0.0 && std::isfinite(sweep_time))) {
    throw Error(ErrorCode::invalid_argument, "sweep time must be > 0");
  }
  if (!(fs > 2.0 * f1)) {
    throw Error(ErrorCode::aliasing, "sweep end " + std::to_string(f1) + " Hz is not below the Nyquist limit");
  }
  // Samples at t = i/fs < T. Guard against T*fs landing a hair above an integer.
  const double span = sweep_time * fs;
  const double nearest = std::round(span);
  const auto n = static_cast<std::size_t>(std::abs(span - nearest) < 1e-9 * std::max(1.0, span) ? nearest
                                                                                               : std::ceil(span));
  detail::require_count(n);
  const double k = (f1 - f0) / sweep_time;
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / fs;
    s[i] = std::sin(2.0 * std::numbers::pi * (f0 * t + 0.5 * k * t * t));
  }
  return TimeSeries(std::move(s), fs, "chirp");
}

struct HenonState {
  double x = 0.0;
  double y = 0.0;
};

struct HenonParams {
  double a = 1.4;
  double b = 0.3;
  HenonState start{0.03, 0.03};
  std::size_t total = 100000;
  std::size_t keep = 5000;
};

inline constexpr double kHenonDivergence = 1e6;

inline HenonState henon_step(HenonState s, double a, double b) {
  return {1.0 - a * s.x * s.x + s.y, b * s.x};
}

/// Iterates x' = 1 - a x^2 + y, y' = b x for `total` steps from the start
/// state and returns the last `keep` x values.
inline TimeSeries henon(const HenonParams& p = {}) {
  if (p.keep < 1 || p.keep > p.total) {
    throw Error(ErrorCode::invalid_argument, "henon needs 1 <= keep <= total");
  }
  std::vector<double> s(p.keep);
  HenonState st = p.start;
  const std::size_t first_kept = p.total - p.keep;
  for (std::size_t i = 0; i < p.total; ++i) {
    st = henon_step(st, p.a, p.b);
    if (!(std::abs(st.x) <= kHenonDivergence)) {
      throw Error(ErrorCode::divergence, "henon orbit diverged at iterate " + std::to_string(i + 1));
    }
    if (i >= first_kept) s[i - first_kept] = st.x;
  }
  return TimeSeries(std::move(s), std::nullopt, "henon");
}

/// n independent draws from U[0, 1].
inline TimeSeries uniform_random(std::size_t n, std::uint64_t seed) {
  detail::require_count(n);
  PortableUniform rng(seed);
  std::vector<double> s(n);
  for (double& v : s) v = rng.next_closed_unit();
  return TimeSeries(std::move(s), std::nullopt, "uniform_random");
}

enum class Kind { sine, sawtooth, quasi_periodic, chirp, henon, uniform_random };

/// Everything needed to regenerate one reference signal.
struct GeneratorSpec {
  Kind kind = Kind::sine;
  double f = 100.0;
  double fs = 5000.0;
  std::size_t n = 5000;
  double f0 = 0.0;
  double f1 = 100.0;
  HenonParams henon{};
  std::uint64_t seed = 0;
};

inline std::string_view to_string(Kind k) noexcept {
  switch (k) {
    case Kind::sine: return "sine";
    case Kind::sawtooth: return "sawtooth";
    case Kind::quasi_periodic: return "quasi_periodic";
    case Kind::chirp: return "chirp";
    case Kind::henon: return "henon";
    case Kind::uniform_random: return "uniform_random";
  }
  return "unknown";
}

inline Kind parse_kind(std::string_view name) {
  for (Kind k : {Kind::sine, Kind::sawtooth, Kind::quasi_periodic, Kind::chirp, Kind::henon,
                 Kind::uniform_random}) {
    if (name == to_string(k)) return k;
  }
  if (name == "quasiperiodic" || name == "quasi-periodic") return Kind::quasi_periodic;
  if (name == "random" || name == "uniform-random") return Kind::uniform_random;
  throw Error(ErrorCode::invalid_argument, "unknown generator kind '" + std::string(name) + "'");
}

/// For the chirp, the sweep time is n/fs so that exactly n samples are produced.
/// For henon, `n` is the number of kept samples.
inline TimeSeries generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case Kind::sine: return sine(spec.f, spec.fs, spec.n);
    case Kind::sawtooth: return sawtooth(spec.f, spec.fs, spec.n);
    case Kind::quasi_periodic: return quasi_periodic(spec.fs, spec.n);
    case Kind::chirp:
      detail::require_rate(spec.fs);
      detail::require_count(spec.n);
      return chirp(spec.f0, spec.f1, static_cast<double>(spec.n) / spec.fs, spec.fs);
    case Kind::henon: {
      HenonParams p = spec.henon;
      p.keep = spec.n;
      return henon(p);
    }
    case Kind::uniform_random: return uniform_random(spec.n, spec.seed);
  }
  throw Error(ErrorCode::invalid_argument, "unknown generator kind");
}

}  // namespace zeroone::signals
