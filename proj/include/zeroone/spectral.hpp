#pragma once

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "zeroone/error.hpp"
#include "zeroone/time_series.hpp"

namespace zeroone {

/// One-sided spectrum, power rescaled so the largest bin is 1.
struct PsdEstimate {
  std::vector<double> frequencies;
  std::vector<double> power;
};

enum class Window { rectangular, hann };

namespace detail {

// FFTW planning is not thread-safe; execution is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

}  // namespace detail

/// Single-segment periodogram |X_k|^2 over bins k = 0..floor(N/2), with the
/// interior bins doubled for the one-sided convention, then normalized to a
/// maximum of 1. An all-zero input gives all-zero power.
inline PsdEstimate psd(const TimeSeries& series, Window window = Window::rectangular) {
  if (!series.sample_rate()) {
    throw Error(ErrorCode::missing_sample_rate, "PSD needs a sample rate");
  }
  const std::size_t n = series.size();
  if (n < 8) throw Error(ErrorCode::invalid_argument, "PSD needs at least 8 samples");
  const double fs = *series.sample_rate();
  const std::size_t bins = n / 2 + 1;

  std::unique_ptr<double[], detail::FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
  std::unique_ptr<fftw_complex[], detail::FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins)));
  if (!in || !out) throw Error(ErrorCode::invalid_argument, "FFT buffer allocation failed");

  fftw_plan plan;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
  }
  const auto s = series.samples();
  for (std::size_t i = 0; i < n; ++i) {
    double w = 1.0;
    if (window == Window::hann) {
      w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
    }
    in[i] = s[i] * w;
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }

  PsdEstimate est;
  est.frequencies.resize(bins);
  est.power.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    est.frequencies[k] = static_cast<double>(k) * fs / static_cast<double>(n);
    const double re = out[k][0];
    const double im = out[k][1];
    const bool interior = k != 0 && !(n % 2 == 0 && k == n / 2);
    est.power[k] = (re * re + im * im) * (interior ? 2.0 : 1.0);
  }
  const double peak = *std::max_element(est.power.begin(), est.power.end());
  if (peak > 0.0) {
    for (double& p : est.power) p /= peak;
  }
  return est;
}

/// Frequency of the strongest bin.
inline double peak_frequency(const PsdEstimate& est) {
  const auto it = std::max_element(est.power.begin(), est.power.end());
  return est.frequencies[static_cast<std::size_t>(it - est.power.begin())];
}

/// Indices of local maxima whose power exceeds `threshold`.
inline std::vector<std::size_t> peaks_above(const PsdEstimate& est, double threshold) {
  std::vector<std::size_t> out;
  const auto& p = est.power;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const bool left = k == 0 || p[k] > p[k - 1];
    const bool right = k + 1 == p.size() || p[k] >= p[k + 1];
    if (p[k] > threshold && left && right) out.push_back(k);
  }
  return out;
}

/// Affine map onto [0, 1]. A constant series maps to 0.5 everywhere.
inline TimeSeries normalize_amplitude(const TimeSeries& series) {
  const auto s = series.samples();
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  const double min = *lo;
  const double range = *hi - *lo;
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out[i] = range > 0.0 ? (s[i] - min) / range : 0.5;
  }
  return TimeSeries(std::move(out), series.sample_rate(), series.label());
}

}  // namespace zeroone
