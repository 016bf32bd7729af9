#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string_view>

#include "zeroone/error.hpp"
#include "zeroone/msd.hpp"

namespace zeroone {

enum class GrowthMethod { regression, correlation };

constexpr std::string_view to_string(GrowthMethod m) noexcept {
  return m == GrowthMethod::regression ? "regression" : "correlation";
}

/// One K_c estimate. `k` is the raw (signed, unclamped) value; degenerate
/// entries carry k = 0.
struct GrowthRate {
  double c = 0.0;
  double k = 0.0;
  GrowthMethod method = GrowthMethod::correlation;
  bool degenerate = false;

  friend bool operator==(const GrowthRate&, const GrowthRate&) = default;
};

namespace detail {

// Flat within a few ulps of its magnitude. Exactly-zero curves are flat.
inline bool is_flat(std::span<const double> v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  return (*hi - *lo) <= 4.0 * std::numeric_limits<double>::epsilon() * scale;
}

inline void require_points(const MsdCurve& curve) {
  if (curve.n_max() < 2) {
    throw Error(ErrorCode::invalid_argument, "growth rate needs at least 2 MSD points");
  }
}

}  // namespace detail

/// Least-squares slope of log M_c(n) against log n. Points with M_c(n) <= 0
/// have no logarithm and are skipped; fewer than two usable points, or a flat
/// curve, yields a degenerate entry.
inline GrowthRate growth_rate_regression(const MsdCurve& curve) {
  detail::require_points(curve);
  GrowthRate out{curve.c, 0.0, GrowthMethod::regression, false};
  if (detail::is_flat(curve.values)) {
    out.degenerate = true;
    return out;
  }
  double sx = 0.0, sy = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < curve.n_max(); ++i) {
    if (curve.values[i] > 0.0) {
      sx += std::log(static_cast<double>(i + 1));
      sy += std::log(curve.values[i]);
      ++m;
    }
  }
  if (m < 2) {
    out.degenerate = true;
    return out;
  }
  const double mx = sx / static_cast<double>(m);
  const double my = sy / static_cast<double>(m);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < curve.n_max(); ++i) {
    if (curve.values[i] > 0.0) {
      const double dx = std::log(static_cast<double>(i + 1)) - mx;
      sxy += dx * (std::log(curve.values[i]) - my);
      sxx += dx * dx;
    }
  }
  out.k = sxy / sxx;
  return out;
}

/// Pearson correlation between the lag vector (1..N0) and M_c(1..N0).
inline GrowthRate growth_rate_correlation(const MsdCurve& curve) {
  detail::require_points(curve);
  GrowthRate out{curve.c, 0.0, GrowthMethod::correlation, false};
  if (detail::is_flat(curve.values)) {
    out.degenerate = true;
    return out;
  }
  const std::size_t m = curve.n_max();
  const double mx = (static_cast<double>(m) + 1.0) / 2.0;
  double my = 0.0;
  for (double v : curve.values) my += v;
  my /= static_cast<double>(m);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = static_cast<double>(i + 1) - mx;
    const double dy = curve.values[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (syy == 0.0) {
    out.degenerate = true;
    return out;
  }
  out.k = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return out;
}

inline GrowthRate growth_rate(const MsdCurve& curve, GrowthMethod method) {
  return method == GrowthMethod::regression ? growth_rate_regression(curve)
                                            : growth_rate_correlation(curve);
}

}  // namespace zeroone
