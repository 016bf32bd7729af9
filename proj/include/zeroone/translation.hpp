#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "zeroone/error.hpp"
#include "zeroone/time_series.hpp"

namespace zeroone {

/// The planar path (p_c(n), q_c(n)), n = 1..N, driven by the observable.
struct TranslationTrajectory {
  double c = 0.0;
  std::vector<double> p;
  std::vector<double> q;

  std::size_t size() const noexcept { return p.size(); }
};

inline void check_angle(double c) {
  if (!(c > 0.0 && c < 2.0 * std::numbers::pi)) {
    throw Error(ErrorCode::invalid_c, "c must lie strictly inside (0, 2*pi)");
  }
}

/// p_c(n) = sum_{j<=n} s(j) cos(jc), q_c(n) = sum_{j<=n} s(j) sin(jc).
///
/// One cumulative pass. The phase jc is evaluated per sample rather than by
/// rotating a running phasor, so no rounding drift builds up over long series.
inline TranslationTrajectory translation_variables(const TimeSeries& series, double c) {
  check_angle(c);
  const auto s = series.samples();
  TranslationTrajectory traj;
  traj.c = c;
  traj.p.resize(s.size());
  traj.q.resize(s.size());
  double p = 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double phase = static_cast<double>(i + 1) * c;
    p += s[i] * std::cos(phase);
    q += s[i] * std::sin(phase);
    traj.p[i] = p;
    traj.q[i] = q;
  }
  return traj;
}

/// Largest distance of the path from the origin.
inline double max_radius(const TranslationTrajectory& traj) {
  double r2 = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    r2 = std::max(r2, traj.p[i] * traj.p[i] + traj.q[i] * traj.q[i]);
  }
  return std::sqrt(r2);
}

}  // namespace zeroone
