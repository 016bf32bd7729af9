#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "zeroone/error.hpp"
#include "zeroone/translation.hpp"

namespace zeroone {

/// M_c(n) for n = 1..n_max.
struct MsdCurve {
  double c = 0.0;
  std::vector<double> values;

  std::size_t n_max() const noexcept { return values.size(); }
};

/// Mean squared displacement of the translation path:
///
///   M_c(n) = (1/N) * sum_{j=1}^{N-n} ([p(j+n)-p(j)]^2 + [q(j+n)-q(j)]^2)
///
/// The prefactor is 1/N for every lag, not 1/(N-n).
inline MsdCurve msd(const TranslationTrajectory& traj, std::size_t n0) {
  const std::size_t N = traj.size();
  if (traj.q.size() != N) {
    throw Error(ErrorCode::invalid_argument, "trajectory p and q lengths differ");
  }
  if (n0 < 1 || n0 >= N) {
    throw Error(ErrorCode::n0_out_of_range,
                "n0 = " + std::to_string(n0) + " must satisfy 1 <= n0 < N = " + std::to_string(N));
  }
  MsdCurve curve;
  curve.c = traj.c;
  curve.values.resize(n0);
  const double* p = traj.p.data();
  const double* q = traj.q.data();
  const double inv_n = 1.0 / static_cast<double>(N);
  for (std::size_t n = 1; n <= n0; ++n) {
    double acc = 0.0;
    for (std::size_t j = 0; j + n < N; ++j) {
      const double dp = p[j + n] - p[j];
      const double dq = q[j + n] - q[j];
      acc += dp * dp + dq * dq;
    }
    curve.values[n - 1] = acc * inv_n;
  }
  return curve;
}

/// Removes the oscillatory term (E s)^2 (1 - cos nc) / (1 - cos c) that a
/// non-zero mean contributes to M_c(n). Gives faster convergence of the
/// growth rate for signals with a DC offset. Values may become negative.
inline MsdCurve subtract_oscillatory_term(MsdCurve curve, std::span<const double> samples) {
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(samples.size());
  const double scale = mean * mean / (1.0 - std::cos(curve.c));
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    curve.values[i] -= scale * (1.0 - std::cos(n * curve.c));
  }
  return curve;
}

}  // namespace zeroone
