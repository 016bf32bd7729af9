#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zeroone/error.hpp"

namespace zeroone {

/// A scalar observable s(1..N) with an optional sampling rate in Hz.
///
/// Construction validates the invariants: at least one sample, every sample
/// finite, and a strictly positive sample rate when one is given.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> samples,
                      std::optional<double> sample_rate = std::nullopt,
                      std::string label = {})
      : samples_(std::move(samples)), sample_rate_(sample_rate), label_(std::move(label)) {
    if (samples_.empty()) {
      throw Error(ErrorCode::empty_series, "time series has no samples");
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      if (!std::isfinite(samples_[i])) {
        throw Error(ErrorCode::non_finite_sample,
                    "sample " + std::to_string(i + 1) + " is not finite");
      }
    }
    if (sample_rate_ && !(*sample_rate_ > 0.0 && std::isfinite(*sample_rate_))) {
      throw Error(ErrorCode::invalid_argument, "sample rate must be strictly positive");
    }
  }

  std::span<const double> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const std::optional<double>& sample_rate() const noexcept { return sample_rate_; }
  const std::string& label() const noexcept { return label_; }

  TimeSeries with_label(std::string label) const {
    return TimeSeries(samples_, sample_rate_, std::move(label));
  }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  std::vector<double> samples_;
  std::optional<double> sample_rate_;
  std::string label_;
};

}  // namespace zeroone
