#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zeroone {

enum class ErrorCode {
  invalid_argument,
  empty_series,
  non_finite_sample,
  invalid_c,
  n0_out_of_range,
  series_too_short,
  all_c_degenerate,
  negative_input,
  aliasing,
  divergence,
  missing_sample_rate,
  parse_error,
  non_uniform_sampling,
  empty_file,
  window_too_long,
  io_error,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::empty_series: return "empty-series";
    case ErrorCode::non_finite_sample: return "non-finite-sample";
    case ErrorCode::invalid_c: return "invalid-c";
    case ErrorCode::n0_out_of_range: return "n0-out-of-range";
    case ErrorCode::series_too_short: return "series-too-short";
    case ErrorCode::all_c_degenerate: return "all-c-degenerate";
    case ErrorCode::negative_input: return "negative-input";
    case ErrorCode::aliasing: return "aliasing";
    case ErrorCode::divergence: return "divergence";
    case ErrorCode::missing_sample_rate: return "missing-sample-rate";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::non_uniform_sampling: return "non-uniform-sampling";
    case ErrorCode::empty_file: return "empty-file";
    case ErrorCode::window_too_long: return "window-too-long";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown";
}

/// Single exception type for the library; `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace zeroone
