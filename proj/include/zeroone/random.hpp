#pragma once

#include <cstdint>
#include <random>

namespace zeroone {

/// Seeded uniform source whose output is identical on every platform.
///
/// std::mt19937_64 is fully specified by the standard; the standard
/// distributions are not, so doubles are built directly from the top 53 bits
/// of each 64-bit draw.
class PortableUniform {
 public:
  explicit PortableUniform(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1), multiples of 2^-53.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on the closed interval [0, 1], multiples of 1/(2^53 - 1).
  double next_closed_unit() {
    return static_cast<double>(engine_() >> 11) / static_cast<double>((std::uint64_t{1} << 53) - 1);
  }

  /// Uniform on the open interval (low, high). Draws landing on either
  /// endpoint after rounding are rejected.
  double next_open(double low, double high) {
    for (;;) {
      const double v = low + (high - low) * next_unit();
      if (v > low && v < high) return v;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace zeroone
