#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "zeroone/msd.hpp"

using namespace zeroone;
using Catch::Approx;

namespace {
TranslationTrajectory path(std::vector<double> p, std::vector<double> q) {
  return TranslationTrajectory{1.0, std::move(p), std::move(q)};
}
}  // namespace

TEST_CASE("zero trajectory has zero MSD", "[msd]") {
  const auto m = msd(path({0, 0, 0}, {0, 0, 0}), 1);
  REQUIRE(m.n_max() == 1);
  CHECK(m.values[0] == 0.0);
}

TEST_CASE("MSD of the 3-point path uses the 1/N prefactor", "[msd]") {
  const auto traj = path({0, -2, -2}, {1, 1, -2});
  const auto ref = oracle::msd({traj.p, traj.q}, 2);
  // Oracle values, frozen: M(1) = 13/3, M(2) = 13/3.
  CHECK(ref[0] == Approx(13.0 / 3.0).epsilon(1e-15));
  CHECK(ref[1] == Approx(13.0 / 3.0).epsilon(1e-15));

  const auto m1 = msd(traj, 1);
  REQUIRE(m1.n_max() == 1);
  CHECK(m1.values[0] == Approx(13.0 / 3.0).epsilon(1e-15));
  const auto m2 = msd(traj, 2);
  CHECK(m2.values[1] == Approx(13.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("n0 must satisfy 1 <= n0 < N", "[msd]") {
  const auto traj = path({0, 1, 2}, {0, 1, 2});
  for (std::size_t n0 : {std::size_t{0}, std::size_t{3}, std::size_t{10}}) {
    try {
      msd(traj, n0);
      FAIL("expected n0-out-of-range for n0=" << n0);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::n0_out_of_range);
    }
  }
}

TEST_CASE("MSD matches the naive oracle and is non-negative", "[msd][property]") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = oracle::random_series(rng, 20, 200);
    const double c = oracle::random_angle(rng);
    const auto traj = translation_variables(TimeSeries(s), c);
    const std::size_t n0 = s.size() / 3;
    const auto m = msd(traj, n0);
    const auto ref = oracle::msd({traj.p, traj.q}, n0);
    REQUIRE(m.n_max() == n0);
    for (std::size_t i = 0; i < n0; ++i) {
      CHECK(m.values[i] >= 0.0);
      CHECK(m.values[i] == Approx(ref[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("oscillatory term subtraction removes the mean-driven part", "[msd]") {
  // A constant signal's MSD is exactly the oscillatory term up to (N-n)/N edge effects.
  const std::vector<double> s(4000, 1.0);
  const double c = 1.3;
  const auto raw = msd(translation_variables(TimeSeries(s), c), 40);
  const auto corrected = subtract_oscillatory_term(raw, s);
  for (std::size_t i = 0; i < 40; ++i) {
    CHECK(std::abs(corrected.values[i]) < 0.02 * raw.values[i] + 1e-9);
  }
}
