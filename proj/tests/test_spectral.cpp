#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <thread>

#include "oracles.hpp"
#include "zeroone/signals.hpp"
#include "zeroone/spectral.hpp"

using namespace zeroone;
using Catch::Approx;

TEST_CASE("pure tone peaks at its frequency with power exactly 1", "[psd]") {
  const auto est = psd(signals::sine(100, 5000, 5000));
  REQUIRE(est.frequencies.size() == 2501);
  REQUIRE(est.power.size() == 2501);
  CHECK(est.frequencies.front() == 0.0);
  CHECK(est.frequencies.back() == 2500.0);
  CHECK(std::abs(peak_frequency(est) - 100.0) <= 1.0);
  CHECK(*std::max_element(est.power.begin(), est.power.end()) == 1.0);
  for (std::size_t i = 1; i < est.frequencies.size(); ++i) CHECK(est.frequencies[i] > est.frequencies[i - 1]);
}

TEST_CASE("quasi-periodic PSD has peaks at 100 Hz and 100*sqrt(2) Hz", "[psd]") {
  const auto est = psd(signals::quasi_periodic(5000, 5000));
  const auto peaks = peaks_above(est, 0.5);
  REQUIRE(peaks.size() == 2);
  CHECK(est.frequencies[peaks[0]] == Approx(100.0).margin(1.0));
  CHECK(est.frequencies[peaks[1]] == Approx(100.0 * std::sqrt(2.0)).margin(1.0));
}

TEST_CASE("zero series gives all-zero power", "[psd]") {
  const auto est = psd(TimeSeries(std::vector<double>(64, 0.0), 100.0));
  for (double p : est.power) CHECK(p == 0.0);
}

TEST_CASE("PSD preconditions", "[psd]") {
  try {
    psd(TimeSeries(std::vector<double>(64, 1.0)));
    FAIL("expected missing-sample-rate");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::missing_sample_rate);
  }
  CHECK_THROWS_AS(psd(TimeSeries(std::vector<double>(7, 1.0), 10.0)), Error);
}

TEST_CASE("PSD matches a direct DFT oracle", "[psd][property]") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = oracle::random_series(rng, 8, 300);
    const auto est = psd(TimeSeries(s, 1000.0));
    const auto ref = oracle::periodogram(s);
    REQUIRE(est.power.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) CHECK(est.power[k] == Approx(ref[k]).margin(1e-9));
    for (double p : est.power) {
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
}

TEST_CASE("PSD may run on several threads at once", "[psd]") {
  const auto s = signals::quasi_periodic(5000, 4096);
  const auto expected = psd(s, Window::hann);
  std::vector<PsdEstimate> got(4);
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < got.size(); ++i) pool.emplace_back([&, i] { got[i] = psd(s, Window::hann); });
  }
  for (const auto& g : got) CHECK(g.power == expected.power);
}

TEST_CASE("normalize_amplitude", "[normalize]") {
  const auto a = normalize_amplitude(TimeSeries({-1.0, 0.0, 1.0}));
  CHECK(std::vector<double>(a.samples().begin(), a.samples().end()) == std::vector<double>{0.0, 0.5, 1.0});
  const auto b = normalize_amplitude(TimeSeries({5.0, 5.0, 5.0}));
  CHECK(std::vector<double>(b.samples().begin(), b.samples().end()) == std::vector<double>{0.5, 0.5, 0.5});
  const auto c = normalize_amplitude(TimeSeries({2.0, 4.0}, 10.0, "x"));
  CHECK(std::vector<double>(c.samples().begin(), c.samples().end()) == std::vector<double>{0.0, 1.0});
  CHECK(c.sample_rate() == 10.0);
  CHECK(c.label() == "x");
}

TEST_CASE("normalize_amplitude is idempotent", "[normalize][property]") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = oracle::random_series(rng, 1, 500);
    const auto once = normalize_amplitude(TimeSeries(s));
    const auto twice = normalize_amplitude(once);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(once.samples()[i] - twice.samples()[i]) <= 1e-12);
  }
}
