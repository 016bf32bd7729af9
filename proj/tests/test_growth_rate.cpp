#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "zeroone/growth_rate.hpp"
#include "zeroone/zero_one_test.hpp"

using namespace zeroone;
using Catch::Approx;

namespace {
MsdCurve curve_of(double (*f)(double), std::size_t n = 100) {
  MsdCurve m{1.0, {}};
  for (std::size_t i = 1; i <= n; ++i) m.values.push_back(f(static_cast<double>(i)));
  return m;
}
}  // namespace

TEST_CASE("regression slope of exact power laws", "[growth][regression]") {
  auto linear = growth_rate_regression(curve_of([](double n) { return n; }));
  CHECK(linear.k == Approx(1.0).margin(1e-12));
  CHECK_FALSE(linear.degenerate);
  CHECK(linear.method == GrowthMethod::regression);

  auto quadratic = growth_rate_regression(curve_of([](double n) { return n * n; }));
  CHECK(quadratic.k == Approx(2.0).margin(1e-12));  // raw slope, not clamped

  auto flat = growth_rate_regression(curve_of([](double) { return 7.0; }));
  CHECK(flat.k == 0.0);
}

TEST_CASE("regression skips zero points and flags too few", "[growth][regression]") {
  MsdCurve m{1.0, {0.0, 2.0, 0.0, 4.0}};
  // Usable points n=2 and n=4: slope of log M vs log n is exactly 1.
  auto g = growth_rate_regression(m);
  CHECK_FALSE(g.degenerate);
  CHECK(g.k == Approx(1.0).margin(1e-12));

  auto one_point = growth_rate_regression(MsdCurve{1.0, {0.0, 0.0, 5.0}});
  CHECK(one_point.degenerate);
  CHECK(one_point.k == 0.0);

  auto zeros = growth_rate_regression(MsdCurve{1.0, {0.0, 0.0, 0.0}});
  CHECK(zeros.degenerate);
  CHECK(zeros.k == 0.0);
}

TEST_CASE("correlation method on linear, flat and decreasing curves", "[growth][correlation]") {
  auto up = growth_rate_correlation(curve_of([](double n) { return 2.0 * n; }));
  CHECK(up.k == Approx(1.0).margin(1e-12));
  CHECK_FALSE(up.degenerate);

  auto flat = growth_rate_correlation(curve_of([](double) { return 3.5; }));
  CHECK(flat.degenerate);
  CHECK(flat.k == 0.0);

  auto down = growth_rate_correlation(curve_of([](double n) { return -3.0 * n + 500.0; }));
  CHECK(down.k == Approx(-1.0).margin(1e-12));
  CHECK(std::abs(down.k) == Approx(1.0).margin(1e-12));
}

TEST_CASE("growth rate needs at least two points", "[growth]") {
  CHECK_THROWS_AS(growth_rate_correlation(MsdCurve{1.0, {1.0}}), Error);
  CHECK_THROWS_AS(growth_rate_regression(MsdCurve{1.0, {1.0}}), Error);
}

TEST_CASE("correlation agrees with an independent Pearson oracle and stays in [-1,1]",
          "[growth][correlation][property]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    MsdCurve m{1.0, {}};
    std::vector<double> x;
    const std::size_t n = 2 + trial % 60;
    for (std::size_t i = 1; i <= n; ++i) {
      m.values.push_back(u(rng) + (trial % 3) * static_cast<double>(i));
      x.push_back(static_cast<double>(i));
    }
    const auto g = growth_rate_correlation(m);
    CHECK(g.k >= -1.0);
    CHECK(g.k <= 1.0);
    CHECK(g.k == Approx(oracle::pearson(x, m.values)).margin(1e-12));
  }
}

TEST_CASE("K_c is invariant under scaling the series", "[growth][property]") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> log_alpha(-6.0, 6.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = oracle::random_series(rng, 60, 200);
    const double c = oracle::random_angle(rng);
    const double alpha = std::exp(log_alpha(rng));
    std::vector<double> scaled(s);
    for (double& v : scaled) v *= alpha;
    const std::size_t n0 = s.size() / 10;
    for (auto method : {GrowthMethod::regression, GrowthMethod::correlation}) {
      const auto a = growth_rate_at(TimeSeries(s), c, n0, method);
      const auto b = growth_rate_at(TimeSeries(scaled), c, n0, method);
      CHECK(std::abs(a.k - b.k) <= 1e-9);
      CHECK(a.degenerate == b.degenerate);
    }
  }
}
