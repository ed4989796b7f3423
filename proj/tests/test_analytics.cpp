#include <catch_amalgamated.hpp>

#include <cmath>

#include "bumproute/analytics.hpp"
#include "bumproute/errors.hpp"
#include "oracles.hpp"

using namespace bumproute;
using namespace bumproute::analytics;
using Catch::Matchers::WithinAbs;

namespace {
// Reference values from 40-digit evaluation of the closed forms.
constexpr double kOmegaAt1 = 1.4359911241769174;    // (2/pi)(pi/6 + sqrt 3)
constexpr double kCdfAt1 = 0.80449889052211468;     // 1/2 + sqrt(3)/(4 pi) + 1/6
constexpr double kQuantile075 = 0.80794550659903442;
constexpr double kOmegaAtQ075 = 1.3786196587212066;
}  // namespace

TEST_CASE("omega", "[analytics]") {
  CHECK_THAT(omega(0.0), WithinAbs(4.0 / kPi, 1e-15));
  CHECK(omega(2.0) == 2.0);
  CHECK(omega(-2.0) == 2.0);
  CHECK_THAT(omega(1.0), WithinAbs(kOmegaAt1, 1e-14));
  CHECK_THAT(omega(1.0), WithinAbs(2.0 / kPi * (kPi / 6.0 + std::sqrt(3.0)), 1e-14));
  CHECK_THROWS_AS(omega(2.1), DomainError);
  CHECK_THROWS_AS(omega(std::nan("")), DomainError);
  // clamped within slack
  CHECK(omega(2.0 + 1e-16) == 2.0);
  for (int i = -200; i <= 200; ++i) {
    const double u = i / 100.0;
    REQUIRE(omega(u) >= std::fabs(u) - 1e-15);
    REQUIRE(omega(u) <= 2.0 + 1e-15);
  }
}

TEST_CASE("semicircle cdf", "[analytics]") {
  CHECK(semicircle_cdf(0.0) == 0.5);
  CHECK(semicircle_cdf(2.0) == 1.0);
  CHECK(semicircle_cdf(-2.0) == 0.0);
  CHECK_THAT(semicircle_cdf(1.0), WithinAbs(kCdfAt1, 1e-15));
  CHECK_THROWS_AS(semicircle_cdf(-2.5), DomainError);
  double prev = -1.0;
  for (int i = 0; i <= 4000; ++i) {
    const double u = -2.0 + i / 1000.0;
    const double f = semicircle_cdf(u);
    REQUIRE(f > prev);
    prev = f;
  }
}

TEST_CASE("semicircle quantile", "[analytics]") {
  CHECK(semicircle_quantile(0.5) == 0.0);
  CHECK(semicircle_quantile(0.0) == -2.0);
  CHECK(semicircle_quantile(1.0) == 2.0);
  CHECK_THAT(semicircle_quantile(0.75), WithinAbs(kQuantile075, 1e-12));
  CHECK_THAT(semicircle_quantile(0.75), WithinAbs(oracle::quantile(0.75), 1e-12));
  CHECK_THROWS_AS(semicircle_quantile(1.5), DomainError);
  CHECK_THROWS_AS(semicircle_quantile(-0.1), DomainError);
}

TEST_CASE("quantile and cdf round trips", "[analytics][property]") {
  for (int i = 0; i <= 10000; ++i) {
    const double p = i / 10000.0;
    REQUIRE_THAT(semicircle_cdf(semicircle_quantile(p)), WithinAbs(p, 1e-10));
  }
  for (int i = 0; i <= 10000; ++i) {
    const double u = -1.999 + 3.998 * i / 10000.0;
    REQUIRE_THAT(semicircle_quantile(semicircle_cdf(u)), WithinAbs(u, 1e-9));
  }
}

TEST_CASE("(omega(u) - u)/2 is weakly decreasing", "[analytics][property]") {
  double prev = 3.0;
  for (int i = 0; i <= 4000; ++i) {
    const double u = -2.0 + i / 1000.0;
    const double y = 0.5 * (omega(u) - u);
    REQUIRE(y <= prev + 1e-15);
    prev = y;
  }
  // omega' = (2/pi) asin(u/2), checked by central differences
  for (double u : {-1.5, -0.3, 0.0, 0.7, 1.9}) {
    const double h = 1e-6;
    CHECK_THAT((omega(u + h) - omega(u - h)) / (2 * h), WithinAbs(omega_derivative(u), 1e-8));
  }
}

TEST_CASE("curve_params", "[analytics]") {
  SECTION("alpha = 0") {
    for (double t : {0.1, 0.5, 1.0}) {
      const auto p = curve_params(0.0, t);
      CHECK_THAT(p.u, WithinAbs(-2.0 * std::sqrt(t), 1e-15));
      CHECK_THAT(p.v, WithinAbs(2.0 * std::sqrt(t), 1e-15));
      CHECK(p.x == 0.0);
      CHECK_THAT(p.y, WithinAbs(2.0 * std::sqrt(t), 1e-15));
    }
  }
  SECTION("t = alpha") {
    for (double a : {0.1, 0.4, 0.9}) {
      const auto p = curve_params(a, a);
      CHECK_THAT(p.u, WithinAbs(2.0 * std::sqrt(a), 1e-15));
      CHECK_THAT(p.v, WithinAbs(2.0 * std::sqrt(a), 1e-15));
      CHECK_THAT(p.x, WithinAbs(2.0 * std::sqrt(a), 1e-15));
      CHECK(p.y == 0.0);
    }
  }
  SECTION("alpha = 1/2, t = 1") {
    const auto p = curve_params(0.5, 1.0);
    CHECK(p.u == 0.0);
    CHECK_THAT(p.v, WithinAbs(4.0 / kPi, 1e-15));
    CHECK_THAT(p.x, WithinAbs(2.0 / kPi, 1e-15));
    CHECK_THAT(p.y, WithinAbs(2.0 / kPi, 1e-15));
  }
  CHECK_THROWS_AS(curve_params(0.5, 0.4), DomainError);
  CHECK_THROWS_AS(curve_params(0.5, 1.1), DomainError);
  CHECK_THROWS_AS(curve_params(1.0, 1.0), DomainError);
}

TEST_CASE("points for fixed t lie on the scaled limit shape", "[analytics][property]") {
  for (double t : {0.05, 0.3, 0.64, 1.0})
    for (int i = 0; i <= 50; ++i) {
      const double a = t * i / 50.0;
      if (a >= 1.0) continue;
      const auto p = curve_params(a, t);
      REQUIRE_THAT(p.v, WithinAbs(std::sqrt(t) * omega(p.u / std::sqrt(t)), 1e-12));
      REQUIRE(p.y >= 0.0);
      REQUIRE(std::fabs(p.u) <= 2.0 * std::sqrt(t) + 1e-15);
    }
}

TEST_CASE("y_alpha is strictly increasing in t", "[analytics][property]") {
  for (double a : {0.0, 0.1, 0.5, 0.9, 0.99}) {
    CHECK(y_of(a, std::max(a, 0.0)) == 0.0);
    CHECK_THAT(y_of(a, 1.0), WithinAbs(kappa(a), 1e-15));
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double t = a + (1.0 - a) * i / 1000.0;
      const double y = y_of(a, t);
      REQUIRE(y > prev);
      prev = y;
    }
  }
}

TEST_CASE("kappa and endpoint", "[analytics]") {
  CHECK(kappa(0.0) == 2.0);
  CHECK(kappa(1.0) == 0.0);
  CHECK_THAT(kappa(0.5), WithinAbs(2.0 / kPi, 1e-15));
  CHECK_THROWS_AS(kappa(1.2), DomainError);

  CHECK(endpoint(0.5) == std::pair{0.0, omega(0.0)});
  CHECK(endpoint(0.0) == std::pair{-2.0, 2.0});
  const auto [u, v] = endpoint(0.75);
  CHECK_THAT(u, WithinAbs(kQuantile075, 1e-12));
  CHECK_THAT(v, WithinAbs(kOmegaAtQ075, 1e-12));

  double prev = 3.0;
  for (int i = 0; i <= 1000; ++i) {
    const double a = i / 1000.0;
    const double k = kappa(a);
    REQUIRE(k < prev);
    REQUIRE(k >= 0.0);
    REQUIRE(k <= 2.0);
    const auto [eu, ev] = endpoint(a);
    REQUIRE_THAT(k, WithinAbs(0.5 * (ev - eu), 1e-15));
    prev = k;
  }
}

TEST_CASE("y_inverse", "[analytics]") {
  CHECK(y_inverse(0.3, 0.0) == 0.3);
  CHECK(y_inverse(0.3, kappa(0.3)) == 1.0);
  CHECK_THAT(y_inverse(0.0, 1.0), WithinAbs(0.25, 1e-10));
  CHECK_THROWS_AS(y_inverse(0.3, kappa(0.3) + 1e-3), DomainError);
  CHECK_THROWS_AS(y_inverse(0.3, -1e-3), DomainError);
  for (double a : {0.05, 0.3, 0.5, 0.8, 0.95})
    for (int i = 1; i < 20; ++i) {
      const double t = a + (1.0 - a) * i / 20.0;
      REQUIRE_THAT(y_inverse(a, y_of(a, t)), WithinAbs(t, 1e-10));
    }
}

TEST_CASE("beta", "[analytics]") {
  for (double s : {0.0, 0.5, 1.0, 2.0}) CHECK(beta(0.0, s) == 0.0);
  CHECK_THAT(beta(0.5, 2.0 / kPi), WithinAbs(2.0 / kPi, 1e-12));
  CHECK_THAT(beta(0.5, 0.0), WithinAbs(std::sqrt(2.0), 1e-15));
  for (double a : {0.1, 0.3, 0.7, 0.9}) {
    CHECK_THAT(beta(a, 0.0), WithinAbs(2.0 * std::sqrt(a), 1e-12));
    const auto [u, v] = endpoint(a);
    CHECK_THAT(beta(a, kappa(a)), WithinAbs(0.5 * (u + v), 1e-12));
  }
  CHECK_THROWS_AS(beta(1.0, 0.0), DomainError);
  // degenerate alpha returns the endpoint
  const double a = 1.0 - 1e-13;
  const auto [u, v] = endpoint(a);
  CHECK(beta(a, 0.0) == 0.5 * (u + v));
}

TEST_CASE("beta agrees with an independent bisection oracle", "[analytics][oracle]") {
  for (double a : {0.1, 0.25, 0.5, 0.75, 0.9})
    for (int i = 0; i <= 10; ++i) {
      const double s = kappa(a) * i / 10.0;
      REQUIRE_THAT(beta(a, s), WithinAbs(oracle::beta(a, s), 1e-9));
    }
}

TEST_CASE("curve outputs stay in range", "[analytics][property]") {
  for (int j = 0; j < 100; ++j) {
    const double a = j / 100.0;
    const double k = kappa(a);
    for (int i = 0; i <= 20; ++i) {
      const double b = beta(a, k * i / 20.0);
      REQUIRE(std::isfinite(b));
      REQUIRE(b >= -1e-15);
      REQUIRE(b <= 2.0);
    }
  }
}

TEST_CASE("sample_curve", "[analytics]") {
  SECTION("alpha = 0") {
    const auto c = sample_curve(0.0, 3);
    REQUIRE(c.samples.size() == 3);
    CHECK(c.samples[0].s == 0.0);
    CHECK(c.samples[1].s == 1.0);
    CHECK(c.samples[2].s == 2.0);
    for (const auto& p : c.samples) CHECK(p.beta == 0.0);
  }
  SECTION("alpha = 1/2, two points") {
    const auto c = sample_curve(0.5, 2);
    REQUIRE(c.samples.size() == 2);
    CHECK(c.samples[0].s == 0.0);
    CHECK_THAT(c.samples[0].beta, WithinAbs(std::sqrt(2.0), 1e-15));
    CHECK_THAT(c.samples[1].s, WithinAbs(2.0 / kPi, 1e-15));
    CHECK_THAT(c.samples[1].beta, WithinAbs(2.0 / kPi, 1e-12));
    CHECK_THAT(c.kappa, WithinAbs(2.0 / kPi, 1e-15));
    CHECK(c.endpoint_uv.first == 0.0);
  }
  SECTION("alpha = 0.9, 101 points match beta") {
    const auto c = sample_curve(0.9, 101);
    REQUIRE(c.samples.size() == 101);
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
      if (i > 0) REQUIRE(c.samples[i].s > c.samples[i - 1].s);
      REQUIRE_THAT(c.samples[i].beta, WithinAbs(beta(0.9, c.samples[i].s), 1e-9));
    }
    CHECK(c.samples.back().s == c.kappa);
    CHECK_THAT(c.interpolate(c.samples[10].s), WithinAbs(c.samples[10].beta, 1e-15));
  }
  CHECK(sample_curve(0.4).samples.size() == kDefaultGridSize);
  CHECK_THROWS_AS(sample_curve(0.5, 1), DomainError);
  CHECK_THROWS_AS(sample_curve(1.0, 10), DomainError);
}
