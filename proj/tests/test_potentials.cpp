// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "neel/error.hpp"
#include "neel/potentials.hpp"
#include "neel/specfun.hpp"
#include "oracles.hpp"

using namespace neel;

namespace {
constexpr double kPi = std::numbers::pi;

double v_oracle(double x1, double x2) {
  const double a = std::abs(x1);
  return oracle::simpson(
      [&](double t) { return std::exp(-t * a) * (std::sin(t * x2) + t * std::cos(t * x2)) / (1 + t * t); }, 0.0,
      60.0 / a, 1e-12);
}

double u_oracle(double x1, double x2) {
  const double a = std::abs(x1);
  const double s = x1 > 0 ? -1.0 : 1.0;
  return s * oracle::simpson(
                 [&](double t) { return std::exp(-t * a) * (std::cos(t * x2) - t * std::sin(t * x2)) / (1 + t * t); },
                 0.0, 60.0 / a, 1e-12);
}
}  // namespace

TEST_CASE("unconfined v: trace, parity and integral oracle") {
  for (double x : {0.1, 1.0}) CHECK(std::abs(v_unconfined(x, 0.0).value - eval_I(x).value) <= 1e-8);
  for (auto [x1, x2] : {std::pair{0.7, 0.4}, std::pair{1.5, 2.0}, std::pair{3.0, 0.1}}) {
    CAPTURE(x1);
    CAPTURE(x2);
    CHECK(std::abs(v_unconfined(x1, x2).value - v_oracle(x1, x2)) <= 1e-7);
    CHECK(std::abs(u_unconfined(x1, x2).value - u_oracle(x1, x2)) <= 1e-7);
    CHECK(v_unconfined(-x1, x2).value == doctest::Approx(v_unconfined(x1, x2).value).epsilon(1e-10));
    CHECK(u_unconfined(-x1, x2).value == doctest::Approx(-u_unconfined(x1, x2).value).epsilon(1e-10));
  }
  CHECK(std::abs(v_unconfined(100.0, 0.0).value) <= 2e-4);
  CHECK(std::abs(v_unconfined(60.0, 80.0).value - v_oracle(60.0, 80.0)) <= 1e-8);
  CHECK_THROWS_AS(v_unconfined(0.0, 0.0), DomainError);
}

TEST_CASE("unconfined u: axis, trace limit and bound") {
  for (double y : {0.1, 1.0, 5.0}) CHECK(std::abs(u_unconfined(0.0, y).value) <= 1e-12);
  CHECK(std::abs(u_unconfined(1e-6, 0.0).value + kPi / 2) <= 1e-4);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-4, 4), w(0, 4);
  for (int i = 0; i < 50; ++i) CHECK(std::abs(u_unconfined(u(rng), w(rng) + 1e-3).value) <= kPi / 2 + 1e-12);
}

TEST_CASE("unconfined u approaches the angle function near the wall") {
  double C = 0.0;
  for (double r : {1e-1, 1e-2, 1e-3}) {
    for (double th : {0.3, 1.2, 2.5}) {
      const double x1 = r * std::cos(th), x2 = r * std::sin(th);
      const double w0 = -std::atan2(x1, x2);
      C = std::max(C, std::abs(u_unconfined(x1, x2).value - w0) / (r * std::log(1 / r + 2)));
    }
  }
  CHECK(C < 5.0);
}

TEST_CASE("strip map inverse") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3, 3), w(0.01, 3);
  for (int i = 0; i < 200; ++i) {
    const std::complex<double> z(u(rng), w(rng));
    CHECK(std::abs(strip_map(strip_inverse(z)) - z) <= 1e-12 * (1 + std::abs(z)));
  }
}

TEST_CASE("confined u: bound, trace and decay") {
  CHECK(std::abs(u_confined(1e3, 0.0).value) <= 1e-2);
  CHECK(std::abs(u_confined(0.0, 1e3).value) <= 1e-2);
  CHECK(std::abs(u_confined(-0.5, 0.0).value - kPi / 2) <= 1e-9);
  CHECK(std::abs(u_confined(0.5, 0.0).value + kPi / 2) <= 1e-9);
  // Outside [-1, 1] the trace follows the imaginary axis of the strip: cos s = -1/x1.
  CHECK(std::abs(u_confined(2.0, 0.0).value + kPi / 6) <= 1e-9);
  CHECK(std::abs(u_confined(-2.0, 0.0).value - kPi / 6) <= 1e-9);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3), w(0.001, 3);
  for (int i = 0; i < 100; ++i) CHECK(std::abs(u_confined(u(rng), w(rng)).value) <= kPi / 2 + 1e-12);
}

TEST_CASE("harmonicity and conjugacy residuals") {
  const auto rect = rect_region(0.5, 2.0, 0.5, 2.0, 1e-3, 5);
  CHECK(harmonicity_residual([](double a, double b) { return v_unconfined(a, b).value; }, rect) <= 1e-3);
  CHECK(conjugacy_residual([](double a, double b) { return unconfined_pair(a, b); }, rect) <= 1e-3);
  const auto ann = half_annulus_region(0.0, 0.2, 0.8, 1e-3, 4, 6);
  CHECK(harmonicity_residual([](double a, double b) { return u_confined(a, b).value; }, ann) <= 1e-3);
  CHECK(conjugacy_residual([](double a, double b) { return confined_pair(a, b); }, ann) <= 1e-3);
}

TEST_CASE("superposition and trace jumps") {
  WallConfig one{Model::Unconfined, {0.0}, {1}, kPi / 3};
  CHECK(u_star(one, 0.4, 0.3).value == doctest::Approx(0.5 * u_unconfined(0.4, 0.3).value));
  WallConfig c{Model::Confined, {-0.4, 0.3}, {1, -1}, 1.0};
  const auto g = gammas(c);
  for (std::size_t n = 0; n < 2; ++n) {
    const double s = 1e-7;
    const double jump = u_star(c, c.a[n] + s, 0.0).value - u_star(c, c.a[n] - s, 0.0).value;
    CHECK(std::abs(jump + g.gamma[n] * kPi) <= 1e-5);
  }
  const double mid1 = u_star(c, 0.0, 0.0).value, mid2 = u_star(c, -0.1, 0.0).value;
  CHECK(std::abs(mid1 - mid2) <= 1e-9);
}

TEST_CASE("cross term identity") {
  for (double b : {0.5, 1.0, 10.0}) {
    const auto ct = cross_term(b);
    CHECK(std::abs(ct.total - kPi * eval_I(b).value) <= 1e-6);
  }
  CHECK(kPi * eval_I(10.0).value <= kPi / 100);
}

TEST_CASE("boundary square integral") { CHECK(std::abs(boundary_square().value - kPi) <= 1e-4); }

TEST_CASE("annulus energy grows like pi log(R/r)") {
  const double e1 = dirichlet_annulus(Model::Confined, 0.0, 0.1, 1.0).value;
  const double e2 = dirichlet_annulus(Model::Confined, 0.0, 0.01, 1.0).value;
  CHECK(e1 <= kPi * std::log(10.0) + kPi / 2 * std::log(76.0));
  CHECK(e2 <= kPi * std::log(100.0) + kPi / 2 * std::log(76.0));
  CHECK(std::abs((e2 - e1) - kPi * std::log(10.0)) <= 0.02 * kPi * std::log(10.0));
}

TEST_CASE("near-wall extrapolation recovers a fitted line") {
  const std::vector<double> r = {0.2, 0.1, 0.05, 0.025};
  std::vector<double> v;
  for (double x : r) v.push_back(1.5 + 0.7 * x * std::log(1 / x) - 0.3 * x);
  const auto e = extrapolate_r_log_r(r, v);
  CHECK(e.limit == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(e.slope == doctest::Approx(0.7).epsilon(1e-8));
}
