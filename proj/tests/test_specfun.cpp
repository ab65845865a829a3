// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "neel/error.hpp"
#include "neel/specfun.hpp"
#include "oracles.hpp"

using namespace neel;

namespace {
constexpr double kEulerGamma = 0.57721566490153286061;
}

TEST_CASE("I0 is minus the Euler-Mascheroni constant") {
  const auto v = eval_I0();
  CHECK(std::abs(v.value + kEulerGamma) <= 1e-8);
  CHECK(std::abs(v.value + std::numbers::egamma) <= 1e-8);
  CHECK(v.error >= 0.0);
}

TEST_CASE("I matches an adaptive Simpson oracle") {
  for (double t : {0.05, 0.3, 1.0, 4.0, 20.0}) {
    CAPTURE(t);
    CHECK(std::abs(eval_I(t).value - oracle::I_oracle(t)) <= 1e-8);
  }
}

TEST_CASE("I sandwich and decay bounds") {
  const double I0 = eval_I0().value;
  for (double t : {1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0}) {
    CAPTURE(t);
    const double s = eval_I(t).value + std::log(t) - I0;
    CHECK(s >= -1e-9);
    CHECK(s <= std::numbers::pi * t / 2 + 1e-9);
  }
  for (double t : {0.1, 1.0, 10.0, 100.0}) CHECK(eval_I(t).value <= 1.0 / (t * t) + 1e-12);
  CHECK(eval_I(10.0).value <= 0.01);
}

TEST_CASE("I(t) + log t tends to I0") {
  const double t = 1e-4;
  CHECK(std::abs(eval_I(t).value + std::log(t) - eval_I0().value) <= 1e-3);
}

TEST_CASE("oscillatory representation agrees") {
  for (double t : {0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    CAPTURE(t);
    CHECK(std::abs(eval_I_alt(t).value - eval_I(t).value) <= 1e-6);
  }
}

TEST_CASE("derivatives: signs, limits and finite differences") {
  for (double t : {0.1, 1.0, 10.0}) {
    CAPTURE(t);
    const double d1 = eval_I_prime(t).value;
    const double d2 = eval_I_dprime(t).value;
    CHECK(d1 < 0.0);
    CHECK(d2 > 0.0);
    const double h = 1e-4 * t;
    CHECK(std::abs(d1 - oracle::derivative([](double s) { return eval_I(s).value; }, t, h)) <= 1e-6 * (1 + std::abs(d1)));
    CHECK(std::abs(d2 - oracle::derivative([](double s) { return eval_I_prime(s).value; }, t, h)) <=
          1e-5 * (1 + std::abs(d2)));
  }
  CHECK(std::abs(0.01 * eval_I_prime(0.01).value + 1.0) <= 0.02);
  CHECK(std::abs(std::pow(50.0, 3) * eval_I_prime(50.0).value + 2.0) <= 0.04);
}

TEST_CASE("ratio root round trip") {
  for (double q : {0.126, 0.2, 1.0 / 3.0, 0.45, 0.49}) {
    CAPTURE(q);
    const double t = ratio_root(q);
    CHECK(t > 0.0);
    CHECK(std::abs(I_prime_ratio(t) - q) <= 1e-8);
  }
  CHECK(ratio_root(0.126) > ratio_root(0.49));
  CHECK_THROWS_AS(ratio_root(0.5), DomainError);
  CHECK_THROWS_AS(ratio_root(0.125), DomainError);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(eval_I(0.0), DomainError);
  CHECK_THROWS_AS(eval_I(-1.0), DomainError);
  CHECK_THROWS_AS(eval_I_alt(0.0), DomainError);
  CHECK_THROWS_AS(eval_I_prime(-2.0), DomainError);
}

TEST_CASE("tiny t uses the asymptotic midpoint") {
  const double t = 1e-8;
  const auto v = eval_I(t);
  CHECK(std::abs(v.value - (std::log(1 / t) + eval_I0().value + std::numbers::pi * t / 4)) <= 1e-12);
  CHECK(v.error <= std::numbers::pi * t / 4 + 1e-15);
}
