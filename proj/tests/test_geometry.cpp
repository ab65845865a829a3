// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "neel/error.hpp"
#include "neel/geometry.hpp"

using namespace neel;

TEST_CASE("varrho") {
  CHECK(varrho(0.0, 0.3) == doctest::Approx(0.3));
  CHECK(varrho(0.4, 0.4) == 0.0);
  CHECK(varrho(0.2, -0.5) == doctest::Approx(varrho(-0.5, 0.2)));
  CHECK_THROWS_AS(varrho(1.0, 0.0), DomainError);
}

TEST_CASE("varrho is Mobius invariant") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng), y = u(rng), c = u(rng);
    const double px = mobius(c, x).real();
    const double py = mobius(c, y).real();
    CHECK(std::abs(varrho(px, py) - varrho(x, y)) <= 1e-12);
  }
}

TEST_CASE("mobius") {
  const std::complex<double> z(0.3, 0.7);
  CHECK(std::abs(mobius(0.0, z) - z) <= 1e-15);
  CHECK(std::abs(mobius(0.4, -0.4)) <= 1e-15);
  CHECK(std::abs(mobius(-0.6, mobius(0.6, z)) - z) <= 1e-12);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3), b(-0.9, 0.9);
  for (int i = 0; i < 100; ++i) {
    const std::complex<double> w(u(rng), std::abs(u(rng)) + 1e-3);
    CHECK(mobius(b(rng), w).imag() > 0.0);
  }
}

TEST_CASE("rho") {
  WallConfig c{Model::Confined, {0.0}, {1}, 1.0};
  CHECK(rho(c) == doctest::Approx(1.0));
  c.a = {-0.5, 0.5};
  c.d = {1, -1};
  CHECK(rho(c) == doctest::Approx(0.5));
  WallConfig u{Model::Unconfined, {0.0, 3.0, 4.0}, {1, -1, 1}, 1.0};
  CHECK(rho(u) == doctest::Approx(0.5));
  u.a = {0.0};
  u.d = {1};
  CHECK(rho(u) == kNoGap);
  WallConfig empty{Model::Confined, {}, {}, 1.0};
  CHECK(rho(empty) == kNoGap);
}

TEST_CASE("gammas") {
  WallConfig c{Model::Confined, {-0.5, 0.5}, {1, -1}, std::numbers::pi / 2};
  auto g = gammas(c);
  CHECK(g.gamma[0] == doctest::Approx(1.0));
  CHECK(g.gamma[1] == doctest::Approx(-1.0));
  CHECK(g.Gamma == doctest::Approx(2.0));
  c = {Model::Confined, {0.0}, {1}, std::numbers::pi / 3};
  CHECK(gammas(c).Gamma == doctest::Approx(0.25));
  c = {Model::Confined, {0.0}, {-1}, 2 * std::numbers::pi / 3};
  CHECK(gammas(c).gamma[0] == doctest::Approx(-0.5));
  CHECK(gammas(c).Gamma == doctest::Approx(0.25));
}

TEST_CASE("validation is strict") {
  CHECK_THROWS_AS((WallConfig{Model::Confined, {0.5, 0.1}, {1, -1}, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((WallConfig{Model::Confined, {1.0}, {1}, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((WallConfig{Model::Unconfined, {0.0}, {2}, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((WallConfig{Model::Unconfined, {0.0}, {1}, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((WallConfig{Model::Unconfined, {0.0, 1.0}, {1}, 1.0}.validate()), DomainError);
  CHECK_NOTHROW((WallConfig{Model::Unconfined, {-5.0, 7.0}, {1, 1}, 1.0}.validate()));
  CHECK_NOTHROW((WallConfig{Model::Confined, {}, {}, 1.0}.validate()));
}

TEST_CASE("alternating signs") {
  CHECK(alternating(3, 1) == std::vector<int>{1, -1, 1});
  CHECK(alternating(2, -1) == std::vector<int>{-1, 1});
  CHECK(alternating(1, 1) == std::vector<int>{1});
  CHECK(is_alternating({1, -1, 1}));
  CHECK_FALSE(is_alternating({1, 1}));
}
