// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "neel/error.hpp"
#include "neel/geometry.hpp"
#include "neel/profiles.hpp"

using namespace neel;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("decomposition of a full turn") {
  StepFunction s{kPi / 4, -kPi / 4, {{0.0, 2 * kPi}}};
  const auto d = decompose(s);
  REQUIRE(d.atoms.size() == 2);
  CHECK(d.atoms[0].sigma == doctest::Approx(kPi / 2));
  CHECK(d.atoms[1].sigma == doctest::Approx(3 * kPi / 2));
  CHECK(std::abs(d.atoms[0].sigma + d.atoms[1].sigma) == doctest::Approx(2 * kPi));
  CHECK(iota(s) == 2);
  CHECK(eta(s) == doctest::Approx(3 * kPi / 2));
  CHECK_FALSE(is_simple(s));
  CHECK_THROWS_AS(transition_profile(s), DomainError);
}

TEST_CASE("single elementary jumps") {
  const double alpha = 1.0;
  StepFunction up{alpha, -alpha, {{0.3, 2 * alpha}}};
  CHECK(iota(up) == 1);
  StepFunction down{alpha, -alpha, {{0.3, -(2 * kPi - 2 * alpha)}}};
  const auto d = decompose(down);
  REQUIRE(d.atoms.size() == 1);
  CHECK(d.atoms[0].sigma == doctest::Approx(-2 * (kPi - alpha)));
}

TEST_CASE("constant functions") {
  StepFunction c{0.7, 0.7, {}};
  CHECK(iota(c) == 0);
  CHECK(eta(c) == 0.0);
  CHECK(is_simple(c));
  CHECK(transition_profile(c).a.empty());
}

TEST_CASE("three separated elementary jumps") {
  const double alpha = 0.9;
  StepFunction s{alpha, -alpha, {{-0.5, 2 * alpha}, {0.0, 2 * (kPi - alpha)}, {0.5, 2 * alpha}}};
  CHECK(iota(s) == 3);
  CHECK(is_simple(s));
  const auto tp = transition_profile(s);
  CHECK(tp.d == std::vector<int>{1, -1, 1});
}

TEST_CASE("sign rule for generic alpha") {
  const double alpha = kPi / 3;
  StepFunction s{alpha, -alpha, {{-0.5, 2 * alpha}, {0.2, 2 * kPi - 2 * alpha}}};
  const auto tp = transition_profile(s);
  CHECK(tp.a == std::vector<double>{-0.5, 0.2});
  CHECK(tp.d == std::vector<int>{1, -1});
}

TEST_CASE("left-limit rule at alpha = pi/2") {
  const double alpha = kPi / 2;
  StepFunction s{alpha, -alpha, {{0.0, kPi}}};
  CHECK(transition_profile(s).d == std::vector<int>{1});
  StepFunction t{alpha, alpha, {{0.0, kPi}}};
  CHECK(transition_profile(t).d == std::vector<int>{-1});
  StepFunction u{alpha, alpha, {{0.0, -kPi}}};
  CHECK(transition_profile(u).d == std::vector<int>{1});
}

TEST_CASE("raw 2 pi jumps are never simple") {
  for (double alpha : {0.4, 1.3, kPi / 2, 2.5}) {
    StepFunction s{alpha, alpha, {{0.1, -2 * kPi}}};
    CHECK_FALSE(is_simple(s));
  }
}

TEST_CASE("round trip and eta identity on random steps") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0, 1);
  auto plateau = [](long q, double alpha) {
    const long m = q >= 0 ? q / 2 : -((-q + 1) / 2);
    return 2 * kPi * static_cast<double>(m) + (q - 2 * m == 1 ? alpha : -alpha);
  };
  for (int trial = 0; trial < 200; ++trial) {
    const double alpha = 0.1 + 2.9 * u(rng);
    long q = static_cast<long>(std::floor(6 * u(rng))) - 3;
    StepFunction s{alpha, plateau(q, alpha), {}};
    double b = -1;
    const int n = 1 + static_cast<int>(5 * u(rng));
    for (int k = 0; k < n; ++k) {
      b += u(rng) < 0.2 ? 0.0 : 0.3 * u(rng) + 0.01;
      long target = q;
      while (target == q) target = q + static_cast<long>(std::floor(9 * u(rng))) - 4;
      s.jumps.push_back({b, plateau(target, alpha) - plateau(q, alpha)});
      q = target;
    }
    REQUIRE_NOTHROW(s.validate());
    const auto dec = decompose(s);
    const auto rec = recompose(dec);
    const auto merged = merged_jumps(s);
    REQUIRE(rec.size() == merged.size());
    for (std::size_t k = 0; k < rec.size(); ++k) {
      CHECK(rec[k].b == merged[k].b);
      CHECK(std::abs(rec[k].size - merged[k].size) <= 1e-12);
    }
    for (std::size_t k = 1; k < dec.atoms.size(); ++k) {
      if (dec.atoms[k].b == dec.atoms[k - 1].b) {
        CHECK(std::abs(std::abs(dec.atoms[k].sigma + dec.atoms[k - 1].sigma) - 2 * kPi) <= 1e-9);
      }
    }
    CHECK(eta(s) >= 0.0);
    if (is_simple(s)) {
      const auto c = to_wall_config(s, Model::Unconfined);
      CHECK(std::abs(eta(s) - kPi / 2 * gammas(c).Gamma) <= 1e-12);
    }
  }
}

TEST_CASE("invalid steps are rejected") {
  CHECK_THROWS_AS((StepFunction{1.0, 0.3, {}}.validate()), DomainError);
  CHECK_THROWS_AS((StepFunction{1.0, 1.0, {{0.0, 0.5}}}.validate()), DomainError);
  CHECK_THROWS_AS((StepFunction{1.0, 1.0, {{0.0, 0.0}}}.validate()), DomainError);
  CHECK_THROWS_AS((StepFunction{1.0, 1.0, {{0.5, -2.0}, {0.1, 2.0}}}.validate()), DomainError);
  CHECK_THROWS_AS((StepFunction{0.0, 0.0, {}}.validate()), DomainError);
}

TEST_CASE("json round trip") {
  StepFunction s{1.0, -1.0, {{0.2, 2.0}, {0.4, -2.0}}};
  const auto back = step_from_json(to_json(s));
  CHECK(back.alpha == s.alpha);
  CHECK(back.base == s.base);
  REQUIRE(back.jumps.size() == 2);
  CHECK(back.jumps[1].size == -2.0);
  CHECK_THROWS_AS(step_from_json(nlohmann::json{{"alpha", 1.0}}), DomainError);
}

TEST_CASE("alternating helper") {
  CHECK(alternating(3, 1) == std::vector<int>{1, -1, 1});
  CHECK(alternating(2, -1) == std::vector<int>{-1, 1});
}
