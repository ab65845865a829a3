// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "neel/error.hpp"
#include "neel/renorm.hpp"
#include "neel/specfun.hpp"
#include "oracles.hpp"

using namespace neel;

namespace {

constexpr double kPi = std::numbers::pi;

// Direct double-sum evaluation of the confined energy.
double W_confined_oracle(const WallConfig& c) {
  const double cs = std::cos(c.alpha);
  double W = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    const double gn = c.d[n] - cs;
    W -= kPi / 2 * gn * gn * std::log(2 - 2 * c.a[n] * c.a[n]);
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k == n) continue;
      const double gk = c.d[k] - cs;
      const double r = std::abs(c.a[k] - c.a[n]) / (1 - c.a[k] * c.a[n]);
      W -= kPi / 2 * gk * gn * std::log((1 + std::sqrt(1 - r * r)) / r);
    }
  }
  return W;
}

double W_unconfined_oracle(const WallConfig& c) {
  const double cs = std::cos(c.alpha);
  double W = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    const double gn = c.d[n] - cs;
    W += kPi / 2 * std::numbers::egamma * gn * gn;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k != n) W -= kPi / 2 * (c.d[k] - cs) * gn * oracle::I_oracle(std::abs(c.a[k] - c.a[n]));
    }
  }
  return W;
}

double sum_terms(const RenormResult& r) {
  double s = 0.0;
  for (double t : r.self_terms) s += t;
  for (std::size_t k = 0; k < r.pair_terms.size(); ++k) {
    for (std::size_t l = k + 1; l < r.pair_terms.size(); ++l) s += r.pair_terms[k][l];
  }
  return s;
}

WallConfig random_config(std::mt19937_64& rng, Model model, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  WallConfig c;
  c.model = model;
  c.alpha = 0.3 + 2.5 * u(rng);
  double x = model == Model::Confined ? -0.9 : 0.0;
  for (int k = 0; k < n; ++k) {
    x += model == Model::Confined ? 0.1 + 1.4 / n * u(rng) : 0.3 + 2.0 * u(rng);
    c.a.push_back(x);
    c.d.push_back(u(rng) < 0.5 ? 1 : -1);
  }
  return c;
}

}  // namespace

TEST_CASE("theta_N") {
  CHECK(theta_N(0) == 0.0);
  CHECK(theta_N(2) == 0.0);
  CHECK(theta_N(3) == doctest::Approx(std::acos(1.0 / 3)));
  CHECK(theta_N(4) == doctest::Approx(std::acos(1.0 / 3)));
  for (int n = 1; n < 40; ++n) CHECK(theta_N(n + 1) >= theta_N(n));
}

TEST_CASE("admissible range") {
  const auto r4 = admissible_range({1, -1, 1, -1});
  CHECK(r4.lower == doctest::Approx(theta_N(4)));
  CHECK(r4.upper == doctest::Approx(kPi - theta_N(4)));
  const auto rp = admissible_range({1, -1, 1});
  CHECK(rp.lower == doctest::Approx(0.0));
  CHECK(rp.upper == doctest::Approx(kPi - std::acos(1.0 / 3)));
  const auto rm = admissible_range({-1, 1, -1});
  CHECK(rm.lower == doctest::Approx(std::acos(1.0 / 3)));
  CHECK(rm.upper == doctest::Approx(kPi));
  CHECK_THROWS_AS(admissible_range({1, 1, -1}), DomainError);
}

TEST_CASE("sign sums") {
  for (double alpha : {0.3, 1.0, 2.0}) {
    const double c = std::cos(alpha);
    CHECK(sign_sum({1, -1}, alpha, 1, 2) == doctest::Approx(c * c - 1));
    for (int K : {2, 4, 6}) {
      CHECK(alternating_block_sum(K, 1, alpha) == doctest::Approx(K / 2.0 * ((K - 1) * c * c - 1)));
      CHECK(sign_sum(alternating(K, 1), alpha, 1, K) == doctest::Approx(K / 2.0 * ((K - 1) * c * c - 1)));
    }
    for (int K : {3, 5, 7}) {
      CHECK(sign_sum(alternating(K, 1), alpha, 1, K) == doctest::Approx((K - 1) / 2.0 * (K * c * c - 2 * c - 1)));
    }
  }
  CHECK(all_subblock_sums_negative({1, -1, 1}, kPi / 2));
  // alpha = 0.1 lies in the admissible range of (1, -1, 1) but not of (-1, 1, -1).
  CHECK(all_subblock_sums_negative({1, -1, 1}, 0.1));
  CHECK_FALSE(all_subblock_sums_negative({-1, 1, -1}, 0.1));
  CHECK_FALSE(all_subblock_sums_negative({1, -1, 1}, 3.0));
  for (double alpha : {0.05, 1.0, 3.0}) CHECK(all_subblock_sums_negative({-1, 1}, alpha));
}

TEST_CASE("subblock criterion equals membership in the admissible range") {
  for (int n = 2; n <= 7; ++n) {
    for (int lead : {1, -1}) {
      const auto d = alternating(n, lead);
      const auto r = admissible_range(d);
      for (int i = 1; i < 60; ++i) {
        const double alpha = kPi * i / 60.0;
        if (std::abs(alpha - r.lower) < 1e-9 || std::abs(alpha - r.upper) < 1e-9) continue;
        CAPTURE(n);
        CAPTURE(alpha);
        CHECK(all_subblock_sums_negative(d, alpha) == (alpha > r.lower && alpha < r.upper));
      }
    }
  }
}

TEST_CASE("confined energy: closed forms and oracle") {
  WallConfig one{Model::Confined, {0.0}, {1}, kPi / 2};
  CHECK(W_eval(one).W == doctest::Approx(-kPi / 2 * std::log(2.0)));
  WallConfig none{Model::Confined, {}, {}, 1.0};
  CHECK(W_eval(none).W == 0.0);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto c = random_config(rng, Model::Confined, 1 + i % 4);
    const auto r = W_eval(c);
    CHECK(r.W == doctest::Approx(W_confined_oracle(c)).epsilon(1e-12));
    CHECK(std::abs(sum_terms(r) - r.W) <= 1e-12 * (1 + std::abs(r.W)));
  }
}

TEST_CASE("confined repulsion blows up") {
  double prev = -1e300;
  for (double t : {0.1, 1e-2, 1e-4, 1e-8}) {
    WallConfig c{Model::Confined, {-t, t}, {1, -1}, kPi / 2};
    const double W = W_eval(c).W;
    CHECK(W > prev);
    prev = W;
  }
  CHECK(prev > 20.0);
}

TEST_CASE("unconfined energy: closed forms and oracle") {
  WallConfig one{Model::Unconfined, {0.0}, {1}, kPi / 2};
  CHECK(W_eval(one).W == doctest::Approx(kPi / 2 * std::numbers::egamma).epsilon(1e-10));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 6; ++i) {
    auto c = random_config(rng, Model::Unconfined, 1 + i % 3);
    const auto r = W_eval(c);
    CHECK(std::abs(r.W - W_unconfined_oracle(c)) <= 1e-7);
    CHECK(std::abs(sum_terms(r) - r.W) <= 1e-12 * (1 + std::abs(r.W)));
    for (double& a : c.a) a += 5.0;
    CHECK(std::abs(W_eval(c).W - r.W) <= 1e-12);
  }
}

TEST_CASE("far-apart unconfined pair reduces to self terms") {
  for (double gap : {10.0, 100.0, 1000.0}) {
    WallConfig c{Model::Unconfined, {0.0, gap}, {1, -1}, 1.0};
    const auto r = W_eval(c);
    const auto g = gammas(c);
    const double bound = kPi * std::abs(g.gamma[0] * g.gamma[1]) / (gap * gap);
    CHECK(std::abs(r.W - (r.self_terms[0] + r.self_terms[1])) <= bound);
  }
}

TEST_CASE("reflection symmetry") {
  WallConfig c{Model::Confined, {-0.6, 0.1, 0.5}, {1, -1, 1}, 1.1};
  WallConfig m{Model::Confined, {-0.5, -0.1, 0.6}, {1, -1, 1}, 1.1};
  CHECK(W_eval(c).W == doctest::Approx(W_eval(m).W).epsilon(1e-12));
}

TEST_CASE("coincident walls report signed infinity") {
  WallConfig rep{Model::Confined, {0.2, 0.2}, {1, -1}, kPi / 2};
  CHECK(W_eval(rep).status == EnergyStatus::PlusInfinity);
  WallConfig att{Model::Unconfined, {0.2, 0.2}, {1, 1}, kPi / 2};
  CHECK(W_eval(att).status == EnergyStatus::MinusInfinity);
}

TEST_CASE("gradient matches central differences") {
  std::mt19937_64 rng(17);
  for (Model model : {Model::Confined, Model::Unconfined}) {
    for (int i = 0; i < 6; ++i) {
      const auto c = random_config(rng, model, 2 + i % 3);
      const auto g = grad_W(c);
      const double h = 1e-6 * (model == Model::Confined ? 1.0 : 3.0);
      const auto fd = oracle::gradient(
          [&](const std::vector<double>& a) {
            WallConfig p = c;
            p.a = a;
            return W_eval(p).W;
          },
          c.a, h);
      for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(g[k] - fd[k]) <= 1e-5 * (1 + std::abs(fd[k])));
    }
  }
  WallConfig one{Model::Unconfined, {0.3}, {1}, 1.0};
  CHECK(std::abs(grad_W(one)[0]) <= 1e-15);
}

TEST_CASE("confined minimisation") {
  WallConfig c{Model::Confined, {-0.7, 0.2}, {1, -1}, kPi / 2};
  const auto r = minimize_W(c);
  REQUIRE(r.status == MinimizeStatus::Converged);
  CHECK(r.grad_norm <= 1e-8);
  CHECK(std::abs(r.argmin[0] + r.argmin[1]) <= 1e-6);

  WallConfig low{Model::Confined, {-0.5, 0.0, 0.5}, {-1, 1, -1}, 0.2};
  CHECK(minimize_W(low).status == MinimizeStatus::DivergingToMinusInfinity);
}

TEST_CASE("unconfined even N has no critical point") {
  WallConfig c{Model::Unconfined, {0.0, 1.0}, {1, -1}, 1.0};
  const auto r = minimize_W(c);
  CHECK(r.status == MinimizeStatus::Escaping);
}

TEST_CASE("unconfined three-wall critical point") {
  const auto cp = critical_point_N3(std::acos(-0.5), {1, -1, 1});
  REQUIRE(cp.has_value());
  CHECK(cp->grad_norm <= 1e-6);
  CHECK(std::abs(I_prime_ratio(cp->t0) - 1.0 / 3.0) <= 1e-8);
  CHECK(cp->a[2] - cp->a[1] == doctest::Approx(cp->a[1] - cp->a[0]));
  CHECK_FALSE(critical_point_N3(kPi / 2, {1, -1, 1}).has_value());
  CHECK_FALSE(critical_point_N3(std::acos(-0.9), {1, -1, 1}).has_value());
}

TEST_CASE("path scans") {
  WallConfig same{Model::Unconfined, {0.0, 1.0}, {1, 1}, 1.0};
  const auto s = scan_path(same, pair_gap_path(same.a, 1), {1.0, 0.1, 0.01, 1e-4});
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i].W < s[i - 1].W);
  WallConfig alt{Model::Confined, {-0.5, 0.0, 0.5}, {1, -1, 1}, kPi / 2};
  const auto a = scan_path(alt, block_collapse_path(alt.a, 1, 3), {1.0, 0.1, 0.01, 1e-4});
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i].W > a[i - 1].W);
}
