// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "neel/error.hpp"
#include "neel/micromag.hpp"
#include "neel/renorm.hpp"

using namespace neel;

namespace {
constexpr double kPi = std::numbers::pi;

MagnetizationProfile make_profile(double left, double right, int n, const std::function<double(double)>& phi) {
  MagnetizationProfile p;
  p.grid = {left, right, n};
  p.phi.resize(n);
  for (int i = 0; i < n; ++i) p.phi[i] = phi(p.grid.x(i));
  return p;
}

std::vector<double> sample(const Grid1D& g, const std::function<double(double)>& f) {
  std::vector<double> v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = f(g.x(i));
  return v;
}

// Direct O(n^2) evaluation of the difference-quotient integral with a
// midpoint diagonal, independent of the library routine.
double seminorm_sq_direct(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = (f[i] - f[j]) / ((static_cast<double>(i) - static_cast<double>(j)) * h);
      s += d * d * h * h;
    }
    const double fi = f[i];
    s += 2.0 * fi * fi * h * (1.0 / ((i + 0.5) * h) + 1.0 / ((n - 1 - i + 0.5) * h));
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d = (f[i + 1] - f[i - 1]) / (2 * h);
    s += d * d * h * h;
  }
  return s / (2 * kPi);
}
}  // namespace

TEST_CASE("exchange energy") {
  CHECK(exchange_energy(make_profile(-1, 1, 64, [](double) { return 0.7; }), 0.01) == 0.0);
  const double eps = 0.02, rise = 2.5;
  const auto ramp = make_profile(-1, 1, 257, [&](double x) { return rise * (x + 1) / 2; });
  CHECK(exchange_energy(ramp, eps) == doctest::Approx(eps / 2 * rise * rise / 2).epsilon(1e-12));
  auto smooth = [](double x) { return std::sin(3 * x); };
  const double e1 = exchange_energy(make_profile(-1, 1, 257, smooth), 1.0);
  const double e2 = exchange_energy(make_profile(-1, 1, 513, smooth), 1.0);
  const double e3 = exchange_energy(make_profile(-1, 1, 1025, smooth), 1.0);
  CHECK(std::abs(e2 - e3) < 0.3 * std::abs(e1 - e2));
}

TEST_CASE("anisotropy energy") {
  const double alpha = 1.1;
  CHECK(anisotropy_energy(make_profile(-5, 5, 101, [&](double) { return alpha; }), alpha, Model::Unconfined) == 0.0);
  // m1 - cos(alpha) equal to 1 on a window of width 2 (cos alpha = 0).
  const auto bump = make_profile(-5, 5, 10001, [](double x) { return std::abs(x) < 1 ? 0.0 : kPi / 2; });
  CHECK(anisotropy_energy(bump, kPi / 2, Model::Unconfined) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK_THROWS_AS(anisotropy_energy(bump, kPi / 2, Model::Confined), DomainError);
}

TEST_CASE("stray energy of exp(-|x|)") {
  const Grid1D g{-40, 40, 1 << 14};
  const auto f = sample(g, [](double x) { return std::exp(-std::abs(x)); });
  CHECK(stray_energy_spectral(f, g.h()).energy == doctest::Approx(1 / kPi).epsilon(0.01));
  const Grid1D gc{-40, 40, 2048};
  const auto fc = sample(gc, [](double x) { return std::exp(-std::abs(x)); });
  CHECK(stray_energy_double_integral(fc, gc.h()) == doctest::Approx(1 / kPi).epsilon(0.01));
  CHECK(extension_dirichlet_energy(f, g.h()) == doctest::Approx(2 / kPi).epsilon(0.02));
}

TEST_CASE("stray evaluators agree on random smooth profiles") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1, 1);
  const Grid1D g{-1, 1, 1024};
  for (int k = 0; k < 5; ++k) {
    const double c1 = u(rng), c2 = u(rng), w = 0.1 + 0.2 * std::abs(u(rng));
    const auto f = sample(g, [&](double x) {
      const double bump = std::max(0.0, 1 - x * x);
      return bump * bump * (c1 * std::cos(3 * x / w) + c2 * std::exp(-x * x / (w * w)));
    });
    const double s = stray_energy_spectral(f, g.h(), 8).energy;
    const double d = stray_energy_double_integral(f, g.h());
    CHECK(std::abs(s - d) <= 0.01 * d);
    CHECK(std::abs(d - 0.5 * seminorm_sq_direct(f, g.h())) <= 1e-10 * d);
  }
  const std::vector<double> zero(128, 0.0);
  CHECK(stray_energy_spectral(zero, 0.1).energy == 0.0);
  CHECK(stray_energy_double_integral(zero, 0.1) == 0.0);
}

TEST_CASE("stray energy symmetries and truncation warning") {
  const Grid1D g{-1, 1, 512};
  auto f = sample(g, [](double x) { return (1 - x * x) * std::exp(x); });
  const double e = stray_energy_double_integral(f, g.h());
  auto neg = f;
  for (double& v : neg) v = -v;
  auto rev = std::vector<double>(f.rbegin(), f.rend());
  CHECK(stray_energy_double_integral(neg, g.h()) == doctest::Approx(e).epsilon(1e-14));
  CHECK(stray_energy_double_integral(rev, g.h()) == doctest::Approx(e).epsilon(1e-12));
  const auto step = sample(g, [](double) { return 1.0; });
  CHECK(stray_energy_spectral(step, g.h()).truncation_warning);
  CHECK_FALSE(stray_energy_spectral(f, g.h()).truncation_warning);
}

TEST_CASE("dilation lowers exchange and keeps the stray energy") {
  const double lam = 0.5;
  const Grid1D g{-40, 40, 1 << 14};
  auto prof = [](double x) { return kPi / 2 * std::tanh(x); };
  MagnetizationProfile p{g, sample(g, prof)};
  MagnetizationProfile q{g, sample(g, [&](double x) { return prof(lam * x); })};
  CHECK(exchange_energy(q, 1.0) < exchange_energy(p, 1.0));
  const double sp = stray_energy_spectral(p.m1(), g.h()).energy;
  const double sq = stray_energy_spectral(q.m1(), g.h()).energy;
  CHECK(sq == doctest::Approx(sp).epsilon(0.01));
}

TEST_CASE("harmonic extension decays with height") {
  const Grid1D g{-10, 10, 1024};
  const auto f = sample(g, [](double x) { return std::exp(-x * x); });
  const auto field = stray_potential_solve(f, g, {0.0, 0.5, 1.0, 2.0});
  double prev = 1e300;
  for (std::size_t iy = 0; iy < field.y.size(); ++iy) {
    double s = 0.0;
    for (std::size_t ix = 0; ix < field.x.size(); ++ix) s += field.v_at(iy, ix) * field.v_at(iy, ix);
    CHECK(s < prev);
    prev = s;
  }
  for (std::size_t ix = 0; ix < field.x.size(); ix += 97) CHECK(field.v_at(0, ix) == doctest::Approx(f[ix]).epsilon(1e-9));
}

TEST_CASE("total energy vanishes on constant states") {
  SimulationParams pc;
  pc.model = Model::Confined;
  const double alpha = 0.8;
  const auto c = make_profile(-1, 1, 256, [&](double) { return alpha; });
  const auto e = total_energy(c, alpha, pc);
  CHECK(e.total == 0.0);
  SimulationParams pu;
  pu.model = Model::Unconfined;
  const auto u = make_profile(-10, 10, 256, [&](double) { return -alpha; });
  CHECK(total_energy(u, alpha, pu).total <= 1e-28);
}

TEST_CASE("single confined wall: descent, pinning and leading order") {
  WallConfig c{Model::Confined, {0.0}, {1}, kPi / 2};
  SimulationParams p;
  p.epsilon = 1e-3;
  p.n = 1 << 13;
  const auto r = minimize_energy(c, p);
  REQUIRE(r.status == DescentStatus::Converged);
  CHECK(r.grad_norm <= 1e-6);
  // Steps are accepted on the exact energy difference; recomputed totals
  // may drift by summation round-off, bounded by n machine epsilons.
  const double roundoff = p.n * std::numeric_limits<double>::epsilon();
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    CHECK(r.trace[i].energy.total <= r.trace[i - 1].energy.total * (1 + roundoff));
  }
  CHECK(r.trace.back().energy.total < r.trace.front().energy.total);
  CHECK(std::cos(r.profile.phi[r.pinned[0]]) == doctest::Approx(1.0));
  CHECK(r.profile.phi.front() == doctest::Approx(-kPi / 2));
  CHECK(r.profile.phi.back() == doctest::Approx(kPi / 2));
  const double L = std::log(1 / p.delta());
  CHECK(r.energy.total * L == doctest::Approx(kPi / 2).epsilon(0.25));
  CHECK(r.energy.stray > r.energy.exchange);
  CHECK(r.energy.exchange >= 0.0);
  CHECK(r.energy.anisotropy == 0.0);
  CHECK(r.energy.total == doctest::Approx(r.energy.exchange + r.energy.stray));
}

TEST_CASE("wall interaction signs at fixed epsilon") {
  SimulationParams p;
  p.epsilon = 1e-3;
  p.n = 1 << 13;
  auto energy = [&](std::vector<int> d, double gap) {
    WallConfig c{Model::Confined, {-gap / 2, gap / 2}, d, kPi / 2};
    const auto r = minimize_energy(c, p);
    REQUIRE(r.status == DescentStatus::Converged);
    return r.energy.total;
  };
  CHECK(energy({1, 1}, 0.1) < energy({1, 1}, 0.4));
  CHECK(energy({1, -1}, 0.1) > energy({1, -1}, 0.4));
}

TEST_CASE("reflection leaves every component unchanged") {
  WallConfig c{Model::Unconfined, {0.0}, {1}, 1.0};
  SimulationParams p;
  p.model = Model::Unconfined;
  p.epsilon = 1e-2;
  p.n = 2048;
  const auto r = minimize_energy(c, p);
  MagnetizationProfile m = r.profile;
  std::reverse(m.phi.begin(), m.phi.end());
  for (double& v : m.phi) v = -v;
  const auto a = total_energy(r.profile, c.alpha, p);
  const auto b = total_energy(m, c.alpha, p);
  CHECK(b.exchange == doctest::Approx(a.exchange).epsilon(1e-10));
  CHECK(b.anisotropy == doctest::Approx(a.anisotropy).epsilon(1e-10));
  CHECK(b.stray == doctest::Approx(a.stray).epsilon(1e-8));
}

TEST_CASE("expansion fit recovers synthetic coefficients") {
  const std::vector<double> eps = {1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  std::vector<double> e;
  for (double x : eps) {
    const double L = std::log(1 / (x * std::log(1 / x)));
    e.push_back(1.3 / L - 0.7 / (L * L));
  }
  const auto fit = fit_expansion(eps, e);
  CHECK(fit.A == doctest::Approx(1.3).epsilon(1e-9));
  CHECK(fit.B == doctest::Approx(-0.7).epsilon(1e-8));
  CHECK(fit.status == FitStatus::Ok);
  CHECK_THROWS_AS(fit_expansion({1e-2, 5e-3, 3e-3, 2e-3}, {1, 1, 1, 1}), DomainError);
  CHECK_THROWS_AS(fit_expansion({1e-2, 1e-3, 1e-4}, {1, 1, 1}), DomainError);
}

TEST_CASE("parameter validation") {
  SimulationParams p;
  p.epsilon = 1.5;
  CHECK_THROWS_AS(p.validate(), DomainError);
  WallConfig c{Model::Confined, {0.0, 1e-4}, {1, -1}, 1.0};
  SimulationParams q;
  q.n = 1024;
  CHECK_THROWS_AS(minimize_energy(c, q), DomainError);
  WallConfig mismatch{Model::Unconfined, {0.0}, {1}, 1.0};
  CHECK_THROWS(minimize_energy(mismatch, q));
}
