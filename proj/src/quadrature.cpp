// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#include "neel/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <map>
#include <mutex>
#include <string>

namespace neel {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol >= 0.0)) throw DomainError("quadrature tolerances must be positive");
  if (!(truncation > 0.0)) throw DomainError("quadrature truncation must be positive");
  if (max_depth < 1 || max_depth > 200) throw DomainError("quadrature depth out of range");
}

namespace quad {
namespace {

Rule make_legendre(int n) {
  Rule r;
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
  for (double x : zeros) {
    const double dp = boost::math::legendre_p_prime(n, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes.push_back(x);
    r.weights.push_back(w);
    if (x != 0.0) {
      r.nodes.push_back(-x);
      r.weights.push_back(w);
    }
  }
  return r;
}

Rule make_laguerre(int n) {
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * n);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * n);
    } else {
      const double ai = i - 1;
      z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - r.nodes[i - 2]);
    }
    double p1 = 1.0, p2 = 0.0, pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      p1 = 1.0;
      p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (p1 - p2) / z;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, z)) break;
    }
    r.nodes[i] = z;
    r.weights[i] = -1.0 / (pp * n * p2);
  }
  return r;
}

template <class Make>
const Rule& cached(std::map<int, Rule>& table, std::mutex& mu, int n, Make make) {
  if (n < 1 || n > 512) throw DomainError("quadrature order out of range: " + std::to_string(n));
  std::lock_guard<std::mutex> lock(mu);
  auto it = table.find(n);
  if (it == table.end()) it = table.emplace(n, make(n)).first;
  return it->second;
}

KronrodTable make_kronrod() {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  using G = boost::math::quadrature::gauss<double, 7>;
  const auto& xa = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G::weights();
  KronrodTable t{};
  int idx = 0;
  for (int i = 0; i < 8; ++i) {
    const double g = (i % 2 == 0) ? wg[i / 2] : 0.0;
    t.nodes[idx] = xa[i];
    t.weights_k[idx] = wk[i];
    t.weights_g[idx] = g;
    ++idx;
    if (i > 0) {
      t.nodes[idx] = -xa[i];
      t.weights_k[idx] = wk[i];
      t.weights_g[idx] = g;
      ++idx;
    }
  }
  return t;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  static std::map<int, Rule> table;
  static std::mutex mu;
  return cached(table, mu, n, make_legendre);
}

const Rule& gauss_laguerre(int n) {
  static std::map<int, Rule> table;
  static std::mutex mu;
  return cached(table, mu, n, make_laguerre);
}

const KronrodTable& kronrod15() {
  static const KronrodTable table = make_kronrod();
  return table;
}

std::vector<double> graded_breaks(double scale, double upper) {
  std::vector<double> b{0.0};
  if (!(scale > 0.0) || !(upper > 0.0)) {
    b.push_back(upper);
    return b;
  }
  const double s = std::min(scale, upper);
  double x = s;
  std::vector<double> low;
  for (int k = 0; k < 40 && x > 1e-14 * s; ++k) {
    x *= 0.25;
    low.push_back(x);
  }
  b.insert(b.end(), low.rbegin(), low.rend());
  for (double f : {0.5, 0.75, 0.9, 1.0, 1.1, 1.25, 1.5}) {
    if (f * s < upper) b.push_back(f * s);
  }
  for (x = 2.0 * s; x < upper; x *= 2.0) b.push_back(x);
  b.push_back(upper);
  return b;
}

}  // namespace quad
}  // namespace neel
