// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Quadrature primitives shared by the special-function and potential
// evaluators: fixed Gauss rules, adaptive Gauss-Kronrod on finite
// intervals, exponentially weighted half-line integrals, and Euler
// acceleration of alternating series.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

#include "neel/error.hpp"

namespace neel {

/// Accuracy controls for the numerical integrators.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  /// Cut-off for semi-infinite integrals that are truncated.
  double truncation = 60.0;
  /// Maximum bisection depth of the adaptive rules.
  int max_depth = 40;

  void validate() const;
  double tolerance(double magnitude) const {
    return std::max(abs_tol, rel_tol * std::abs(magnitude));
  }
};

/// A value together with a nonnegative error estimate.
template <class T>
struct Estimate {
  T value{};
  double error = 0.0;
};

namespace quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]. Cached; safe to call concurrently.
const Rule& gauss_legendre(int n);

/// n-point Gauss-Laguerre rule for the weight e^{-s} on [0, inf). Cached.
const Rule& gauss_laguerre(int n);

/// Kronrod 15-point extension of the 7-point Gauss rule on [-1, 1].
struct KronrodTable {
  static constexpr int kSize = 15;
  double nodes[kSize];
  double weights_k[kSize];
  double weights_g[kSize];  // zero on the Kronrod-only nodes
};
const KronrodTable& kronrod15();

/// Applies a fixed Gauss-Legendre rule on [a, b].
template <class F>
auto fixed_legendre(F&& f, double a, double b, int n) {
  const Rule& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  using R = decltype(f(a));
  R sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return R(sum * half);
}

template <class F>
auto kronrod_panel(F& f, double a, double b) {
  using R = decltype(f(a));
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const KronrodTable& t = kronrod15();
  R k{};
  R g{};
  for (int i = 0; i < KronrodTable::kSize; ++i) {
    const R y = f(mid + half * t.nodes[i]);
    k += t.weights_k[i] * y;
    g += t.weights_g[i] * y;
  }
  return Estimate<R>{R(k * half), std::abs(R((k - g) * half))};
}

/// Globally adaptive G7-K15 integration of f over [a, b], starting from the
/// given breakpoints (which must lie in [a, b] and be increasing). Panels are
/// bisected until the summed error estimate meets the tolerance or a panel
/// reaches the maximum depth. Throws AccuracyError with the best estimate if
/// the tolerance is not reached.
template <class F>
auto adaptive(F&& f, std::span<const double> breaks, const QuadratureSpec& spec) {
  using R = decltype(f(breaks[0]));
  struct Panel {
    double a, b;
    R value;
    double error;
    int depth;
    bool operator<(const Panel& o) const { return error < o.error; }
  };
  std::priority_queue<Panel> work;
  std::vector<Panel> done;
  R total{};
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    auto e = kronrod_panel(f, breaks[i], breaks[i + 1]);
    work.push({breaks[i], breaks[i + 1], e.value, e.error, 0});
    total += e.value;
    total_err += e.error;
  }
  constexpr int kMaxPanels = 20000;
  int panels = static_cast<int>(work.size());
  while (!work.empty() && total_err > spec.tolerance(std::abs(total))) {
    Panel p = work.top();
    work.pop();
    if (p.depth >= spec.max_depth || panels >= kMaxPanels) {
      done.push_back(p);
      continue;
    }
    const double m = 0.5 * (p.a + p.b);
    auto left = kronrod_panel(f, p.a, m);
    auto right = kronrod_panel(f, m, p.b);
    total += left.value + right.value - p.value;
    total_err += left.error + right.error - p.error;
    work.push({p.a, m, left.value, left.error, p.depth + 1});
    work.push({m, p.b, right.value, right.error, p.depth + 1});
    panels += 1;
  }
  // Re-sum to limit cancellation drift from the incremental updates.
  R sum{};
  double err = 0.0;
  while (!work.empty()) {
    sum += work.top().value;
    err += work.top().error;
    work.pop();
  }
  for (const auto& p : done) {
    sum += p.value;
    err += p.error;
  }
  if (err > spec.tolerance(std::abs(sum))) {
    throw AccuracyError("adaptive quadrature did not reach tolerance", std::abs(sum), err);
  }
  return Estimate<R>{sum, err};
}

template <class F>
auto adaptive(F&& f, double a, double b, const QuadratureSpec& spec) {
  const double br[2] = {a, b};
  return adaptive(std::forward<F>(f), std::span<const double>(br, 2), spec);
}

/// Breakpoints 0 < scale/2^k < ... < scale < 2 scale < ... < upper used to
/// resolve an integrand feature near s = scale on [0, upper].
std::vector<double> graded_breaks(double scale, double upper);

/// Integral of e^{-s} f(s) over [0, inf) where f is smooth apart from a
/// feature (pole distance, peak, log-like growth) of size `scale` near s = 0.
/// Large scales use Gauss-Laguerre directly, checked by a second order.
/// Otherwise [0, T] is integrated adaptively on graded panels and the tail
/// e^{-T} * int e^{-s} f(s + T) ds by Gauss-Laguerre.
template <class F>
auto exp_weighted(F&& f, double scale, const QuadratureSpec& spec) {
  using R = decltype(f(1.0));
  auto laguerre = [&](int n, double shift) {
    const Rule& rule = gauss_laguerre(n);
    R sum{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      sum += rule.weights[i] * f(rule.nodes[i] + shift);
    }
    return sum;
  };
  if (scale >= 4.0) {
    const R hi = laguerre(96, 0.0);
    const R lo = laguerre(64, 0.0);
    const double err = std::abs(R(hi - lo));
    if (err <= 0.1 * spec.tolerance(std::abs(hi))) return Estimate<R>{hi, err};
  }
  const double split = std::min(spec.truncation, 40.0);
  const auto breaks = graded_breaks(scale, split);
  auto head = adaptive([&](double s) { return R(std::exp(-s) * f(s)); },
                       std::span<const double>(breaks), spec);
  const double w = std::exp(-split);
  const R tail_hi = laguerre(64, split);
  const R tail_lo = laguerre(48, split);
  head.value += w * tail_hi;
  head.error += w * std::abs(R(tail_hi - tail_lo));
  return head;
}

/// Sums the series sum_k term(k), k = 0, 1, ..., whose terms eventually
/// alternate in sign with smoothly decreasing magnitude. Partial sums are
/// accelerated by repeated pairwise averaging (Euler transform); iteration
/// stops once two consecutive accelerated sums differ by less than the
/// tolerance.
template <class F>
Estimate<double> euler_alternating(F&& term, const QuadratureSpec& spec, int max_terms = 4000) {
  constexpr int kDepth = 16;
  std::vector<double> partial;
  partial.reserve(64);
  double running = 0.0;
  double prev_est = 0.0;
  int settled = 0;
  for (int k = 0; k < max_terms; ++k) {
    running += term(k);
    partial.push_back(running);
    const int m = static_cast<int>(partial.size()) - 1;
    const int depth = std::min(m, kDepth);
    std::vector<double> row(partial.end() - depth - 1, partial.end());
    for (int j = 0; j < depth; ++j) {
      for (int i = 0; i + 1 < static_cast<int>(row.size()) - j; ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
    }
    const double est = row[0];
    if (m >= 4) {
      const double diff = std::abs(est - prev_est);
      if (diff < spec.tolerance(est)) {
        if (++settled >= 2) return {est, diff};
      } else {
        settled = 0;
      }
    }
    prev_est = est;
  }
  throw AccuracyError("alternating series did not settle", prev_est, std::abs(partial.back() - prev_est));
}

}  // namespace quad
}  // namespace neel
