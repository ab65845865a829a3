// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Independent reference computations for the unit tests: adaptive Simpson
// quadrature and central finite differences. Deliberately unrelated to the
// Gauss-Kronrod/Gauss-Laguerre machinery of the library.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                          double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature of f over [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                      int depth = 50) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// Adaptive Simpson over consecutive panels [breaks[i], breaks[i+1]].
inline double simpson_panels(const std::function<double(double)>& f, const std::vector<double>& breaks,
                             double tol = 1e-12) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) sum += simpson(f, breaks[i], breaks[i + 1], tol);
  return sum;
}

/// I(t) = int_0^50 s e^{-s} / (s^2 + t^2) ds by adaptive Simpson on graded panels.
inline double I_oracle(double t) {
  std::vector<double> breaks = {0.0};
  for (double s = t / 64.0; s < 50.0; s *= 2.0) breaks.push_back(s);
  breaks.push_back(50.0);
  return simpson_panels([t](double s) { return s * std::exp(-s) / (s * s + t * t); }, breaks, 1e-13);
}

/// Central difference of f at x with step h.
inline double derivative(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Central-difference gradient of F: R^n -> R.
inline std::vector<double> gradient(const std::function<double(const std::vector<double>&)>& F,
                                    const std::vector<double>& x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<double> p = x;
    std::vector<double> m = x;
    p[i] += h;
    m[i] -= h;
    g[i] = (F(p) - F(m)) / (2.0 * h);
  }
  return g;
}

}  // namespace oracle
