// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#include "neel/specfun.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace neel {
namespace {

void require_positive(double t, const char* what) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError(std::string(what) + ": argument must be positive and finite, got " + std::to_string(t));
  }
}

// K_p(t) = int_0^inf sigma^p e^{-sigma} / (sigma^2 + t^2) d sigma.
SpecialValue kernel(int p, double t, const QuadratureSpec& spec) {
  const double t2 = t * t;
  auto f = [p, t2](double s) { return std::pow(s, p) / (s * s + t2); };
  const auto e = quad::exp_weighted(f, t, spec);
  return {e.value, e.error};
}

}  // namespace

SpecialValue eval_I(double t, const QuadratureSpec& spec) {
  require_positive(t, "eval_I");
  spec.validate();
  if (t < 1e-6) {
    const double q = std::numbers::pi * t / 4.0;
    return {-std::log(t) + kI0 + q, q};
  }
  return kernel(1, t, spec);
}

SpecialValue eval_I0(const QuadratureSpec& spec) {
  spec.validate();
  const auto e = quad::exp_weighted([](double s) { return std::log(s); }, 1.0, spec);
  return {e.value, e.error};
}

SpecialValue eval_I_alt(double t, const QuadratureSpec& spec) {
  require_positive(t, "eval_I_alt");
  spec.validate();
  constexpr double kPi = std::numbers::pi;
  auto f = [t](double s) { return std::cos(s) / (s + t); };
  QuadratureSpec piece = spec;
  piece.abs_tol = spec.abs_tol * 1e-2;
  double piece_err = 0.0;
  auto term = [&](int k) {
    const double lo = k == 0 ? 0.0 : k * kPi - kPi / 2.0;
    const double hi = k * kPi + kPi / 2.0;
    const auto e = k == 0 ? quad::adaptive(f, std::span<const double>(quad::graded_breaks(t, hi)), piece)
                          : quad::adaptive(f, lo, hi, piece);
    piece_err += e.error;
    return e.value;
  };
  const auto sum = quad::euler_alternating(term, spec);
  return {sum.value, sum.error + piece_err};
}

SpecialValue eval_I_prime(double t, const QuadratureSpec& spec) {
  require_positive(t, "eval_I_prime");
  spec.validate();
  const auto k = kernel(2, t, spec);
  return {-k.value / t, k.error / t};
}

SpecialValue eval_I_dprime(double t, const QuadratureSpec& spec) {
  require_positive(t, "eval_I_dprime");
  spec.validate();
  const auto k = kernel(3, t, spec);
  return {k.value / (t * t), k.error / (t * t)};
}

double I_prime_ratio(double t, const QuadratureSpec& spec) {
  require_positive(t, "I_prime_ratio");
  // I'(2t)/I'(t) = K_2(2t) / (2 K_2(t)).
  return kernel(2, 2.0 * t, spec).value / (2.0 * kernel(2, t, spec).value);
}

double ratio_root(double q, const QuadratureSpec& spec) {
  if (!(q > 0.125 && q < 0.5)) {
    throw DomainError("ratio_root: q must lie in (1/8, 1/2), got " + std::to_string(q));
  }
  spec.validate();
  auto g = [&](double x) { return I_prime_ratio(std::exp(x), spec) - q; };
  double lo = std::log(1e-10);
  double hi = std::log(1e7);
  const double glo = g(lo);
  const double ghi = g(hi);
  if (!(glo > 0.0 && ghi < 0.0)) {
    throw AccuracyError("ratio_root: q too close to the limits 1/8 or 1/2 to bracket", std::nan(""), 0.0);
  }
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi,
                                                   boost::math::tools::eps_tolerance<double>(48), iters);
  return std::exp(0.5 * (r.first + r.second));
}

}  // namespace neel
