// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "neel/quadrature.hpp"

namespace neel {

/// Value of a special function together with an error estimate.
struct SpecialValue {
  double value = 0.0;
  double error = 0.0;
};

/// I_0 = int_0^inf e^{-s} log s ds, i.e. minus the Euler-Mascheroni constant.
inline constexpr double kI0 = -0.57721566490153286061;

/// I(t) = int_0^inf s e^{-s} / (s^2 + t^2) ds for t > 0.
SpecialValue eval_I(double t, const QuadratureSpec& spec = {});

/// I_0 from its integral definition.
SpecialValue eval_I0(const QuadratureSpec& spec = {});

/// I(t) through the oscillatory form int_0^inf cos s / (s + t) ds, summed
/// period by period with Euler acceleration.
SpecialValue eval_I_alt(double t, const QuadratureSpec& spec = {});

/// First and second derivatives of I.
SpecialValue eval_I_prime(double t, const QuadratureSpec& spec = {});
SpecialValue eval_I_dprime(double t, const QuadratureSpec& spec = {});

/// I'(2t) / I'(t); decreases from 1/2 (t -> 0) to 1/8 (t -> inf).
double I_prime_ratio(double t, const QuadratureSpec& spec = {});

/// The unique t > 0 with I'(2t) = q I'(t), for 1/8 < q < 1/2.
double ratio_root(double q, const QuadratureSpec& spec = {});

}  // namespace neel
