// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <limits>
#include <string>
#include <vector>

namespace neel {

enum class Model { Confined, Unconfined };

std::string to_string(Model model);
Model parse_model(const std::string& name);

/// Ordered wall positions with their signs, the transition angle and the model.
struct WallConfig {
  Model model = Model::Confined;
  std::vector<double> a;
  std::vector<int> d;
  double alpha = 0.0;

  std::size_t size() const { return a.size(); }
  /// Throws DomainError unless the configuration is admissible. With
  /// allow_coincident, equal neighbouring positions are accepted.
  void validate(bool allow_coincident = false) const;
};

struct Gammas {
  std::vector<double> gamma;
  double Gamma = 0.0;
};

/// Returned by rho() when no gap is defined.
inline constexpr double kNoGap = std::numeric_limits<double>::infinity();

/// Pseudo-hyperbolic distance |b - c| / (1 - bc) on (-1, 1).
double varrho(double b, double c);

/// (z + b) / (1 + b z).
std::complex<double> mobius(double b, std::complex<double> z);

/// Half of the smallest gap (confined: including the distances to +-1).
double rho(const WallConfig& config);

Gammas gammas(const WallConfig& config);

/// (1, -1, 1, ...) for leading = +1 and (-1, 1, -1, ...) for leading = -1.
std::vector<int> alternating(std::size_t n, int leading);

bool is_alternating(const std::vector<int>& d);

}  // namespace neel
