// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#include "neel/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "neel/error.hpp"

namespace neel {

std::string to_string(Model model) { return model == Model::Confined ? "confined" : "unconfined"; }

Model parse_model(const std::string& name) {
  if (name == "confined") return Model::Confined;
  if (name == "unconfined") return Model::Unconfined;
  throw DomainError("unknown model '" + name + "' (expected confined or unconfined)");
}

void WallConfig::validate(bool allow_coincident) const {
  if (!(alpha > 0.0 && alpha < std::numbers::pi)) throw DomainError("alpha must lie in (0, pi)");
  if (a.size() != d.size()) throw DomainError("positions and signs differ in length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i])) throw DomainError("wall position is not finite");
    if (d[i] != 1 && d[i] != -1) throw DomainError("wall signs must be +1 or -1");
    if (i > 0 && !(a[i] > a[i - 1]) && !(allow_coincident && a[i] == a[i - 1])) {
      throw DomainError("wall positions must be strictly increasing");
    }
  }
  if (model == Model::Confined && !a.empty() && !(a.front() > -1.0 && a.back() < 1.0)) {
    throw DomainError("confined wall positions must lie in (-1, 1)");
  }
}

double varrho(double b, double c) {
  if (!(std::abs(b) < 1.0 && std::abs(c) < 1.0)) throw DomainError("varrho: arguments must lie in (-1, 1)");
  return std::abs(b - c) / (1.0 - b * c);
}

std::complex<double> mobius(double b, std::complex<double> z) {
  if (!(std::abs(b) < 1.0)) throw DomainError("mobius: |b| must be below 1");
  const std::complex<double> den = 1.0 + b * z;
  if (std::abs(den) == 0.0) throw DomainError("mobius: pole at z = -1/b");
  return (z + b) / den;
}

double rho(const WallConfig& config) {
  config.validate();
  const auto& a = config.a;
  double m = kNoGap;
  for (std::size_t i = 1; i < a.size(); ++i) m = std::min(m, a[i] - a[i - 1]);
  if (config.model == Model::Confined && !a.empty()) {
    m = std::min({m, 2.0 * a.front() + 2.0, 2.0 - 2.0 * a.back()});
  }
  return m == kNoGap ? kNoGap : 0.5 * m;
}

Gammas gammas(const WallConfig& config) {
  config.validate();
  Gammas g;
  const double c = std::cos(config.alpha);
  for (int dn : config.d) {
    g.gamma.push_back(dn - c);
    g.Gamma += (dn - c) * (dn - c);
  }
  return g;
}

std::vector<int> alternating(std::size_t n, int leading) {
  if (leading != 1 && leading != -1) throw DomainError("leading sign must be +1 or -1");
  std::vector<int> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = (i % 2 == 0) ? leading : -leading;
  return d;
}

bool is_alternating(const std::vector<int>& d) {
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (d[i] != -d[i - 1]) return false;
  }
  return true;
}

}  // namespace neel
