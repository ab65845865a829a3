// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#include "neel/profiles.hpp"

#include <cmath>
#include <numbers>

#include "neel/error.hpp"

namespace neel {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-9;

// Plateaus in increasing order: index 2m is 2 pi m - alpha, 2m + 1 is 2 pi m + alpha.
double plateau_value(long q, double alpha) {
  const long m = (q >= 0) ? q / 2 : -((-q + 1) / 2);
  return 2.0 * kPi * static_cast<double>(m) + ((q - 2 * m) == 1 ? alpha : -alpha);
}

long plateau_index(double value, double alpha) {
  for (int s : {-1, 1}) {
    const double k = (value - s * alpha) / (2.0 * kPi);
    const double r = std::round(k);
    if (std::abs(k - r) <= kTol * std::max(1.0, std::abs(k))) {
      return 2 * static_cast<long>(r) + (s == 1 ? 1 : 0);
    }
  }
  throw DomainError("plateau value does not lie in 2 pi Z +- alpha");
}

bool is_half_pi(double alpha) { return std::abs(alpha - 0.5 * kPi) <= 1e-12; }

}  // namespace

void StepFunction::validate() const {
  if (!(alpha > 0.0 && alpha < kPi)) throw DomainError("alpha must lie in (0, pi)");
  if (!std::isfinite(base)) throw DomainError("base value is not finite");
  long q = plateau_index(base, alpha);
  double value = plateau_value(q, alpha);
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    if (!std::isfinite(jumps[i].b) || !std::isfinite(jumps[i].size)) throw DomainError("jump is not finite");
    if (jumps[i].size == 0.0) throw DomainError("jumps of size zero are not allowed");
    if (i > 0 && jumps[i].b < jumps[i - 1].b) throw DomainError("jump locations must be nondecreasing");
    value += jumps[i].size;
    q = plateau_index(value, alpha);
    value = plateau_value(q, alpha);
  }
}

std::vector<Jump> merged_jumps(const StepFunction& step) {
  step.validate();
  std::vector<Jump> out;
  for (const Jump& j : step.jumps) {
    if (!out.empty() && out.back().b == j.b) {
      out.back().size += j.size;
    } else {
      out.push_back(j);
    }
  }
  std::erase_if(out, [&](const Jump& j) { return std::abs(j.size) <= kTol * step.alpha; });
  return out;
}

JumpDecomposition decompose(const StepFunction& step) {
  const std::vector<Jump> jumps = merged_jumps(step);
  const double alpha = step.alpha;
  JumpDecomposition out;
  long q = plateau_index(step.base, alpha);
  double value = plateau_value(q, alpha);
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    const long target = plateau_index(value + jumps[i].size, alpha);
    const long dir = target > q ? 1 : -1;
    while (q != target) {
      // Crossing from an even index upwards (or to it downwards) passes 2 pi m.
      const long low = dir > 0 ? q : q - 1;
      const double mag = (low % 2 == 0) ? 2.0 * alpha : 2.0 * (kPi - alpha);
      out.atoms.push_back({jumps[i].b, dir * mag});
      out.source.push_back(static_cast<int>(i));
      q += dir;
    }
    value = plateau_value(q, alpha);
  }
  return out;
}

std::vector<Jump> recompose(const JumpDecomposition& decomposition) {
  std::vector<Jump> out;
  for (std::size_t k = 0; k < decomposition.atoms.size(); ++k) {
    const Atom& atom = decomposition.atoms[k];
    if (k > 0 && decomposition.source[k] == decomposition.source[k - 1]) {
      out.back().size += atom.sigma;
    } else {
      out.push_back({atom.b, atom.sigma});
    }
  }
  return out;
}

int iota(const StepFunction& step) { return static_cast<int>(decompose(step).atoms.size()); }

double eta(const StepFunction& step) {
  double sum = 0.0;
  for (const Atom& atom : decompose(step).atoms) {
    const double c = 1.0 - std::cos(0.5 * atom.sigma);
    sum += c * c;
  }
  return 0.5 * kPi * sum;
}

bool is_simple(const StepFunction& step) {
  return iota(step) == static_cast<int>(merged_jumps(step).size());
}

TransitionProfile transition_profile(const StepFunction& step) {
  if (!is_simple(step)) throw DomainError("transition profile requires a simple step function");
  const std::vector<Jump> jumps = merged_jumps(step);
  const double alpha = step.alpha;
  TransitionProfile out;
  double left = plateau_value(plateau_index(step.base, alpha), alpha);
  for (const Jump& j : jumps) {
    int d;
    if (is_half_pi(alpha)) {
      // Both elementary sizes equal pi; the left limit decides.
      const long q = plateau_index(left, alpha);
      const bool left_minus = (q % 2 == 0);
      d = (j.size > 0) == left_minus ? 1 : -1;
    } else {
      d = std::abs(std::abs(j.size) - 2.0 * alpha) < std::abs(std::abs(j.size) - 2.0 * (kPi - alpha)) ? 1 : -1;
    }
    out.a.push_back(j.b);
    out.d.push_back(d);
    left = plateau_value(plateau_index(left + j.size, alpha), alpha);
  }
  return out;
}

WallConfig to_wall_config(const StepFunction& step, Model model) {
  const TransitionProfile tp = transition_profile(step);
  WallConfig config;
  config.model = model;
  config.a = tp.a;
  config.d = tp.d;
  config.alpha = step.alpha;
  return config;
}

nlohmann::json to_json(const StepFunction& step) {
  nlohmann::json j;
  j["alpha"] = step.alpha;
  j["base"] = step.base;
  j["jumps"] = nlohmann::json::array();
  for (const Jump& jump : step.jumps) j["jumps"].push_back({{"b", jump.b}, {"size", jump.size}});
  return j;
}

StepFunction step_from_json(const nlohmann::json& j) {
  StepFunction step;
  try {
    step.alpha = j.at("alpha").get<double>();
    step.base = j.at("base").get<double>();
    for (const auto& item : j.at("jumps")) step.jumps.push_back({item.at("b").get<double>(), item.at("size").get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("invalid step function JSON: ") + e.what());
  }
  step.validate();
  return step;
}

}  // namespace neel
