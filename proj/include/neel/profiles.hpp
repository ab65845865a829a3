// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Piecewise-constant liftings with plateaus in 2 pi Z +- alpha: elementary
// jump decomposition, wall count iota, limit energy eta, simplicity and the
// transition profile (a, d).

#include <string>
#include <vector>

#include <json.hpp>

#include "neel/geometry.hpp"

namespace neel {

struct Jump {
  double b = 0.0;
  double size = 0.0;
};

struct StepFunction {
  double alpha = 0.0;
  /// Value to the left of every jump.
  double base = 0.0;
  /// Jumps ordered by location; equal locations are merged when decomposed.
  std::vector<Jump> jumps;

  /// Throws DomainError unless alpha lies in (0, pi), every plateau lies in
  /// 2 pi Z +- alpha, locations are nondecreasing and no jump is zero.
  void validate() const;
};

struct Atom {
  double b = 0.0;
  double sigma = 0.0;
};

struct JumpDecomposition {
  std::vector<Atom> atoms;
  /// Index of the merged jump each atom belongs to.
  std::vector<int> source;
};

struct TransitionProfile {
  std::vector<double> a;
  std::vector<int> d;
};

JumpDecomposition decompose(const StepFunction& step);

/// Sums consecutive atoms sharing a location.
std::vector<Jump> recompose(const JumpDecomposition& decomposition);

/// Jumps after merging equal locations; merged jumps summing to zero vanish.
std::vector<Jump> merged_jumps(const StepFunction& step);

int iota(const StepFunction& step);
double eta(const StepFunction& step);
bool is_simple(const StepFunction& step);

/// Throws DomainError for non-simple input.
TransitionProfile transition_profile(const StepFunction& step);

/// The wall configuration carried by a simple step function.
WallConfig to_wall_config(const StepFunction& step, Model model);

nlohmann::json to_json(const StepFunction& step);
StepFunction step_from_json(const nlohmann::json& j);

}  // namespace neel
