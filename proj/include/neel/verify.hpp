// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Acceptance criteria 1-11 as library routines returning measured values
// next to expected values and tolerances.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace neel {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string measured;
  std::string expected;
  std::string tolerance;
  /// Per-check record: {check, passed, measured, expected, tolerance}.
  nlohmann::json checks = nlohmann::json::array();
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string error;
};

struct VerifyOptions {
  int threads = 1;
  std::uint64_t seed = 20260;
};

inline constexpr int kCriterionCount = 11;

/// Criteria of a named suite: all, specfun, potentials, renorm, micromag,
/// profiles.
std::vector<int> suite_criteria(const std::string& suite);

std::string criterion_name(int id);

/// Runs one criterion; numerical exceptions are reported as failures.
CriterionResult run_criterion(int id, const VerifyOptions& options = {});

std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const VerifyOptions& options = {});

nlohmann::json to_json(const CriterionResult& result);

/// One line: "criterion  N [PASS|FAIL] name: measured ... expected ... (tol ...) in s".
std::string summary_line(const CriterionResult& result);

}  // namespace neel
