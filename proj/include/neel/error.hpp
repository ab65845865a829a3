// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace neel {

/// Raised when an argument lies outside the domain of an operation
/// (nonpositive t, positions outside (-1,1), unordered walls, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a numerical procedure cannot reach its requested accuracy.
/// Carries the best estimate found so callers may still use it.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what), best_(best_estimate), error_(error_estimate) {}

  double best_estimate() const noexcept { return best_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double best_;
  double error_;
};

}  // namespace neel
