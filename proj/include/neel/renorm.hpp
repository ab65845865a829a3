// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "neel/geometry.hpp"
#include "neel/quadrature.hpp"

namespace neel {

enum class EnergyStatus { Finite, PlusInfinity, MinusInfinity };

struct RenormResult {
  double W = 0.0;
  EnergyStatus status = EnergyStatus::Finite;
  std::vector<double> self_terms;
  /// Symmetric; entry (k, l) is the complete interaction of the unordered
  /// pair {k, l}, so that W = sum(self_terms) + sum_{k<l} pair_terms[k][l].
  std::vector<std::vector<double>> pair_terms;
  /// Empty unless requested.
  std::vector<double> gradient;
};

/// Critical angles: 0 for N <= 2, arccos((sqrt(N+1)-1)/N) for odd N,
/// arccos((sqrt(N)-1)/(N-1)) for even N.
double theta_N(int n);

enum class RangeCase { Even, OddPlus, OddMinus };

struct AdmissibleRange {
  double lower = 0.0;
  double upper = 0.0;
  RangeCase kind = RangeCase::Even;
  bool contains(double alpha) const { return alpha > lower && alpha < upper; }
};

std::string to_string(RangeCase kind);

/// Range of alpha for which alternating walls repel; d must alternate, N >= 2.
AdmissibleRange admissible_range(const std::vector<int>& d);

/// sum_{K <= k < l <= L} gamma_k gamma_l with 1-based inclusive K < L.
double sign_sum(const std::vector<int>& d, double alpha, int K, int L);

/// Closed form of the pair sum over an alternating block of length K whose
/// first sign is `first`.
double alternating_block_sum(int K, int first, double alpha);

bool all_subblock_sums_negative(const std::vector<int>& d, double alpha);

/// Evaluators. Coincident walls are permitted here and reported through
/// `status`; the gradient is only filled in for finite energies.
RenormResult W_confined(const WallConfig& config, bool with_gradient = false);
RenormResult W_unconfined(const WallConfig& config, bool with_gradient = false,
                          const QuadratureSpec& spec = {});
RenormResult W_eval(const WallConfig& config, bool with_gradient = false,
                    const QuadratureSpec& spec = {});

/// Analytic gradient with respect to the wall positions.
std::vector<double> grad_W(const WallConfig& config, const QuadratureSpec& spec = {});

enum class MinimizeStatus { Converged, DivergingToMinusInfinity, BoundaryCollapse, Escaping, MaxIter };

std::string to_string(MinimizeStatus status);

struct MinimizeOptions {
  double grad_tol = 1e-8;
  int max_iter = 5000;
  double W_floor = -1e6;
  double escape_gap = 1e6;
  /// Gaps (in the unconstrained coordinates) below this count as a collapse.
  double collapse_gap = 1e-12;
  /// A converged point must balance its forces: |grad_n| <= balance * sum |force_kn|.
  double balance = 1e-3;
  QuadratureSpec spec{};
};

struct MinimizeReport {
  std::vector<double> argmin;
  double W = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  MinimizeStatus status = MinimizeStatus::MaxIter;
};

/// BFGS descent in (first position, log-gap) coordinates. The confined model
/// works with x = artanh(a). Starts from config.a.
MinimizeReport minimize_W(const WallConfig& config, const MinimizeOptions& options = {});

/// Runs minimize_W from `starts` random positions drawn with `seed`.
std::vector<MinimizeReport> minimize_W_multistart(const WallConfig& config, int starts, std::uint64_t seed,
                                                  const MinimizeOptions& options = {});

struct PathSample {
  double eta = 0.0;
  double W = 0.0;
  EnergyStatus status = EnergyStatus::Finite;
};

/// Family of positions a(eta) for eta in (0, 1].
using PathFamily = std::function<std::vector<double>(double eta)>;

/// a_k -> eta a_k for K <= k <= L (1-based), the rest fixed.
PathFamily block_collapse_path(const std::vector<double>& a, int K, int L);
/// Gap of walls (n, n+1) (1-based n) scaled by eta about its midpoint.
PathFamily pair_gap_path(const std::vector<double>& a, int n);

std::vector<PathSample> scan_path(const WallConfig& config, const PathFamily& path,
                                  const std::vector<double>& etas, const QuadratureSpec& spec = {});

struct CriticalPoint {
  double t0 = 0.0;
  std::vector<double> a;
  double W = 0.0;
  double grad_norm = 0.0;
};

/// Equidistant critical point of the unconfined energy for three alternating
/// walls, present iff d_1 cos(alpha) lies in (-7/9, -1/3).
std::optional<CriticalPoint> critical_point_N3(double alpha, const std::vector<int>& d,
                                               const QuadratureSpec& spec = {});

}  // namespace neel
