// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Discretised micromagnetic energy of a one-dimensional lifting phi with
// m = (cos phi, sin phi): exchange, anisotropy and nonlocal stray-field parts,
// constrained descent over wall configurations, and the asymptotic fit of
// minimal energies against 1/log(1/delta) and 1/log(delta)^2.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "neel/geometry.hpp"

namespace neel {

struct Grid1D {
  double left = -1.0;
  double right = 1.0;
  int n = 1 << 14;

  double h() const { return (right - left) / (n - 1); }
  double x(int i) const { return left + i * h(); }
  /// Index of the node closest to x, clamped to the grid.
  int nearest(double x) const;
  void validate() const;
};

struct MagnetizationProfile {
  Grid1D grid;
  std::vector<double> phi;

  std::vector<double> m1() const;
  std::vector<double> m2() const;
  void validate() const;
};

struct SimulationParams {
  double epsilon = 1e-3;
  Model model = Model::Confined;
  /// Truncation half-width for the unconfined model; 0 selects max(10, 10 * span).
  double half_width = 0.0;
  int n = 1 << 14;
  int pad = 4;
  /// Minimum distance, in grid cells, between pinned nodes and from the ends.
  double pin_tolerance = 4.0;

  double delta() const;
  void validate() const;
};

struct EnergyBreakdown {
  double exchange = 0.0;
  double anisotropy = 0.0;
  double stray = 0.0;
  double total = 0.0;
};

double exchange_energy(const MagnetizationProfile& profile, double epsilon);

/// 1/2 sum h (m1 - cos alpha)^2. Throws DomainError for the confined model.
double anisotropy_energy(const MagnetizationProfile& profile, double alpha, Model model);

struct StrayEnergy {
  double energy = 0.0;
  /// Set when |f| at either end exceeds the decay threshold.
  bool truncation_warning = false;
};

/// Half the squared homogeneous H^{1/2} seminorm of nodal data f with spacing
/// h, extended by zero, via a zero-padded FFT and the |xi| Parseval sum.
StrayEnergy stray_energy_spectral(std::span<const double> f, double h, int pad = 4, double end_threshold = 1e-3);

/// The same quantity by the O(n^2) difference-quotient double sum, with the
/// diagonal from the squared derivative and the exterior of the grid in
/// closed form.
double stray_energy_double_integral(std::span<const double> f, double h);

/// Harmonic extension v of f to the upper half-plane and its conjugate u,
/// sampled at the grid nodes on the given heights (row-major by height).
struct HalfPlaneField {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> v;
  std::vector<double> u;

  double v_at(std::size_t iy, std::size_t ix) const { return v[iy * x.size() + ix]; }
  double u_at(std::size_t iy, std::size_t ix) const { return u[iy * x.size() + ix]; }
};

HalfPlaneField stray_potential_solve(std::span<const double> f, const Grid1D& grid, const std::vector<double>& y,
                                     int pad = 4);

/// Dirichlet energy of the harmonic extension over one padded period and all
/// heights, by finite differences on geometrically graded layers.
double extension_dirichlet_energy(std::span<const double> f, double h, int pad = 4, double growth = 1.05);

EnergyBreakdown total_energy(const MagnetizationProfile& profile, double alpha, const SimulationParams& params);

enum class DescentStatus { Converged, MaxIter, Stalled };
std::string to_string(DescentStatus status);

struct DescentOptions {
  /// Bound on max_i |dE/dphi_i| / h over free nodes.
  double grad_tol = 1e-6;
  int max_iter = 20000;
  /// Stored correction pairs of the quasi-Newton update.
  int memory = 12;
  /// Plateau to the left of the first wall: -alpha (-1) or +alpha (+1).
  int start_sign = -1;
  /// Record every k-th iteration in the trace (0 disables the trace).
  int trace_every = 1;
};

struct TracePoint {
  int iteration = 0;
  EnergyBreakdown energy;
};

struct EnergyMinimum {
  MagnetizationProfile profile;
  EnergyBreakdown energy;
  DescentStatus status = DescentStatus::MaxIter;
  int iterations = 0;
  double grad_norm = 0.0;
  std::vector<int> pinned;
  /// Unconfined only: size of the energy carried by the clamped tails.
  double clamp_error = 0.0;
  std::vector<TracePoint> trace;
};

Grid1D simulation_grid(const WallConfig& config, const SimulationParams& params);

/// Sum of arctan transitions of width delta matching the sign pattern.
MagnetizationProfile initial_profile(const WallConfig& config, const SimulationParams& params, int start_sign = -1);

/// Node indices pinned to the walls. Throws DomainError when walls are closer
/// than the pinning tolerance to each other or to the grid ends.
std::vector<int> pinned_nodes(const WallConfig& config, const Grid1D& grid, double pin_tolerance);

/// Limited-memory quasi-Newton descent, preconditioned by the exchange and
/// |xi| symbols, with monotone backtracking over the free nodes; pinned and
/// end nodes keep their initial values.
EnergyMinimum minimize_energy(const WallConfig& config, const SimulationParams& params,
                              const MagnetizationProfile* init = nullptr, const DescentOptions& options = {});

enum class FitStatus { Ok, IllConditioned };
std::string to_string(FitStatus status);

struct ExpansionFit {
  std::vector<double> epsilon;
  std::vector<double> log_inv_delta;
  std::vector<double> energy;
  std::vector<DescentStatus> runs;
  double A = 0.0;
  double B = 0.0;
  double residual = 0.0;
  double condition = 0.0;
  FitStatus status = FitStatus::Ok;
};

/// Least squares E = A / L + B / L^2 with L = log(1/delta). Requires at
/// least four values spanning two decades of epsilon.
ExpansionFit fit_expansion(const std::vector<double>& epsilon, const std::vector<double>& energy);

/// Minimises the energy for each epsilon (concurrently over `threads`) and fits.
ExpansionFit expansion_fit(const WallConfig& config, const std::vector<double>& epsilon, const SimulationParams& params,
                           const DescentOptions& options = {}, int threads = 1);

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace neel
