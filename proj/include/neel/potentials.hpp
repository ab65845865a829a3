// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "neel/geometry.hpp"
#include "neel/quadrature.hpp"

namespace neel {

struct FieldSample {
  double x1 = 0.0;
  double x2 = 0.0;
  double value = 0.0;
  std::array<double, 2> grad{0.0, 0.0};
};

/// A conjugate pair (u, v) at one point. `dh` is the complex derivative of
/// the analytic function h = v - i u (up to an additive constant), so that
/// grad v = (Re dh, -Im dh) and grad u = (-Im dh, -Re dh).
struct PotentialPair {
  double u = 0.0;
  double v = 0.0;
  std::complex<double> dh{};
  std::array<double, 2> grad_u() const { return {-dh.imag(), -dh.real()}; }
  std::array<double, 2> grad_v() const { return {dh.real(), -dh.imag()}; }
  double grad_sq() const { return std::norm(dh); }
};

// ---- single-wall potentials ------------------------------------------------

/// Unconfined pair (u, v) with v(x1, 0) = I(|x1|); x2 >= 0, x != 0.
PotentialPair unconfined_pair(double x1, double x2, const QuadratureSpec& spec = {});
FieldSample v_unconfined(double x1, double x2, const QuadratureSpec& spec = {});
FieldSample u_unconfined(double x1, double x2, const QuadratureSpec& spec = {});

/// The strip map F(w) = -1 / cosh w and its inverse onto
/// {Re w >= 0, 0 <= Im w <= pi}.
std::complex<double> strip_map(std::complex<double> w);
std::complex<double> strip_inverse(std::complex<double> z);

/// Confined pair: u = pi/2 - Im w and v = Re w with w = strip_inverse(z).
/// Singular at 0 and +-1 on the boundary.
PotentialPair confined_pair(double x1, double x2);
FieldSample u_confined(double x1, double x2);
FieldSample v_confined(double x1, double x2);

/// Potentials of a wall at b: a translate (unconfined) or u o Phi_{-b} (confined).
PotentialPair wall_pair(Model model, double b, double x1, double x2, const QuadratureSpec& spec = {});

// ---- superpositions ----------------------------------------------------------

/// sum_n gamma_n (u_{a_n}, v_{a_n}).
PotentialPair star_pair(const WallConfig& config, double x1, double x2, const QuadratureSpec& spec = {});
FieldSample u_star(const WallConfig& config, double x1, double x2, const QuadratureSpec& spec = {});
FieldSample v_star(const WallConfig& config, double x1, double x2, const QuadratureSpec& spec = {});
/// Boundary trace sum_n gamma_n I(|x1 - a_n|) of the unconfined model.
double mu_star(const WallConfig& config, double x1, const QuadratureSpec& spec = {});

struct NearWallData {
  int index = 0;
  double lambda = 0.0;  // sum_{k != n} gamma_k I(|a_k - a_n|) (unconfined only)
  double omega = 0.0;   // sum_{k != n} gamma_k u_{a_k}(a_n, 0)
};
std::vector<NearWallData> near_wall_data(const WallConfig& config, const QuadratureSpec& spec = {});

// ---- Dirichlet integrals -----------------------------------------------------

/// Resolution of the polar tensor-product Gauss-Legendre grids.
struct PolarGrid {
  double ds = 0.5;         // panel width in log-radius
  int theta_panels = 8;    // uniform angular panels (plus graded end panels)
  int order = 12;          // Gauss points per panel direction
  int end_grading = 6;     // geometric refinements towards the angular ends
  double far_radius = 1e3; // truncation radius for unbounded regions
  double rel_tol = 1e-4;   // tolerated grid-refinement discrepancy
};

/// Integral of |grad u_b|^2 over the half annulus r < |x - (b,0)| < R.
Estimate<double> dirichlet_annulus(Model model, double b, double r, double R, const PolarGrid& grid = {},
                                   const QuadratureSpec& spec = {});

struct CrossTerm {
  double gradient_term = 0.0;  // int grad v_b . grad v
  double boundary_term = 0.0;  // int v_b(x1,0) v(x1,0) dx1
  double total = 0.0;
  double error = 0.0;
};

/// Both summands of the tail-tail interaction of walls at distance b > 0,
/// from their one-dimensional oscillatory representations.
CrossTerm cross_term(double b, const QuadratureSpec& spec = {});

/// int_R v(x1, 0)^2 dx1.
Estimate<double> boundary_square(const QuadratureSpec& spec = {});

struct Extrapolation {
  std::vector<double> r;
  std::vector<double> value;  // bracketed quantity per r
  double limit = 0.0;         // fitted value at r = 0
  double slope = 0.0;         // coefficient of r log(1/r)
  double slope_r = 0.0;       // coefficient of r (three or more samples)
  double residual = 0.0;      // rms fit residual
};

/// Least-squares fit value(r) = limit + slope * r log(1/r) + slope_r * r; the
/// last term is dropped when only two samples are given.
Extrapolation extrapolate_r_log_r(const std::vector<double>& r, const std::vector<double>& value);

/// int_{R^2_+ \ B_r} |grad v|^2 + int v(.,0)^2 - pi log(1/r), extrapolated to r = 0.
Extrapolation near_wall_energy(const std::vector<double>& r_sequence, const PolarGrid& grid = {},
                               const QuadratureSpec& spec = {});

/// int_{Omega_r(a)} |grad u*|^2 over the upper half-plane minus half-disks
/// of radius r about the walls (unconfined), by polar integration over the
/// cells between wall midpoints.
Estimate<double> star_dirichlet(const WallConfig& config, double r, const PolarGrid& grid = {},
                                const QuadratureSpec& spec = {});

/// int_R mu*(x1)^2 dx1.
Estimate<double> mu_star_square(const WallConfig& config, const QuadratureSpec& spec = {});

/// Half of the extrapolated bracket int |grad u*|^2 + int (mu*)^2 - pi log(1/r) Gamma.
struct W1Result {
  double W1 = 0.0;
  Extrapolation fit;
};
W1Result w1_unconfined(const WallConfig& config, const std::vector<double>& r_sequence,
                       const PolarGrid& grid = {}, const QuadratureSpec& spec = {});

// ---- finite-difference validation -------------------------------------------

using ScalarField = std::function<double(double, double)>;
using PairField = std::function<PotentialPair(double, double)>;

/// Centres at which the finite-difference checks are evaluated, with the
/// stencil spacing h.
struct SampleRegion {
  std::vector<std::array<double, 2>> centres;
  double h = 1e-3;
};

SampleRegion rect_region(double x1a, double x1b, double x2a, double x2b, double h, int per_side);
/// Upper half annulus about (c, 0).
SampleRegion half_annulus_region(double c, double r_in, double r_out, double h, int n_radial, int n_angular);

/// Max over centres of |5-point Laplacian| / (|D11| + |D22|).
double harmonicity_residual(const ScalarField& f, const SampleRegion& region);

/// Max over centres of the central-difference residuals of d1 v = -d2 u and
/// d2 v = d1 u.
double conjugacy_residual(const PairField& f, const SampleRegion& region);

}  // namespace neel
