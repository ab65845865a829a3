// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#include "neel/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "neel/error.hpp"
#include "neel/specfun.hpp"

namespace neel {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr cd kI{0.0, 1.0};

std::vector<double> gamma_of(const WallConfig& c) {
  std::vector<double> g;
  for (int d : c.d) g.push_back(d - std::cos(c.alpha));
  return g;
}

void require_half_plane(double x2) {
  if (!(x2 >= 0.0) || !std::isfinite(x2)) throw DomainError("evaluation point must satisfy x2 >= 0");
}

// G(z) = int_0^inf e^{-tz} / (1 + it) dt on the ray t = s e^{i theta}, theta = -arg z,
// for Re z >= 0, z != 0. With derivative, returns G'(z) instead.
cd laplace_kernel(cd z, bool derivative, const QuadratureSpec& spec);

// Complex derivative dh of the unconfined pair at (x1, x2).
cd unconfined_dh(double x1, double x2, const QuadratureSpec& spec) {
  if (x1 == 0.0 && x2 == 0.0) throw DomainError("unconfined potentials are singular at the origin");
  const cd dh = kI * laplace_kernel({std::abs(x1), x2}, true, spec);
  return x1 < 0.0 ? std::conj(-dh) : dh;
}

cd laplace_kernel(cd z, bool derivative, const QuadratureSpec& spec) {
  const double m = std::abs(z);
  const cd e = std::polar(1.0, -std::arg(z));
  const cd k = kI * e / m;
  if (!derivative) {
    auto f = [k](double s) { return cd(1.0) / (1.0 + k * s); };
    return e / m * quad::exp_weighted(f, m, spec).value;
  }
  auto f = [k](double s) { return s / (1.0 + k * s); };
  return -(e * e) / (m * m) * quad::exp_weighted(f, m, spec).value;
}

}  // namespace

// ---- single-wall potentials ------------------------------------------------

PotentialPair unconfined_pair(double x1, double x2, const QuadratureSpec& spec) {
  require_half_plane(x2);
  if (x1 == 0.0 && x2 == 0.0) throw DomainError("unconfined potentials are singular at the origin");
  spec.validate();
  const double ax = std::abs(x1);
  const cd z{ax, x2};
  const cd G = laplace_kernel(z, false, spec);
  const cd dG = laplace_kernel(z, true, spec);
  const cd dh = kI * dG;  // h = iG = v - iu
  PotentialPair p;
  p.v = -G.imag();
  p.u = -G.real();
  p.dh = dh;
  if (x1 < 0.0) {
    // v even, u odd in x1: grad v -> (-v1, v2), grad u -> (u1, -u2).
    p.u = -p.u;
    p.dh = std::conj(-dh);
  } else if (x1 == 0.0) {
    p.u = 0.0;
  }
  return p;
}

FieldSample v_unconfined(double x1, double x2, const QuadratureSpec& spec) {
  const auto p = unconfined_pair(x1, x2, spec);
  return {x1, x2, p.v, p.grad_v()};
}

FieldSample u_unconfined(double x1, double x2, const QuadratureSpec& spec) {
  const auto p = unconfined_pair(x1, x2, spec);
  return {x1, x2, p.u, p.grad_u()};
}

cd strip_map(cd w) { return -1.0 / std::cosh(w); }

cd strip_inverse(cd z) {
  if (!(z.imag() >= 0.0)) throw DomainError("strip_inverse: point below the real axis");
  const double m2 = std::norm(z);
  if (m2 == 0.0) throw DomainError("strip_inverse: the origin has no preimage");
  // -1/z with the sign of a zero imaginary part kept at +0.
  const cd zeta{-z.real() / m2, z.imag() == 0.0 ? 0.0 : z.imag() / m2};
  const cd w = std::acosh(zeta);
  if (!(w.real() >= 0.0 && w.imag() >= 0.0 && w.imag() <= kPi)) throw DomainError("strip_inverse: branch failure");
  return w;
}

PotentialPair confined_pair(double x1, double x2) {
  require_half_plane(x2);
  if (x2 == 0.0 && (x1 == 0.0 || std::abs(x1) == 1.0)) {
    throw DomainError("confined potentials are singular at 0 and +-1");
  }
  const cd w = strip_inverse({x1, x2});
  PotentialPair p;
  p.u = 0.5 * kPi - w.imag();
  p.v = w.real();
  const cd ch = std::cosh(w);
  p.dh = ch * ch / std::sinh(w);
  return p;
}

FieldSample u_confined(double x1, double x2) {
  const auto p = confined_pair(x1, x2);
  return {x1, x2, p.u, p.grad_u()};
}

FieldSample v_confined(double x1, double x2) {
  const auto p = confined_pair(x1, x2);
  return {x1, x2, p.v, p.grad_v()};
}

namespace {

// Squared gradient of sum_n weight_n u_{b_n} at z.
double weighted_grad_sq(Model model, const std::vector<double>& b, const std::vector<double>& weight, cd z,
                        const QuadratureSpec& spec) {
  const double x2 = std::max(z.imag(), 0.0);
  cd dh{};
  for (std::size_t n = 0; n < b.size(); ++n) {
    dh += weight[n] * (model == Model::Unconfined ? unconfined_dh(z.real() - b[n], x2, spec)
                                                  : wall_pair(model, b[n], z.real(), x2, spec).dh);
  }
  return std::norm(dh);
}

}  // namespace

PotentialPair wall_pair(Model model, double b, double x1, double x2, const QuadratureSpec& spec) {
  if (model == Model::Unconfined) return unconfined_pair(x1 - b, x2, spec);
  if (!(std::abs(b) < 1.0)) throw DomainError("confined wall position must lie in (-1, 1)");
  require_half_plane(x2);
  const cd z{x1, x2};
  const cd den = 1.0 - b * z;
  cd zp = mobius(-b, z);
  if (x2 == 0.0) zp = {zp.real(), 0.0};
  PotentialPair p = confined_pair(zp.real(), zp.imag());
  p.dh *= (1.0 - b * b) / (den * den);
  return p;
}

// ---- superpositions ----------------------------------------------------------

PotentialPair star_pair(const WallConfig& config, double x1, double x2, const QuadratureSpec& spec) {
  config.validate();
  const auto g = gamma_of(config);
  PotentialPair sum;
  for (std::size_t n = 0; n < config.size(); ++n) {
    const auto p = wall_pair(config.model, config.a[n], x1, x2, spec);
    sum.u += g[n] * p.u;
    sum.v += g[n] * p.v;
    sum.dh += g[n] * p.dh;
  }
  return sum;
}

FieldSample u_star(const WallConfig& config, double x1, double x2, const QuadratureSpec& spec) {
  const auto p = star_pair(config, x1, x2, spec);
  return {x1, x2, p.u, p.grad_u()};
}

FieldSample v_star(const WallConfig& config, double x1, double x2, const QuadratureSpec& spec) {
  const auto p = star_pair(config, x1, x2, spec);
  return {x1, x2, p.v, p.grad_v()};
}

double mu_star(const WallConfig& config, double x1, const QuadratureSpec& spec) {
  if (config.model != Model::Unconfined) throw DomainError("mu_star is defined for the unconfined model");
  config.validate();
  const auto g = gamma_of(config);
  double s = 0.0;
  for (std::size_t n = 0; n < config.size(); ++n) {
    const double t = std::abs(x1 - config.a[n]);
    if (t == 0.0) throw DomainError("mu_star: evaluation at a wall position");
    s += g[n] * eval_I(t, spec).value;
  }
  return s;
}

std::vector<NearWallData> near_wall_data(const WallConfig& config, const QuadratureSpec& spec) {
  config.validate();
  const auto g = gamma_of(config);
  std::vector<NearWallData> out;
  for (std::size_t n = 0; n < config.size(); ++n) {
    NearWallData nd;
    nd.index = static_cast<int>(n);
    for (std::size_t k = 0; k < config.size(); ++k) {
      if (k == n) continue;
      if (config.model == Model::Unconfined) nd.lambda += g[k] * eval_I(std::abs(config.a[k] - config.a[n]), spec).value;
      nd.omega += g[k] * wall_pair(config.model, config.a[k], config.a[n], 0.0, spec).u;
    }
    out.push_back(nd);
  }
  return out;
}

// ---- Dirichlet integrals -----------------------------------------------------

namespace {

// int over theta in (0, pi), rho in (r_in, rho_max(theta)) of f(c + rho e^{i theta}) rho d rho d theta,
// integrated in (theta, s = log rho) with Gauss-Legendre panels.
double polar_integral(double c, double r_in, const std::function<double(double)>& rho_max,
                      std::vector<double> kinks, const std::function<double(cd)>& f, const PolarGrid& grid,
                      int refine, bool grade_outer) {
  std::vector<double> tb{0.0, kPi};
  for (double k : kinks) {
    if (k > 0.0 && k < kPi) tb.push_back(k);
  }
  const int per = std::max(1, grid.theta_panels) * refine;
  for (int i = 1; i < per; ++i) tb.push_back(kPi * i / per);
  double edge = kPi / per;
  for (int k = 0; k < grid.end_grading * refine; ++k) {
    edge *= 0.5;
    tb.push_back(edge);
    tb.push_back(kPi - edge);
  }
  std::sort(tb.begin(), tb.end());
  tb.erase(std::unique(tb.begin(), tb.end()), tb.end());

  const auto& rule = quad::gauss_legendre(grid.order);
  const double s0 = std::log(r_in);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < tb.size(); ++i) {
    const double ta = tb[i], tbb = tb[i + 1];
    const double th = 0.5 * (tbb - ta), tm = 0.5 * (tbb + ta);
    for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
      const double theta = tm + th * rule.nodes[a];
      const double s1 = std::log(rho_max(theta));
      if (!(s1 > s0)) continue;
      std::vector<double> sb{s0, s1};
      const int ns = std::max(1, static_cast<int>(std::ceil((s1 - s0) / grid.ds))) * refine;
      for (int j = 1; j < ns; ++j) sb.push_back(s0 + (s1 - s0) * j / ns);
      if (grade_outer) {
        double gap = (s1 - s0) / ns;
        for (int k = 0; k < grid.end_grading * refine; ++k) {
          gap *= 0.5;
          sb.push_back(s1 - gap);
        }
      }
      std::sort(sb.begin(), sb.end());
      const cd dir = std::polar(1.0, theta);
      double inner = 0.0;
      for (std::size_t j = 0; j + 1 < sb.size(); ++j) {
        const double sh = 0.5 * (sb[j + 1] - sb[j]), sm = 0.5 * (sb[j + 1] + sb[j]);
        double acc = 0.0;
        for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
          const double s = sm + sh * rule.nodes[b];
          const double rho = std::exp(s);
          acc += rule.weights[b] * f(c + rho * dir) * rho * rho;
        }
        inner += acc * sh;
      }
      total += rule.weights[a] * inner * th;
    }
  }
  return total;
}

Estimate<double> refined_polar(double c, double r_in, const std::function<double(double)>& rho_max,
                               const std::vector<double>& kinks, const std::function<double(cd)>& f,
                               const PolarGrid& grid, bool grade_outer) {
  const double coarse = polar_integral(c, r_in, rho_max, kinks, f, grid, 1, grade_outer);
  const double fine = polar_integral(c, r_in, rho_max, kinks, f, grid, 2, grade_outer);
  const double err = std::abs(fine - coarse);
  if (err > grid.rel_tol * std::max(1.0, std::abs(fine))) {
    throw AccuracyError("polar grid too coarse for the requested tolerance", fine, err);
  }
  return {fine, err};
}

}  // namespace

Estimate<double> dirichlet_annulus(Model model, double b, double r, double R, const PolarGrid& grid,
                                   const QuadratureSpec& spec) {
  if (!(r > 0.0 && r < R)) throw DomainError("dirichlet_annulus: need 0 < r < R");
  if (model == Model::Confined && !(R <= 1.0 - std::abs(b) + 1e-15)) {
    throw DomainError("dirichlet_annulus: confined model needs R <= 1 - |b|");
  }
  const std::vector<double> bs{b}, ws{1.0};
  auto f = [&](cd z) { return weighted_grad_sq(model, bs, ws, z, spec); };
  const bool touches = model == Model::Confined && R >= 1.0 - std::abs(b) - 1e-12;
  return refined_polar(b, r, [R](double) { return R; }, {}, f, grid, touches);
}

CrossTerm cross_term(double b, const QuadratureSpec& spec) {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("cross_term: b must be positive");
  spec.validate();
  QuadratureSpec piece = spec;
  piece.abs_tol = spec.abs_tol * 1e-2;
  double piece_err = 0.0;
  auto series = [&](auto&& h) {
    auto term = [&](int k) {
      const double lo = k == 0 ? 0.0 : k * kPi - 0.5 * kPi;
      const double hi = k * kPi + 0.5 * kPi;
      const auto e = quad::adaptive(h, lo, hi, piece);
      piece_err += e.error;
      return e.value;
    };
    return quad::euler_alternating(term, spec);
  };
  const auto grad = series([b](double t) { return t * std::cos(t) / ((b + t) * (b + t)); });
  const auto bdry = series([b](double t) { return std::cos(t) / ((b + t) * (b + t)); });
  CrossTerm c;
  c.gradient_term = kPi * grad.value;
  c.boundary_term = b * kPi * bdry.value;
  c.total = c.gradient_term + c.boundary_term;
  c.error = kPi * (grad.error + b * bdry.error + piece_err);
  return c;
}

Estimate<double> mu_star_square(const WallConfig& config, const QuadratureSpec& spec) {
  if (config.model != Model::Unconfined) throw DomainError("mu_star_square is defined for the unconfined model");
  config.validate();
  const auto& a = config.a;
  if (a.empty()) return {0.0, 0.0};
  const auto g = gamma_of(config);
  double charge = 0.0;
  for (double x : g) charge += x;
  double scale = 1.0;
  for (std::size_t i = 1; i < a.size(); ++i) scale = std::min(scale, 0.5 * (a[i] - a[i - 1]));
  constexpr double kFar = 1e3;
  std::vector<double> br;
  for (double x : a) {
    br.push_back(x);
    double h = scale;
    for (int k = 0; k < 24; ++k, h *= 0.25) {
      br.push_back(x - h);
      br.push_back(x + h);
    }
  }
  for (double h = 1.0; h < kFar; h *= 2.0) {
    br.push_back(a.front() - h);
    br.push_back(a.back() + h);
  }
  const double lo = a.front() - kFar, hi = a.back() + kFar;
  br.push_back(lo);
  br.push_back(hi);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  br.erase(std::remove_if(br.begin(), br.end(), [&](double x) { return x < lo || x > hi; }), br.end());
  auto f = [&](double x) {
    for (double p : a) {
      if (x == p) return 0.0;
    }
    const double m = mu_star(config, x, spec);
    return m * m;
  };
  QuadratureSpec q = spec;
  q.abs_tol = std::max(spec.abs_tol, 1e-9);
  q.rel_tol = std::max(spec.rel_tol, 1e-9);
  auto e = quad::adaptive(f, std::span<const double>(br), q);
  // mu* ~ charge / x^2 beyond the truncation.
  e.value += 2.0 * charge * charge / (3.0 * kFar * kFar * kFar);
  return e;
}

Estimate<double> boundary_square(const QuadratureSpec& spec) {
  return mu_star_square({Model::Unconfined, {0.0}, {1}, 0.5 * kPi}, spec);
}

Extrapolation extrapolate_r_log_r(const std::vector<double>& r, const std::vector<double>& value) {
  if (r.size() != value.size() || r.size() < 2) throw DomainError("extrapolation needs at least two samples");
  const std::size_t m = r.size() >= 3 ? 3 : 2;
  auto basis = [m](double x, std::size_t j) { return j == 0 ? 1.0 : j == 1 ? x * std::log(1.0 / x) : x; };
  // Normal equations of the small least-squares problem, solved by Gaussian elimination.
  double A[3][4] = {};
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) A[j][k] += basis(r[i], j) * basis(r[i], k);
      A[j][m] += basis(r[i], j) * value[i];
    }
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    for (std::size_t j = c + 1; j < m; ++j) {
      if (std::abs(A[j][c]) > std::abs(A[piv][c])) piv = j;
    }
    std::swap(A[c], A[piv]);
    if (!(std::abs(A[c][c]) > 1e-300)) throw DomainError("extrapolation: degenerate r sequence");
    for (std::size_t j = 0; j < m; ++j) {
      if (j == c) continue;
      const double f = A[j][c] / A[c][c];
      for (std::size_t k = c; k <= m; ++k) A[j][k] -= f * A[c][k];
    }
  }
  double coef[3] = {0.0, 0.0, 0.0};
  for (std::size_t j = 0; j < m; ++j) coef[j] = A[j][m] / A[j][j];
  Extrapolation e;
  e.r = r;
  e.value = value;
  e.limit = coef[0];
  e.slope = coef[1];
  e.slope_r = coef[2];
  double rss = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double d = value[i] - e.limit - e.slope * basis(r[i], 1) - e.slope_r * r[i];
    rss += d * d;
  }
  e.residual = std::sqrt(rss / r.size());
  return e;
}

namespace {
void check_r_sequence(const std::vector<double>& r) {
  if (r.size() < 2) throw DomainError("need at least two radii");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0 && r[i] < 1.0)) throw DomainError("radii must lie in (0, 1)");
    if (i > 0 && !(r[i] < r[i - 1])) throw DomainError("radii must be decreasing");
  }
}
}  // namespace

Extrapolation near_wall_energy(const std::vector<double>& r_sequence, const PolarGrid& grid,
                               const QuadratureSpec& spec) {
  check_r_sequence(r_sequence);
  const double v2 = boundary_square(spec).value;
  const std::vector<double> bs{0.0}, ws{1.0};
  auto f = [&](cd z) { return weighted_grad_sq(Model::Unconfined, bs, ws, z, spec); };
  const double far = grid.far_radius;
  std::vector<double> vals;
  for (double r : r_sequence) {
    const double e = refined_polar(0.0, r, [far](double) { return far; }, {}, f, grid, false).value;
    vals.push_back(e + v2 - kPi * std::log(1.0 / r));
  }
  return extrapolate_r_log_r(r_sequence, vals);
}

Estimate<double> star_dirichlet(const WallConfig& config, double r, const PolarGrid& grid,
                                const QuadratureSpec& spec) {
  if (config.model != Model::Unconfined) throw DomainError("star_dirichlet is implemented for the unconfined model");
  config.validate();
  const auto& a = config.a;
  const std::size_t n = a.size();
  if (n == 0) return {0.0, 0.0};
  if (n > 1 && !(r < rho(config))) throw DomainError("star_dirichlet: r must be below half the smallest gap");
  const auto g = gamma_of(config);
  auto f = [&](cd z) { return weighted_grad_sq(config.model, a, g, z, spec); };
  const double far = grid.far_radius;
  Estimate<double> total;
  for (std::size_t k = 0; k < n; ++k) {
    const double left = k == 0 ? -HUGE_VAL : 0.5 * (a[k - 1] + a[k]);
    const double right = k + 1 == n ? HUGE_VAL : 0.5 * (a[k] + a[k + 1]);
    const double c = a[k];
    auto rho_max = [=](double theta) {
      const double ct = std::cos(theta);
      double m = far;
      if (ct > 0.0 && std::isfinite(right)) m = std::min(m, (right - c) / ct);
      if (ct < 0.0 && std::isfinite(left)) m = std::min(m, (left - c) / ct);
      return m;
    };
    std::vector<double> kinks;
    if (std::isfinite(right) && right - c < far) kinks.push_back(std::acos((right - c) / far));
    if (std::isfinite(left) && c - left < far) kinks.push_back(kPi - std::acos((c - left) / far));
    const auto e = refined_polar(c, r, rho_max, kinks, f, grid, false);
    total.value += e.value;
    total.error += e.error;
  }
  return total;
}

W1Result w1_unconfined(const WallConfig& config, const std::vector<double>& r_sequence, const PolarGrid& grid,
                       const QuadratureSpec& spec) {
  if (config.model != Model::Unconfined) throw DomainError("w1_unconfined needs the unconfined model");
  check_r_sequence(r_sequence);
  const auto g = gammas(config);
  const double m2 = mu_star_square(config, spec).value;
  std::vector<double> vals;
  for (double r : r_sequence) {
    const double e = star_dirichlet(config, r, grid, spec).value;
    vals.push_back(e + m2 - kPi * std::log(1.0 / r) * g.Gamma);
  }
  W1Result w;
  w.fit = extrapolate_r_log_r(r_sequence, vals);
  w.W1 = 0.5 * w.fit.limit;
  return w;
}

// ---- finite-difference validation -------------------------------------------

SampleRegion rect_region(double x1a, double x1b, double x2a, double x2b, double h, int per_side) {
  if (per_side < 1 || !(h > 0.0)) throw DomainError("rect_region: bad resolution");
  SampleRegion r;
  r.h = h;
  for (int i = 0; i < per_side; ++i) {
    for (int j = 0; j < per_side; ++j) {
      const double fx = per_side == 1 ? 0.5 : static_cast<double>(i) / (per_side - 1);
      const double fy = per_side == 1 ? 0.5 : static_cast<double>(j) / (per_side - 1);
      r.centres.push_back({x1a + fx * (x1b - x1a), x2a + fy * (x2b - x2a)});
    }
  }
  return r;
}

SampleRegion half_annulus_region(double c, double r_in, double r_out, double h, int n_radial, int n_angular) {
  if (n_radial < 1 || n_angular < 1 || !(h > 0.0) || !(r_in < r_out)) throw DomainError("half_annulus_region: bad input");
  SampleRegion r;
  r.h = h;
  for (int i = 0; i < n_radial; ++i) {
    const double rho = r_in + (r_out - r_in) * (i + 0.5) / n_radial;
    for (int j = 0; j < n_angular; ++j) {
      const double th = kPi * (j + 0.5) / n_angular;
      r.centres.push_back({c + rho * std::cos(th), rho * std::sin(th)});
    }
  }
  return r;
}

double harmonicity_residual(const ScalarField& f, const SampleRegion& region) {
  const double h = region.h;
  double worst = 0.0;
  for (const auto& p : region.centres) {
    const double x = p[0], y = p[1];
    if (!(y - h >= 0.0)) throw DomainError("harmonicity_residual: stencil leaves the half-plane");
    const double f0 = f(x, y);
    const double d11 = (f(x + h, y) - 2.0 * f0 + f(x - h, y)) / (h * h);
    const double d22 = (f(x, y + h) - 2.0 * f0 + f(x, y - h)) / (h * h);
    const double scale = std::abs(d11) + std::abs(d22);
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(d11 + d22) / scale);
  }
  return worst;
}

double conjugacy_residual(const PairField& f, const SampleRegion& region) {
  const double h = region.h;
  double worst = 0.0;
  for (const auto& p : region.centres) {
    const double x = p[0], y = p[1];
    if (!(y - h >= 0.0)) throw DomainError("conjugacy_residual: stencil leaves the half-plane");
    const auto e = f(x + h, y), w = f(x - h, y), n = f(x, y + h), s = f(x, y - h);
    const double v1 = (e.v - w.v) / (2 * h), v2 = (n.v - s.v) / (2 * h);
    const double u1 = (e.u - w.u) / (2 * h), u2 = (n.u - s.u) / (2 * h);
    worst = std::max({worst, std::abs(v1 + u2), std::abs(v2 - u1)});
  }
  return worst;
}

}  // namespace neel
