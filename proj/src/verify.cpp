// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#include "neel/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "neel/error.hpp"
#include "neel/geometry.hpp"
#include "neel/micromag.hpp"
#include "neel/potentials.hpp"
#include "neel/profiles.hpp"
#include "neel/renorm.hpp"
#include "neel/specfun.hpp"

namespace neel {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return out;
}

class Checker {
 public:
  explicit Checker(CriterionResult& result) : result_(result) {}

  bool check(const std::string& name, bool ok, const std::string& measured, const std::string& expected,
             const std::string& tolerance) {
    result_.checks.push_back(
        {{"check", name}, {"passed", ok}, {"measured", measured}, {"expected", expected}, {"tolerance", tolerance}});
    all_ = all_ && ok;
    return ok;
  }
  bool close(const std::string& name, double measured, double expected, double tol, bool relative) {
    const double err = relative ? std::abs(measured - expected) / std::abs(expected) : std::abs(measured - expected);
    return check(name, err <= tol, fmt(measured), fmt(expected), (relative ? "rel " : "abs ") + fmt(tol));
  }
  bool all() const { return all_; }
  void headline(const std::string& measured, const std::string& expected, const std::string& tolerance) {
    result_.measured = measured;
    result_.expected = expected;
    result_.tolerance = tolerance;
  }

 private:
  CriterionResult& result_;
  bool all_ = true;
};

WallConfig make(Model model, std::vector<double> a, std::vector<int> d, double alpha) {
  WallConfig c;
  c.model = model;
  c.a = std::move(a);
  c.d = std::move(d);
  c.alpha = alpha;
  return c;
}

// 1. Special functions.
void special_functions(Checker& ck) {
  const SpecialValue i0 = eval_I0();
  ck.close("I0 from its integral", i0.value, -0.5772156649, 1e-8, false);
  ck.close("I0 against the published constant", i0.value, kI0, 1e-8, false);

  double worst_low = 1e300, worst_high = 1e300;
  for (double t : log_space(1e-4, 10.0, 40)) {
    const SpecialValue it = eval_I(t);
    const double q = it.value + std::log(t) - kI0;
    worst_low = std::min(worst_low, q + it.error);
    worst_high = std::min(worst_high, 0.5 * kPi * t - q + it.error);
  }
  ck.check("0 <= I(t) + log t - I0 on 40 points in [1e-4, 10]", worst_low >= 0.0, "min " + fmt(worst_low), ">= 0",
           "quadrature error");
  ck.check("I(t) + log t - I0 <= pi t / 2 on 40 points in [1e-4, 10]", worst_high >= 0.0,
           "min slack " + fmt(worst_high), ">= 0", "quadrature error");

  double worst_decay = 1e300;
  for (double t : log_space(0.1, 100.0, 40)) {
    const SpecialValue it = eval_I(t);
    worst_decay = std::min(worst_decay, 1.0 / (t * t) - it.value + it.error);
  }
  ck.check("I(t) <= 1/t^2 on 40 points in [0.1, 100]", worst_decay >= 0.0, "min slack " + fmt(worst_decay), ">= 0",
           "quadrature error");

  double worst_alt = 0.0;
  for (double t : {0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 50.0}) {
    worst_alt = std::max(worst_alt, std::abs(eval_I_alt(t).value - eval_I(t).value));
  }
  ck.check("I against the oscillatory representation at 7 points", worst_alt <= 1e-6, "max diff " + fmt(worst_alt),
           "0", "abs 1e-6");
  ck.headline("I0 = " + fmt(i0.value), "-0.5772156649", "1e-8");
}

// 2. Ratio monotonicity.
void ratio_property(Checker& ck) {
  const auto ts = log_space(1e-3, 1e3, 61);
  std::vector<double> r;
  for (double t : ts) r.push_back(I_prime_ratio(t));
  bool decreasing = true;
  for (std::size_t i = 1; i < r.size(); ++i) decreasing = decreasing && r[i] < r[i - 1];
  ck.check("I'(2t)/I'(t) strictly decreasing on 61 points in [1e-3, 1e3]", decreasing,
           fmt(r.front()) + " -> " + fmt(r.back()), "decreasing", "strict");
  ck.close("limit 1/2 at t = 1e-3", r.front(), 0.5, 0.02, true);
  ck.close("limit 1/8 at t = 1e3", r.back(), 0.125, 0.02, true);
  double worst = 0.0;
  for (double q : {0.13, 0.2, 0.25, 1.0 / 3.0, 0.4, 0.45, 0.49}) {
    const double t = ratio_root(q);
    worst = std::max(worst, std::abs(I_prime_ratio(t) - q));
  }
  ck.check("ratio_root round trip on 7 values", worst <= 1e-6, "max error " + fmt(worst), "0", "abs 1e-6");
  ck.headline(fmt(r.front()) + " .. " + fmt(r.back()), "0.5 .. 0.125", "2%");
}

// 3. Cross-term identity.
void cross_terms(Checker& ck) {
  double worst = 0.0;
  for (double b : {0.25, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const CrossTerm ct = cross_term(b);
    const double target = kPi * eval_I(b).value;
    worst = std::max(worst, std::abs(ct.total - target) / target);
    ck.close("gradient + boundary term = pi I(b), b = " + fmt(b), ct.total, target, 1e-5, true);
  }
  ck.headline("max rel err " + fmt(worst), "pi I(b)", "1e-5");
}

// 4. Near-wall energy.
void near_wall(Checker& ck) {
  const auto sq = boundary_square();
  ck.close("int v(x1, 0)^2 dx1 = pi", sq.value, kPi, 1e-4, false);
  const Extrapolation ex = near_wall_energy({0.2, 0.1, 0.05});
  ck.close("bracket extrapolated to r = 0 equals pi I0", ex.limit, kPi * kI0, 0.05, true);
  ck.headline("limit " + fmt(ex.limit), fmt(kPi * kI0), "5%");
}

// 5. Sign relation W1 = -W.
void sign_relation(Checker& ck) {
  const std::vector<WallConfig> configs = {
      make(Model::Unconfined, {0.0}, {1}, 0.5 * kPi),
      make(Model::Unconfined, {0.0, 1.0}, {1, -1}, 0.5 * kPi),
      make(Model::Unconfined, {0.0, 1.5}, {1, 1}, 1.0),
  };
  double worst = 0.0;
  for (const auto& c : configs) {
    const W1Result w1 = w1_unconfined(c, {0.2, 0.1, 0.05});
    const double target = -W_unconfined(c).W;
    worst = std::max(worst, std::abs(w1.W1 - target) / std::abs(target));
    ck.close("W1 = -W for N = " + std::to_string(c.size()) + ", d1 d2 = " +
                 std::to_string(c.size() > 1 ? c.d[0] * c.d[1] : 1),
             w1.W1, target, 0.05, true);
  }
  ck.headline("max rel err " + fmt(worst), "-W", "5%");
}

// 6. Renormalised-energy landscape.
void landscape(Checker& ck, const VerifyOptions& options) {
  // (a) confined interior minima.
  for (int n : {2, 3}) {
    std::vector<double> a;
    for (int k = 1; k <= n; ++k) a.push_back(-0.6 + 1.2 * (k - 1) / (n - 1) + 0.05 * k);
    const WallConfig c = make(Model::Confined, a, alternating(n, 1), 0.5 * kPi);
    const MinimizeReport r = minimize_W(c);
    bool interior = r.status == MinimizeStatus::Converged;
    for (double x : r.argmin) interior = interior && std::abs(x) < 1.0;
    // Local minimum: every coordinate perturbation raises W.
    bool minimum = interior;
    if (interior) {
      for (std::size_t k = 0; k < r.argmin.size(); ++k) {
        for (double s : {-1e-3, 1e-3}) {
          WallConfig p = c;
          p.a = r.argmin;
          p.a[k] += s;
          minimum = minimum && W_confined(p).W > r.W;
        }
      }
    }
    ck.check("(a) confined N = " + std::to_string(n) + " converges to an interior minimum",
             minimum && r.grad_norm <= 1e-8, to_string(r.status) + ", |grad| " + fmt(r.grad_norm),
             "converged minimum", "|grad| <= 1e-8");
  }

  // (b) confined N = 3 below the critical angle: collapse to -infinity.
  {
    const WallConfig c = make(Model::Confined, {-0.5, 0.1, 0.5}, {-1, 1, -1}, 0.2);
    const MinimizeReport r = minimize_W(c);
    ck.check("(b) minimize_W at alpha = 0.2, d = (-1, 1, -1)", r.status == MinimizeStatus::DivergingToMinusInfinity,
             to_string(r.status), "diverging-to-minus-infinity", "status");
    const auto etas = log_space(1.0, 1e-8, 17);
    const auto path = scan_path(c, block_collapse_path(c.a, 1, 3), etas);
    bool monotone = true;
    for (std::size_t i = 1; i < path.size(); ++i) monotone = monotone && path[i].W < path[i - 1].W;
    const double drop = path.front().W - path.back().W;
    ck.check("(b) W decreases without bound along the block collapse path", monotone && drop > 100.0,
             "W " + fmt(path.front().W) + " -> " + fmt(path.back().W), "monotone, drop > 100", "eta = 1 .. 1e-8");
  }

  // (c) unconfined N = 3, cos alpha = -1/2: one equidistant critical point, no minimiser.
  {
    const double alpha = std::acos(-0.5);
    const std::vector<int> d = {1, -1, 1};
    const auto cp = critical_point_N3(alpha, d);
    bool ok = cp.has_value() && cp->grad_norm <= 1e-6;
    if (ok) ok = std::abs((cp->a[1] - cp->a[0]) - (cp->a[2] - cp->a[1])) <= 1e-12 * (1.0 + cp->t0);
    ck.check("(c) equidistant critical point", ok,
             cp ? "t0 " + fmt(cp->t0) + ", |grad| " + fmt(cp->grad_norm) : std::string("none"), "exists",
             "|grad| <= 1e-6");
    // Along the equidistant family the outer force changes sign once.
    int sign_changes = 0;
    double prev = 0.0;
    for (double t : log_space(1e-3, 1e3, 121)) {
      const auto g = grad_W(make(Model::Unconfined, {-t, 0.0, t}, d, alpha));
      if (prev != 0.0 && (g[2] > 0) != (prev > 0)) ++sign_changes;
      prev = g[2];
    }
    ck.check("(c) critical point unique on the equidistant family", sign_changes == 1,
             std::to_string(sign_changes) + " sign change(s)", "1", "exact");
    const auto runs = minimize_W_multistart(make(Model::Unconfined, {-1.0, 0.0, 1.0}, d, alpha), 8, options.seed);
    int converged = 0;
    for (const auto& r : runs) converged += r.status == MinimizeStatus::Converged;
    ck.check("(c) multi-start minimisation never converges", converged == 0,
             std::to_string(converged) + " of " + std::to_string(runs.size()) + " converged", "0", "exact");
  }

  // (d) unconfined even N: no stationary point, W decreases as gaps grow.
  for (int n : {2, 4}) {
    std::vector<double> a;
    for (int k = 0; k < n; ++k) a.push_back(k - 0.5 * (n - 1));
    const WallConfig c = make(Model::Unconfined, a, alternating(n, 1), 0.5 * kPi);
    const MinimizeReport r = minimize_W(c);
    ck.check("(d) unconfined N = " + std::to_string(n) + " has no stationary point",
             r.status != MinimizeStatus::Converged, to_string(r.status), "not converged", "status");
    bool monotone = true;
    double prev = 0.0;
    std::string trail;
    for (double lam : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
      WallConfig p = c;
      for (double& x : p.a) x *= lam;
      const double w = W_unconfined(p).W;
      if (lam > 1.0) monotone = monotone && w < prev;
      prev = w;
      trail += (trail.empty() ? "" : ", ") + fmt(w);
    }
    ck.check("(d) N = " + std::to_string(n) + " W decreases as the outer gaps grow", monotone, trail, "decreasing",
             "strict");
  }
  ck.headline("see checks", "all landscape properties", "per check");
}

// 7. Repulsion and attraction signs.
void interaction_signs(Checker& ck) {
  struct Case {
    WallConfig config;
    int pair;  // 1-based left wall of the pair
  };
  std::vector<Case> cases;
  for (double alpha : {0.5 * kPi, 1.0, 2.0}) {
    for (Model m : {Model::Confined, Model::Unconfined}) {
      const double s = m == Model::Confined ? 0.2 : 1.0;
      cases.push_back({make(m, {-s, s}, {1, -1}, alpha), 1});
      cases.push_back({make(m, {-s, s}, {1, 1}, alpha), 1});
      cases.push_back({make(m, {-s, s}, {-1, -1}, alpha), 1});
      cases.push_back({make(m, {-2.5 * s, -s, s}, {1, -1, 1}, alpha), 2});
      cases.push_back({make(m, {-2.5 * s, -s, s}, {1, 1, -1}, alpha), 1});
    }
  }
  int good = 0;
  for (const auto& cs : cases) {
    const double w0 = W_eval(cs.config).W;
    WallConfig p = cs.config;
    p.a = pair_gap_path(cs.config.a, cs.pair)(0.5);
    const double w1 = W_eval(p).W;
    const bool same = cs.config.d[cs.pair - 1] == cs.config.d[cs.pair];
    const bool ok = same ? (w1 < w0) : (w1 > w0);
    good += ok;
    ck.check(to_string(cs.config.model) + " alpha " + fmt(cs.config.alpha) + (same ? " same-sign" : " opposite") +
                 " pair " + std::to_string(cs.pair) + " gap halved",
             ok, fmt(w0) + " -> " + fmt(w1), same ? "decrease" : "increase", "sign");
  }
  ck.headline(std::to_string(good) + "/" + std::to_string(cases.size()) + " configurations", "all", "sign");
}

// 8. Stray-energy oracle equivalence.
void stray_oracles(Checker& ck, const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Grid1D grid{-8.0, 8.0, 2048};
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    double c[3], w[3], A[3];
    for (int j = 0; j < 3; ++j) {
      c[j] = -3.0 + 6.0 * u(rng);
      w[j] = 0.3 + 1.2 * u(rng);
      A[j] = -1.0 + 2.0 * u(rng);
    }
    std::vector<double> f(grid.n);
    for (int i = 0; i < grid.n; ++i) {
      const double x = grid.x(i);
      for (int j = 0; j < 3; ++j) f[i] += A[j] * std::exp(-std::pow((x - c[j]) / w[j], 2));
    }
    const double s = stray_energy_spectral(f, grid.h()).energy;
    const double b = stray_energy_double_integral(f, grid.h());
    worst = std::max(worst, std::abs(s - b) / b);
  }
  ck.check("spectral vs double integral on 20 random smooth profiles", worst <= 0.01, "max rel diff " + fmt(worst), "0",
           "rel 1e-2");
  const Grid1D wide{-40.0, 40.0, 1 << 14};
  std::vector<double> e(wide.n);
  for (int i = 0; i < wide.n; ++i) e[i] = std::exp(-std::abs(wide.x(i)));
  const double spec = 2.0 * stray_energy_spectral(e, wide.h()).energy;
  ck.close("seminorm^2 of exp(-|x|), spectral", spec, 2.0 / kPi, 0.01, true);
  const Grid1D coarse{-40.0, 40.0, 2048};
  std::vector<double> e2(coarse.n);
  for (int i = 0; i < coarse.n; ++i) e2[i] = std::exp(-std::abs(coarse.x(i)));
  const double dbl = 2.0 * stray_energy_double_integral(e2, coarse.h());
  ck.close("seminorm^2 of exp(-|x|), double integral", dbl, 2.0 / kPi, 0.01, true);
  ck.headline("max rel diff " + fmt(worst) + ", seminorm^2 " + fmt(spec), "2/pi = " + fmt(2.0 / kPi), "1%");
}

// 9. Leading-order trend of the full energy.
void expansion(Checker& ck, const VerifyOptions& options) {
  const std::vector<double> eps = {1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  SimulationParams params;
  params.n = 1 << 14;
  const WallConfig c1 = make(Model::Confined, {0.0}, {1}, 0.5 * kPi);
  const WallConfig c2 = make(Model::Confined, {0.5}, {1}, 0.5 * kPi);
  const ExpansionFit f1 = expansion_fit(c1, eps, params, {}, options.threads);
  const ExpansionFit f2 = expansion_fit(c2, eps, params, {}, options.threads);
  bool converged = true;
  for (const auto* f : {&f1, &f2}) {
    for (DescentStatus s : f->runs) converged = converged && s == DescentStatus::Converged;
  }
  ck.check("all constrained minimisations converged", converged, converged ? "yes" : "no", "yes", "status");
  ck.check("fits well conditioned", f1.status == FitStatus::Ok && f2.status == FitStatus::Ok,
           "cond " + fmt(f1.condition), "ok", "1e10");
  ck.close("leading coefficient A at a = 0", f1.A, 0.5 * kPi, 0.15, true);
  ck.close("leading coefficient A at a = 0.5", f2.A, 0.5 * kPi, 0.15, true);
  const double dB = f1.B - f2.B;
  const double dW = W_confined(c1).W - W_confined(c2).W;
  ck.close("B(0) - B(0.5) against W(0) - W(0.5)", dB, dW, 0.30, true);
  ck.headline("A " + fmt(f1.A) + ", dB " + fmt(dB), "A " + fmt(0.5 * kPi) + ", dW " + fmt(dW), "15%, 30%");
}

// 10. Profiles.
void profiles_suite(Checker& ck, const VerifyOptions& options) {
  const double q = 0.25 * kPi;
  {
    const StepFunction s{q, -q, {{0.0, 2.0 * kPi}}};
    const auto dec = decompose(s);
    const bool atoms = dec.atoms.size() == 2 && dec.atoms[0].sigma == 2.0 * q &&
                       dec.atoms[1].sigma == 2.0 * (kPi - q) && dec.atoms[0].b == 0.0 && dec.atoms[1].b == 0.0;
    ck.check("alpha = pi/4, jump 2 pi: atoms (pi/2, 3pi/2)", atoms,
             dec.atoms.size() == 2 ? fmt(dec.atoms[0].sigma) + ", " + fmt(dec.atoms[1].sigma) : "wrong count",
             fmt(0.5 * kPi) + ", " + fmt(1.5 * kPi), "exact");
    ck.check("alpha = pi/4, jump 2 pi: iota = 2", iota(s) == 2, std::to_string(iota(s)), "2", "exact");
    ck.close("alpha = pi/4, jump 2 pi: eta = 3 pi / 2", eta(s), 1.5 * kPi, 1e-15, true);
    ck.check("raw 2 pi jump is not simple", !is_simple(s), is_simple(s) ? "simple" : "not simple", "not simple",
             "exact");
  }
  {
    const StepFunction c{1.0, 1.0, {}};
    ck.check("constant: iota = 0, eta = 0, simple", iota(c) == 0 && eta(c) == 0.0 && is_simple(c),
             std::to_string(iota(c)) + ", " + fmt(eta(c)), "0, 0", "exact");
    const StepFunction one{1.0, -1.0, {{0.3, 2.0}}};
    const auto d1 = decompose(one);
    ck.check("single jump 2 alpha: one atom", d1.atoms.size() == 1 && d1.atoms[0].sigma == 2.0,
             std::to_string(d1.atoms.size()) + " atom(s)", "1 atom of 2 alpha", "exact");
    const StepFunction down{1.0, -1.0, {{0.3, -(2.0 * kPi - 2.0)}}};
    const auto d2 = decompose(down);
    ck.check("single jump -(2 pi - 2 alpha): one atom", d2.atoms.size() == 1 && d2.atoms[0].sigma == -2.0 * (kPi - 1.0),
             d2.atoms.empty() ? "none" : fmt(d2.atoms[0].sigma), fmt(-2.0 * (kPi - 1.0)), "exact");
    const StepFunction three{1.0, -1.0, {{-0.5, 2.0}, {0.0, 2.0 * (kPi - 1.0)}, {0.5, 2.0}}};
    ck.check("three separated elementary jumps: iota = 3", iota(three) == 3, std::to_string(iota(three)), "3",
             "exact");
  }
  {
    const double a = kPi / 3.0;
    const StepFunction s{a, -a, {{-0.5, 2.0 * a}, {0.2, 2.0 * kPi - 2.0 * a}}};
    const auto tp = transition_profile(s);
    ck.check("alpha = pi/3, jumps (2 alpha, 2 pi - 2 alpha): d = (1, -1)",
             is_simple(s) && tp.d == std::vector<int>{1, -1} && tp.a == std::vector<double>{-0.5, 0.2},
             tp.d.size() == 2 ? std::to_string(tp.d[0]) + ", " + std::to_string(tp.d[1]) : "wrong size", "1, -1",
             "exact");
    const StepFunction h{0.5 * kPi, -0.5 * kPi, {{0.0, kPi}}};
    const auto th = transition_profile(h);
    ck.check("alpha = pi/2, left limit in 2 pi Z - pi/2, jump pi: d = +1", th.d == std::vector<int>{1},
             th.d.empty() ? "none" : std::to_string(th.d[0]), "1", "exact");
    const StepFunction h2{0.5 * kPi, 0.5 * kPi, {{0.0, kPi}}};
    const auto th2 = transition_profile(h2);
    ck.check("alpha = pi/2, left limit in 2 pi Z + pi/2, jump pi: d = -1", th2.d == std::vector<int>{-1},
             th2.d.empty() ? "none" : std::to_string(th2.d[0]), "-1", "exact");
  }
  {
    const bool alt = alternating(3, 1) == std::vector<int>{1, -1, 1} && alternating(2, -1) == std::vector<int>{-1, 1} &&
                     alternating(1, 1) == std::vector<int>{1};
    ck.check("alternating sign vectors", alt, alt ? "(1,-1,1), (-1,1), (1)" : "mismatch", "(1,-1,1), (-1,1), (1)",
             "exact");
  }
  // eta = (pi/2) Gamma for random simple step functions.
  std::mt19937_64 rng(options.seed + 10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  bool all_simple = true;
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = 0.05 + (kPi - 0.1) * u(rng);
    const int n = static_cast<int>(u(rng) * 9);
    const long m = static_cast<long>(std::floor(u(rng) * 7)) - 3;
    StepFunction s;
    s.alpha = alpha;
    long idx = 2 * m + (u(rng) < 0.5 ? 0 : 1);
    auto value = [&](long q) {
      const long mm = (q >= 0) ? q / 2 : -((-q + 1) / 2);
      return 2.0 * kPi * mm + ((q - 2 * mm) == 1 ? alpha : -alpha);
    };
    s.base = value(idx);
    double b = -1.0;
    for (int k = 0; k < n; ++k) {
      const long next = idx + (u(rng) < 0.5 ? 1 : -1);
      b += 0.05 + 0.2 * u(rng);
      s.jumps.push_back({b, value(next) - value(idx)});
      idx = next;
    }
    if (!is_simple(s)) {
      all_simple = false;
      continue;
    }
    const double e = eta(s);
    const double g = 0.5 * kPi * gammas(to_wall_config(s, Model::Confined)).Gamma;
    worst = std::max(worst, std::abs(e - g));
  }
  ck.check("eta = (pi/2) Gamma on 100 random simple step functions", all_simple && worst <= 1e-12,
           "max diff " + fmt(worst), "0", "abs 1e-12");
  ck.headline("max |eta - (pi/2) Gamma| " + fmt(worst), "0", "1e-12");
}

// 11. Potentials.
void potentials_suite(Checker& ck) {
  QuadratureSpec tight;
  tight.abs_tol = 1e-13;
  tight.rel_tol = 1e-13;
  const auto right = rect_region(0.5, 2.0, 0.5, 2.0, 1e-3, 5);
  const auto left = rect_region(-2.0, -0.5, 0.5, 2.0, 1e-3, 5);
  double harm_u = 0.0, conj_u = 0.0;
  for (const auto* reg : {&right, &left}) {
    harm_u = std::max(harm_u, harmonicity_residual([&](double a, double b) { return unconfined_pair(a, b, tight).v; },
                                                   *reg));
    harm_u = std::max(harm_u, harmonicity_residual([&](double a, double b) { return unconfined_pair(a, b, tight).u; },
                                                   *reg));
    conj_u = std::max(conj_u, conjugacy_residual([&](double a, double b) { return unconfined_pair(a, b, tight); }, *reg));
  }
  ck.check("unconfined harmonicity residual", harm_u <= 1e-3, fmt(harm_u), "0", "1e-3");
  ck.check("unconfined conjugacy residual", conj_u <= 1e-3, fmt(conj_u), "0", "1e-3");
  const auto ring = half_annulus_region(0.0, 0.2, 0.8, 1e-3, 4, 6);
  const double harm_c = std::max(harmonicity_residual([](double a, double b) { return confined_pair(a, b).u; }, ring),
                                 harmonicity_residual([](double a, double b) { return confined_pair(a, b).v; }, ring));
  const double conj_c = conjugacy_residual([](double a, double b) { return confined_pair(a, b); }, ring);
  ck.check("confined harmonicity residual", harm_c <= 1e-3, fmt(harm_c), "0", "1e-3");
  ck.check("confined conjugacy residual", conj_c <= 1e-3, fmt(conj_c), "0", "1e-3");

  double max_u = 0.0;
  for (int i = 0; i <= 40; ++i) {
    for (int j = 1; j <= 40; ++j) {
      const double x1 = -4.0 + 0.2 * i + 1e-3;
      const double x2 = 0.01 * std::pow(1.2, j);
      max_u = std::max(max_u, std::abs(unconfined_pair(x1, x2).u));
      max_u = std::max(max_u, std::abs(confined_pair(x1, x2).u));
    }
  }
  ck.check("|u| <= pi/2 at 3280 sample points", max_u <= 0.5 * kPi + 1e-12, "max " + fmt(max_u), "<= " + fmt(0.5 * kPi),
           "1e-12");

  const std::vector<double> rs = {0.1, 0.03, 0.01};
  const double upper = 0.5 * kPi * std::log(76.0);
  std::vector<double> dc, du;
  for (double r : rs) dc.push_back(dirichlet_annulus(Model::Confined, 0.0, r, 1.0).value - kPi * std::log(1.0 / r));
  for (double r : rs) du.push_back(dirichlet_annulus(Model::Unconfined, 0.0, r, 1.0).value - kPi * std::log(1.0 / r));
  const double c_max = *std::max_element(dc.begin(), dc.end());
  const double c_spread = *std::max_element(dc.begin(), dc.end()) - *std::min_element(dc.begin(), dc.end());
  ck.check("confined annulus energy <= pi log(R/r) + (pi/2) log 76", c_max <= upper,
           "max excess " + fmt(c_max), "<= " + fmt(upper), "bound");
  ck.check("confined annulus excess independent of r", c_spread <= 1e-3,
           fmt(dc[0]) + ", " + fmt(dc[1]) + ", " + fmt(dc[2]), "constant", "spread 1e-3");
  const double inc1 = std::abs(du[1] - du[0]);
  const double inc2 = std::abs(du[2] - du[1]);
  ck.check("unconfined annulus excess converges (increments contract)", inc2 < inc1,
           fmt(du[0]) + ", " + fmt(du[1]) + ", " + fmt(du[2]), "contracting", "|d2 - d1| < |d1 - d0|");
  ck.headline("residuals " + fmt(std::max({harm_u, conj_u, harm_c, conj_c})) + ", max |u| " + fmt(max_u),
              "<= 1e-3, <= pi/2", "1e-3");
}

double budget(int id) {
  switch (id) {
    case 1:
    case 2:
      return 5.0;
    case 3:
      return 10.0;
    case 4:
    case 5:
    case 11:
      return 120.0;
    case 6:
    case 8:
      return 30.0;
    case 7:
    case 10:
      return 1.0;
    case 9:
      return 900.0;
  }
  return 0.0;
}

}  // namespace

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  if (suite == "specfun") return {1, 2};
  if (suite == "potentials") return {3, 4, 5, 11};
  if (suite == "renorm") return {6, 7};
  if (suite == "micromag") return {8, 9};
  if (suite == "profiles") return {10};
  throw DomainError("unknown suite '" + suite + "'");
}

std::string criterion_name(int id) {
  static const char* names[] = {"special functions",
                                "ratio monotonicity",
                                "cross-term identity",
                                "near-wall energy",
                                "sign relation W1 = -W",
                                "renormalised-energy landscape",
                                "repulsion and attraction signs",
                                "stray-energy oracle equivalence",
                                "full-energy leading order",
                                "profiles",
                                "potentials validity"};
  if (id < 1 || id > kCriterionCount) throw DomainError("criterion id out of range");
  return names[id - 1];
}

CriterionResult run_criterion(int id, const VerifyOptions& options) {
  CriterionResult result;
  result.id = id;
  result.name = criterion_name(id);
  result.budget_seconds = budget(id);
  Checker ck(result);
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1:
        special_functions(ck);
        break;
      case 2:
        ratio_property(ck);
        break;
      case 3:
        cross_terms(ck);
        break;
      case 4:
        near_wall(ck);
        break;
      case 5:
        sign_relation(ck);
        break;
      case 6:
        landscape(ck, options);
        break;
      case 7:
        interaction_signs(ck);
        break;
      case 8:
        stray_oracles(ck, options);
        break;
      case 9:
        expansion(ck, options);
        break;
      case 10:
        profiles_suite(ck, options);
        break;
      case 11:
        potentials_suite(ck);
        break;
    }
    result.passed = ck.all();
  } catch (const std::exception& e) {
    result.passed = false;
    result.error = e.what();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (result.seconds > result.budget_seconds) {
    ck.check("runtime budget", false, fmt(result.seconds) + " s", "<= " + fmt(result.budget_seconds) + " s", "budget");
    result.passed = false;
  }
  return result;
}

std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const VerifyOptions& options) {
  std::vector<CriterionResult> out;
  for (int id : ids) out.push_back(run_criterion(id, options));
  return out;
}

nlohmann::json to_json(const CriterionResult& r) {
  nlohmann::json j{{"id", r.id},
                   {"name", r.name},
                   {"passed", r.passed},
                   {"measured", r.measured},
                   {"expected", r.expected},
                   {"tolerance", r.tolerance},
                   {"seconds", r.seconds},
                   {"budget_seconds", r.budget_seconds},
                   {"checks", r.checks}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

std::string summary_line(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "criterion %2d [%s] %s: ", r.id, r.passed ? "PASS" : "FAIL", r.name.c_str());
  std::string line = head;
  if (!r.error.empty()) {
    line += "error: " + r.error;
  } else {
    line += "measured " + r.measured + "; expected " + r.expected + " (tol " + r.tolerance + ")";
  }
  char tail[64];
  std::snprintf(tail, sizeof tail, " [%.2f s]", r.seconds);
  return line + tail;
}

}  // namespace neel
