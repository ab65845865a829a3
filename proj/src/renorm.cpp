// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#include "neel/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "neel/error.hpp"
#include "neel/specfun.hpp"

namespace neel {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> gamma_of(const std::vector<int>& d, double alpha) {
  const double c = std::cos(alpha);
  std::vector<double> g(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) g[i] = d[i] - c;
  return g;
}

RenormResult empty_result(std::size_t n) {
  RenormResult r;
  r.self_terms.assign(n, 0.0);
  r.pair_terms.assign(n, std::vector<double>(n, 0.0));
  return r;
}

// Coincident walls: the sign of the divergent part is that of -sum gamma_k gamma_l
// over coincident pairs.
bool mark_coincident(const std::vector<double>& a, const std::vector<double>& g, RenormResult& r) {
  double coeff = 0.0;
  bool any = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t l = k + 1; l < a.size(); ++l) {
      if (a[k] == a[l]) {
        any = true;
        coeff += g[k] * g[l];
      }
    }
  }
  if (!any) return false;
  if (coeff == 0.0) throw DomainError("coincident walls with vanishing interaction coefficient");
  r.status = coeff > 0.0 ? EnergyStatus::MinusInfinity : EnergyStatus::PlusInfinity;
  r.W = coeff > 0.0 ? -HUGE_VAL : HUGE_VAL;
  return true;
}

double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

// Energy and gradient in the coordinates y used by the minimiser (y = artanh a
// for the confined model, y = a otherwise). `force` accumulates the absolute
// values of the individual pair contributions to each gradient entry.
struct CoordEnergy {
  double W = 0.0;
  std::vector<double> grad;
  std::vector<double> force;
};

CoordEnergy confined_x(const std::vector<double>& x, const std::vector<double>& g) {
  const std::size_t n = x.size();
  CoordEnergy e{0.0, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    e.W += -0.5 * kPi * g[i] * g[i] * (std::numbers::ln2 - 2.0 * log_cosh(x[i]));
    e.grad[i] += kPi * g[i] * g[i] * std::tanh(x[i]);
    e.force[i] += std::abs(kPi * g[i] * g[i] * std::tanh(x[i]));
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      const double u = x[l] - x[k];
      const double c = kPi * g[k] * g[l];
      e.W += c * std::log(std::tanh(0.5 * u));
      const double f = c / std::sinh(u);
      e.grad[l] += f;
      e.grad[k] -= f;
      e.force[l] += std::abs(f);
      e.force[k] += std::abs(f);
    }
  }
  return e;
}

CoordEnergy unconfined_a(const std::vector<double>& a, const std::vector<double>& g, const QuadratureSpec& spec) {
  const std::size_t n = a.size();
  CoordEnergy e{0.0, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) e.W += -0.5 * kPi * kI0 * g[i] * g[i];
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      const double t = a[l] - a[k];
      const double c = kPi * g[k] * g[l];
      e.W += -c * eval_I(t, spec).value;
      const double f = -c * eval_I_prime(t, spec).value;
      e.grad[l] += f;
      e.grad[k] -= f;
      e.force[l] += std::abs(f);
      e.force[k] += std::abs(f);
    }
  }
  return e;
}

}  // namespace

double theta_N(int n) {
  if (n < 0) throw DomainError("theta_N: N must be nonnegative");
  if (n <= 2) return 0.0;
  if (n % 2 == 1) return std::acos((std::sqrt(n + 1.0) - 1.0) / n);
  return std::acos((std::sqrt(static_cast<double>(n)) - 1.0) / (n - 1.0));
}

std::string to_string(RangeCase kind) {
  switch (kind) {
    case RangeCase::Even: return "N even";
    case RangeCase::OddPlus: return "N odd, d1=+1";
    case RangeCase::OddMinus: return "N odd, d1=-1";
  }
  return "?";
}

AdmissibleRange admissible_range(const std::vector<int>& d) {
  const int n = static_cast<int>(d.size());
  if (n < 2) throw DomainError("admissible_range: N must be at least 2");
  for (int s : d) {
    if (s != 1 && s != -1) throw DomainError("admissible_range: signs must be +1 or -1");
  }
  if (!is_alternating(d)) throw DomainError("admissible_range: signs must alternate");
  if (n % 2 == 0) return {theta_N(n), kPi - theta_N(n), RangeCase::Even};
  if (d.front() == 1) return {theta_N(n - 2), kPi - theta_N(n), RangeCase::OddPlus};
  return {theta_N(n), kPi - theta_N(n - 2), RangeCase::OddMinus};
}

double sign_sum(const std::vector<int>& d, double alpha, int K, int L) {
  const int n = static_cast<int>(d.size());
  if (!(1 <= K && K < L && L <= n)) throw DomainError("sign_sum: need 1 <= K < L <= N");
  const auto g = gamma_of(d, alpha);
  double s = 0.0;
  for (int k = K - 1; k < L; ++k) {
    for (int l = k + 1; l < L; ++l) s += g[k] * g[l];
  }
  return s;
}

double alternating_block_sum(int K, int first, double alpha) {
  if (K < 1) throw DomainError("alternating_block_sum: K must be positive");
  if (first != 1 && first != -1) throw DomainError("alternating_block_sum: first sign must be +1 or -1");
  const double c = std::cos(alpha);
  if (K % 2 == 0) return 0.5 * K * ((K - 1) * c * c - 1.0);
  return 0.5 * (K - 1) * (K * c * c - 2.0 * first * c - 1.0);
}

bool all_subblock_sums_negative(const std::vector<int>& d, double alpha) {
  const int n = static_cast<int>(d.size());
  for (int K = 1; K <= n; ++K) {
    for (int L = K + 1; L <= n; ++L) {
      if (!(sign_sum(d, alpha, K, L) < 0.0)) return false;
    }
  }
  return true;
}

RenormResult W_confined(const WallConfig& config, bool with_gradient) {
  if (config.model != Model::Confined) throw DomainError("W_confined: configuration is unconfined");
  config.validate(true);
  const auto& a = config.a;
  const std::size_t n = a.size();
  const auto g = gamma_of(config.d, config.alpha);
  RenormResult r = empty_result(n);
  if (mark_coincident(a, g, r)) return r;
  if (with_gradient) r.gradient.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    r.self_terms[i] = -0.5 * kPi * g[i] * g[i] * std::log(2.0 - 2.0 * a[i] * a[i]);
    r.W += r.self_terms[i];
    if (with_gradient) r.gradient[i] += kPi * g[i] * g[i] * a[i] / (1.0 - a[i] * a[i]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      const double den = 1.0 - a[k] * a[l];
      const double vr = (a[l] - a[k]) / den;
      const double om = (1.0 + a[k]) * (1.0 - a[l]) / den;
      const double op = (1.0 - a[k]) * (1.0 + a[l]) / den;
      const double sq = std::sqrt(om * op);
      const double c = kPi * g[k] * g[l];
      const double p = -c * (std::log1p(sq) - std::log(vr));
      r.pair_terms[k][l] = r.pair_terms[l][k] = p;
      r.W += p;
      if (with_gradient) {
        const double dp = c / (vr * sq);
        r.gradient[l] += dp * (1.0 - a[k] * a[k]) / (den * den);
        r.gradient[k] -= dp * (1.0 - a[l] * a[l]) / (den * den);
      }
    }
  }
  return r;
}

RenormResult W_unconfined(const WallConfig& config, bool with_gradient, const QuadratureSpec& spec) {
  if (config.model != Model::Unconfined) throw DomainError("W_unconfined: configuration is confined");
  config.validate(true);
  const auto& a = config.a;
  const std::size_t n = a.size();
  const auto g = gamma_of(config.d, config.alpha);
  RenormResult r = empty_result(n);
  if (mark_coincident(a, g, r)) return r;
  if (with_gradient) r.gradient.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    r.self_terms[i] = -0.5 * kPi * kI0 * g[i] * g[i];
    r.W += r.self_terms[i];
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      const double t = a[l] - a[k];
      const double c = kPi * g[k] * g[l];
      const double p = -c * eval_I(t, spec).value;
      r.pair_terms[k][l] = r.pair_terms[l][k] = p;
      r.W += p;
      if (with_gradient) {
        const double dp = -c * eval_I_prime(t, spec).value;
        r.gradient[l] += dp;
        r.gradient[k] -= dp;
      }
    }
  }
  return r;
}

RenormResult W_eval(const WallConfig& config, bool with_gradient, const QuadratureSpec& spec) {
  return config.model == Model::Confined ? W_confined(config, with_gradient)
                                         : W_unconfined(config, with_gradient, spec);
}

std::vector<double> grad_W(const WallConfig& config, const QuadratureSpec& spec) {
  config.validate();
  return W_eval(config, true, spec).gradient;
}

std::string to_string(MinimizeStatus status) {
  switch (status) {
    case MinimizeStatus::Converged: return "converged";
    case MinimizeStatus::DivergingToMinusInfinity: return "diverging-to-minus-infinity";
    case MinimizeStatus::BoundaryCollapse: return "boundary-collapse";
    case MinimizeStatus::Escaping: return "no-critical-point";
    case MinimizeStatus::MaxIter: return "max-iter";
  }
  return "?";
}

MinimizeReport minimize_W(const WallConfig& config, const MinimizeOptions& options) {
  config.validate();
  const bool confined = config.model == Model::Confined;
  const std::size_t n = config.size();
  const auto g = gamma_of(config.d, config.alpha);
  MinimizeReport rep;
  rep.argmin = config.a;
  if (n == 0) {
    rep.status = MinimizeStatus::Converged;
    return rep;
  }

  // p = (y_1, log(y_2 - y_1), ...), y = artanh(a) (confined) or a.
  std::vector<double> p(n);
  {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = confined ? std::atanh(config.a[i]) : config.a[i];
    p[0] = y[0];
    for (std::size_t i = 1; i < n; ++i) p[i] = std::log(y[i] - y[i - 1]);
  }
  auto to_y = [n](const std::vector<double>& q) {
    std::vector<double> y(n);
    y[0] = q[0];
    for (std::size_t i = 1; i < n; ++i) y[i] = y[i - 1] + std::exp(q[i]);
    return y;
  };
  struct Eval {
    double W;
    std::vector<double> gp;    // gradient in p
    std::vector<double> ga;    // gradient in a
    std::vector<double> force; // per-wall force magnitudes in y
    std::vector<double> gy;
  };
  auto evaluate = [&](const std::vector<double>& q) {
    const auto y = to_y(q);
    CoordEnergy e = confined ? confined_x(y, g) : unconfined_a(y, g, options.spec);
    Eval ev{e.W, std::vector<double>(n), std::vector<double>(n), e.force, e.grad};
    double tail = 0.0;
    for (std::size_t i = n; i-- > 0;) {
      tail += e.grad[i];
      ev.gp[i] = i == 0 ? tail : tail * std::exp(q[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double ch = confined ? std::cosh(y[i]) : 1.0;
      ev.ga[i] = e.grad[i] * ch * ch;
    }
    return ev;
  };
  auto maxabs = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };
  auto dot = [](const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
  };
  auto finish = [&](const std::vector<double>& q, const Eval& ev, MinimizeStatus st, int it) {
    const auto y = to_y(q);
    rep.argmin.resize(n);
    for (std::size_t i = 0; i < n; ++i) rep.argmin[i] = confined ? std::tanh(y[i]) : y[i];
    rep.W = ev.W;
    rep.grad_norm = maxabs(ev.ga);
    rep.iterations = it;
    rep.status = st;
    return rep;
  };

  std::vector<std::vector<double>> H(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) H[i][i] = 1.0;
  bool fresh = true;
  Eval cur = evaluate(p);
  int stalls = 0;
  for (int it = 0; it < options.max_iter; ++it) {
    if (!std::isfinite(cur.W) || cur.W < options.W_floor) {
      return finish(p, cur, MinimizeStatus::DivergingToMinusInfinity, it);
    }
    bool balanced = true;
    if (!confined) {
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(cur.gy[i]) > options.balance * cur.force[i]) balanced = false;
      }
    }
    if (maxabs(cur.ga) <= options.grad_tol && balanced) return finish(p, cur, MinimizeStatus::Converged, it);
    for (std::size_t i = 1; i < n; ++i) {
      if (std::exp(p[i]) < options.collapse_gap) return finish(p, cur, MinimizeStatus::DivergingToMinusInfinity, it);
      if (!confined && std::exp(p[i]) > options.escape_gap) return finish(p, cur, MinimizeStatus::Escaping, it);
    }
    if (confined && (std::abs(p[0]) > 18.0 || std::abs(to_y(p).back()) > 18.0)) {
      return finish(p, cur, MinimizeStatus::BoundaryCollapse, it);
    }

    std::vector<double> dir(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) dir[i] -= H[i][j] * cur.gp[j];
    }
    double slope = dot(dir, cur.gp);
    if (!(slope < 0.0)) {
      for (std::size_t i = 0; i < n; ++i) {
        std::fill(H[i].begin(), H[i].end(), 0.0);
        H[i][i] = 1.0;
        dir[i] = -cur.gp[i];
      }
      fresh = true;
      slope = dot(dir, cur.gp);
    }
    const double big = maxabs(dir);
    double step = big > 3.0 ? 3.0 / big : 1.0;
    const double noise = 1e-14 * (1.0 + std::abs(cur.W));
    bool accepted = false;
    std::vector<double> q(n);
    Eval next;
    for (int ls = 0; ls < 80; ++ls) {
      for (std::size_t i = 0; i < n; ++i) q[i] = p[i] + step * dir[i];
      next = evaluate(q);
      if (std::isfinite(next.W) &&
          (next.W <= cur.W + 1e-4 * step * slope ||
           (next.W <= cur.W + noise && maxabs(next.gp) < maxabs(cur.gp)))) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (fresh || ++stalls > 2) return finish(p, cur, MinimizeStatus::MaxIter, it);
      for (std::size_t i = 0; i < n; ++i) {
        std::fill(H[i].begin(), H[i].end(), 0.0);
        H[i][i] = 1.0;
      }
      fresh = true;
      continue;
    }
    stalls = 0;
    std::vector<double> s(n), yv(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = q[i] - p[i];
      yv[i] = next.gp[i] - cur.gp[i];
    }
    const double sy = dot(s, yv);
    if (sy > 1e-300 && std::isfinite(sy)) {
      if (fresh) {
        const double scale = sy / dot(yv, yv);
        for (std::size_t i = 0; i < n; ++i) H[i][i] = scale;
        fresh = false;
      }
      std::vector<double> Hy(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) Hy[i] += H[i][j] * yv[j];
      }
      const double yHy = dot(yv, Hy);
      const double rho_inv = 1.0 / sy;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          H[i][j] += (1.0 + yHy * rho_inv) * s[i] * s[j] * rho_inv - (Hy[i] * s[j] + s[i] * Hy[j]) * rho_inv;
        }
      }
    }
    p = q;
    cur = std::move(next);
  }
  return finish(p, cur, MinimizeStatus::MaxIter, options.max_iter);
}

std::vector<MinimizeReport> minimize_W_multistart(const WallConfig& config, int starts, std::uint64_t seed,
                                                  const MinimizeOptions& options) {
  config.validate();
  std::mt19937_64 rng(seed);
  std::vector<MinimizeReport> out;
  const std::size_t n = config.size();
  for (int s = 0; s < starts; ++s) {
    WallConfig c = config;
    if (config.model == Model::Confined) {
      std::uniform_real_distribution<double> u(-0.9, 0.9);
      do {
        for (auto& x : c.a) x = u(rng);
        std::sort(c.a.begin(), c.a.end());
      } while (std::adjacent_find(c.a.begin(), c.a.end(), [](double x, double y) { return y - x < 1e-3; }) !=
               c.a.end());
    } else {
      std::uniform_real_distribution<double> gap(0.2, 3.0);
      double x = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        c.a[i] = x;
        x += gap(rng);
      }
    }
    out.push_back(minimize_W(c, options));
  }
  return out;
}

PathFamily block_collapse_path(const std::vector<double>& a, int K, int L) {
  if (!(1 <= K && K < L && L <= static_cast<int>(a.size()))) throw DomainError("block path: need 1 <= K < L <= N");
  if (!(a[K - 1] < 0.0 && a[L - 1] > 0.0)) throw DomainError("block path: need a_K < 0 < a_L");
  return [a, K, L](double eta) {
    std::vector<double> b = a;
    for (int k = K - 1; k < L; ++k) b[k] = eta * a[k];
    return b;
  };
}

PathFamily pair_gap_path(const std::vector<double>& a, int n) {
  if (!(1 <= n && n < static_cast<int>(a.size()))) throw DomainError("pair path: need 1 <= n < N");
  return [a, n](double eta) {
    std::vector<double> b = a;
    const double mid = 0.5 * (a[n - 1] + a[n]);
    const double half = 0.5 * (a[n] - a[n - 1]);
    b[n - 1] = mid - eta * half;
    b[n] = mid + eta * half;
    return b;
  };
}

std::vector<PathSample> scan_path(const WallConfig& config, const PathFamily& path,
                                  const std::vector<double>& etas, const QuadratureSpec& spec) {
  std::vector<PathSample> out;
  for (double eta : etas) {
    WallConfig c = config;
    c.a = path(eta);
    const auto r = W_eval(c, false, spec);
    out.push_back({eta, r.W, r.status});
  }
  return out;
}

std::optional<CriticalPoint> critical_point_N3(double alpha, const std::vector<int>& d, const QuadratureSpec& spec) {
  if (d.size() != 3 || !is_alternating(d) || (d[0] != 1 && d[0] != -1)) {
    throw DomainError("critical_point_N3: need three alternating signs");
  }
  const double key = d[0] * std::cos(alpha);
  if (!(key > -7.0 / 9.0 && key < -1.0 / 3.0)) return std::nullopt;
  const auto g = gamma_of(d, alpha);
  const double c = -g[1] / g[0];
  CriticalPoint cp;
  cp.t0 = ratio_root(c, spec);
  cp.a = {0.0, cp.t0, 2.0 * cp.t0};
  WallConfig cfg{Model::Unconfined, cp.a, d, alpha};
  const auto r = W_unconfined(cfg, true, spec);
  cp.W = r.W;
  for (double x : r.gradient) cp.grad_norm = std::max(cp.grad_norm, std::abs(x));
  return cp;
}

}  // namespace neel
