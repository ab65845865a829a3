// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#include "neel/micromag.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <deque>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>
#include <thread>

#include "neel/error.hpp"

namespace neel {
namespace {

constexpr double kPi = std::numbers::pi;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Zero-padded real FFT of length pad * n with the |xi| multiplier.
class Spectral {
 public:
  Spectral(int n, double h, int pad) : n_(n), size_(pad * n), h_(h) {
    if (pad < 1) throw DomainError("pad factor must be at least 1");
    const int half = size_ / 2 + 1;
    real_ = fftw_alloc_real(size_);
    spec_ = fftw_alloc_complex(half);
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      forward_ = fftw_plan_dft_r2c_1d(size_, real_, spec_, FFTW_ESTIMATE);
      backward_ = fftw_plan_dft_c2r_1d(size_, spec_, real_, FFTW_ESTIMATE);
    }
    xi_.resize(half);
    for (int k = 0; k < half; ++k) xi_[k] = 2.0 * kPi * k / (size_ * h_);
  }
  ~Spectral() {
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      fftw_destroy_plan(forward_);
      fftw_destroy_plan(backward_);
    }
    fftw_free(real_);
    fftw_free(spec_);
  }
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  int size() const { return size_; }
  const std::vector<double>& xi() const { return xi_; }

  void load(std::span<const double> f) {
    std::copy(f.begin(), f.end(), real_);
    std::fill(real_ + f.size(), real_ + size_, 0.0);
    fftw_execute(forward_);
  }

  // Half the seminorm squared of the loaded data; optionally the nodal
  // |D| f into af (n entries).
  double energy(double* af) {
    const int half = size_ / 2 + 1;
    double sum = 0.0;
    for (int k = 1; k < half; ++k) {
      const double w = (2 * k == size_) ? 1.0 : 2.0;
      sum += w * xi_[k] * (spec_[k][0] * spec_[k][0] + spec_[k][1] * spec_[k][1]);
    }
    if (af != nullptr) {
      for (int k = 0; k < half; ++k) {
        spec_[k][0] *= xi_[k];
        spec_[k][1] *= xi_[k];
      }
      fftw_execute(backward_);
      for (int i = 0; i < n_; ++i) af[i] = real_[i] / size_;
    }
    return 0.5 * h_ * sum / size_;
  }

  // Half the seminorm bilinear form (a, b) for real data a, b of length n.
  double bilinear(std::span<const double> a, std::span<const double> b) {
    load(a);
    const int half = size_ / 2 + 1;
    std::vector<std::complex<double>> fa(half);
    for (int k = 0; k < half; ++k) fa[k] = {spec_[k][0], spec_[k][1]};
    load(b);
    double sum = 0.0;
    for (int k = 1; k < half; ++k) {
      const double w = (2 * k == size_) ? 1.0 : 2.0;
      sum += w * xi_[k] * (fa[k].real() * spec_[k][0] + fa[k].imag() * spec_[k][1]);
    }
    return 0.5 * h_ * sum / size_;
  }

  // out = restriction of the circulant with symbol 1 / symbol(xi) applied to g.
  template <class Symbol>
  void divide(std::span<const double> g, Symbol symbol, double* out) {
    load(g);
    const int half = size_ / 2 + 1;
    for (int k = 0; k < half; ++k) {
      const double p = symbol(xi_[k]);
      spec_[k][0] /= p;
      spec_[k][1] /= p;
    }
    fftw_execute(backward_);
    for (int i = 0; i < n_; ++i) out[i] = real_[i] / size_;
  }

  fftw_complex* spectrum() { return spec_; }
  double* real() { return real_; }
  void inverse() { fftw_execute(backward_); }

 private:
  int n_;
  int size_;
  double h_;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
  std::vector<double> xi_;
};

double exchange_sum(const std::vector<double>& phi, double h, double epsilon) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < phi.size(); ++i) {
    const double dp = phi[i + 1] - phi[i];
    s += dp * dp;
  }
  return 0.5 * epsilon * s / h;
}

// Energy and gradient of the discrete functional.
class Functional {
 public:
  Functional(const Grid1D& grid, double epsilon, double alpha, Model model, int pad)
      : grid_(grid), h_(grid.h()), epsilon_(epsilon), cos_alpha_(std::cos(alpha)),
        unconfined_(model == Model::Unconfined), spectral_(grid.n, grid.h(), pad), f_(grid.n), af_(grid.n) {}

  EnergyBreakdown eval(const std::vector<double>& phi, std::vector<double>* grad) {
    const int n = grid_.n;
    for (int i = 0; i < n; ++i) f_[i] = std::cos(phi[i]) - cos_alpha_;
    EnergyBreakdown e;
    e.exchange = exchange_sum(phi, h_, epsilon_);
    if (unconfined_) {
      double s = 0.0;
      for (double v : f_) s += v * v;
      e.anisotropy = 0.5 * h_ * s;
    }
    spectral_.load(f_);
    e.stray = spectral_.energy(grad != nullptr ? af_.data() : nullptr);
    e.total = e.exchange + e.anisotropy + e.stray;
    if (grad != nullptr) {
      grad->assign(n, 0.0);
      const double c = epsilon_ / h_;
      for (int i = 0; i < n; ++i) {
        double g = 0.0;
        if (i > 0) g += c * (phi[i] - phi[i - 1]);
        if (i + 1 < n) g -= c * (phi[i + 1] - phi[i]);
        const double df = af_[i] + (unconfined_ ? f_[i] : 0.0);
        g -= std::sin(phi[i]) * h_ * df;
        (*grad)[i] = g;
      }
    }
    return e;
  }

  // E(phi + dphi) - E(phi) evaluated term by term to avoid cancellation.
  double difference(const std::vector<double>& phi, const std::vector<double>& dphi) {
    const int n = grid_.n;
    std::vector<double> df(n), sf(n);
    double ex = 0.0;
    double an = 0.0;
    for (int i = 0; i < n; ++i) {
      const double c = std::cos(phi[i]) - cos_alpha_;
      df[i] = -2.0 * std::sin(phi[i] + 0.5 * dphi[i]) * std::sin(0.5 * dphi[i]);
      sf[i] = 2.0 * c + df[i];
      an += df[i] * sf[i];
      if (i + 1 < n) {
        const double a = phi[i + 1] - phi[i];
        const double da = dphi[i + 1] - dphi[i];
        ex += da * (2.0 * a + da);
      }
    }
    double total = 0.5 * epsilon_ * ex / h_ + spectral_.bilinear(df, sf);
    if (unconfined_) total += 0.5 * h_ * an;
    return total;
  }

  // Preconditioned direction for the nodal gradient g.
  void precondition(const std::vector<double>& g, const std::vector<char>& free, std::vector<double>& out) {
    std::vector<double> gm(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) gm[i] = free[i] ? g[i] / h_ : 0.0;
    const double c0 = 1.0;
    const double eps = epsilon_;
    const double h = h_;
    out.resize(g.size());
    spectral_.divide(
        gm,
        [&](double xi) {
          const double s = std::sin(0.5 * xi * h);
          return eps * 4.0 / (h * h) * s * s + xi + c0;
        },
        out.data());
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!free[i]) out[i] = 0.0;
    }
  }

 private:
  Grid1D grid_;
  double h_;
  double epsilon_;
  double cos_alpha_;
  bool unconfined_;
  Spectral spectral_;
  std::vector<double> f_;
  std::vector<double> af_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct Lifting {
  double base = 0.0;
  std::vector<double> centre;
  std::vector<double> jump;
  double end = 0.0;
};

// Plateaus alternate between 2 pi m - alpha and 2 pi m + alpha; a d = +1 wall
// crosses 2 pi m, a d = -1 wall crosses 2 pi m + s pi.
Lifting lifting(const WallConfig& config, int start_sign) {
  if (start_sign != 1 && start_sign != -1) throw DomainError("start sign must be +1 or -1");
  const double alpha = config.alpha;
  Lifting out;
  int s = start_sign;
  int m = 0;
  out.base = s * alpha;
  double value = out.base;
  for (int dn : config.d) {
    double centre;
    if (dn == 1) {
      centre = 2.0 * kPi * m;
    } else {
      centre = 2.0 * kPi * m + s * kPi;
      m += s;
    }
    const double next = 2.0 * kPi * m - s * alpha;
    out.centre.push_back(centre);
    out.jump.push_back(next - value);
    value = next;
    s = -s;
  }
  out.end = value;
  return out;
}

}  // namespace

int Grid1D::nearest(double x) const {
  const double t = std::round((x - left) / h());
  return static_cast<int>(std::clamp(t, 0.0, static_cast<double>(n - 1)));
}

void Grid1D::validate() const {
  if (n < 16) throw DomainError("grid needs at least 16 nodes");
  if (!(right > left) || !std::isfinite(left) || !std::isfinite(right)) throw DomainError("grid interval is empty");
}

std::vector<double> MagnetizationProfile::m1() const {
  std::vector<double> out(phi.size());
  std::transform(phi.begin(), phi.end(), out.begin(), [](double p) { return std::cos(p); });
  return out;
}

std::vector<double> MagnetizationProfile::m2() const {
  std::vector<double> out(phi.size());
  std::transform(phi.begin(), phi.end(), out.begin(), [](double p) { return std::sin(p); });
  return out;
}

void MagnetizationProfile::validate() const {
  grid.validate();
  if (phi.size() != static_cast<std::size_t>(grid.n)) throw DomainError("profile size does not match grid");
  for (double p : phi) {
    if (!std::isfinite(p)) throw DomainError("profile contains non-finite values");
  }
}

double SimulationParams::delta() const { return epsilon * std::log(1.0 / epsilon); }

void SimulationParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  if (n < 16) throw DomainError("grid needs at least 16 nodes");
  if (pad < 1) throw DomainError("pad factor must be at least 1");
  if (!(half_width >= 0.0)) throw DomainError("half width must be nonnegative");
  if (!(pin_tolerance >= 1.0)) throw DomainError("pinning tolerance must be at least one cell");
}

double exchange_energy(const MagnetizationProfile& profile, double epsilon) {
  profile.validate();
  return exchange_sum(profile.phi, profile.grid.h(), epsilon);
}

double anisotropy_energy(const MagnetizationProfile& profile, double alpha, Model model) {
  if (model == Model::Confined) throw DomainError("the confined model has no anisotropy term");
  profile.validate();
  const double ca = std::cos(alpha);
  double s = 0.0;
  for (double p : profile.phi) {
    const double f = std::cos(p) - ca;
    s += f * f;
  }
  return 0.5 * profile.grid.h() * s;
}

StrayEnergy stray_energy_spectral(std::span<const double> f, double h, int pad, double end_threshold) {
  if (f.size() < 2 || !(h > 0.0)) throw DomainError("stray energy needs at least two nodes and h > 0");
  Spectral spectral(static_cast<int>(f.size()), h, pad);
  spectral.load(f);
  StrayEnergy out;
  out.energy = spectral.energy(nullptr);
  out.truncation_warning = std::abs(f.front()) > end_threshold || std::abs(f.back()) > end_threshold;
  return out;
}

double stray_energy_double_integral(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 3 || !(h > 0.0)) throw DomainError("stray energy needs at least three nodes and h > 0");
  double off = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double df = f[i] - f[j];
      const double k = static_cast<double>(j - i);
      off += df * df / (k * k);
    }
  }
  double diag = 0.0;
  double outer = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double fl = i > 0 ? f[i - 1] : 0.0;
    const double fr = i + 1 < n ? f[i + 1] : 0.0;
    const double d = 0.5 * (fr - fl);
    diag += d * d;
    const double to_left = (static_cast<double>(i) + 0.5);
    const double to_right = (static_cast<double>(n - 1 - i) + 0.5);
    outer += f[i] * f[i] * (1.0 / to_left + 1.0 / to_right);
  }
  // Cells of area h^2 against the kernel 1 / (h k)^2 leave no h factor;
  // the exterior integral gives f^2 / distance times the cell width h.
  const double total = 2.0 * off + diag + 2.0 * outer;
  return 0.5 * total / (2.0 * kPi);
}

HalfPlaneField stray_potential_solve(std::span<const double> f, const Grid1D& grid, const std::vector<double>& y,
                                     int pad) {
  grid.validate();
  if (f.size() != static_cast<std::size_t>(grid.n)) throw DomainError("boundary data size does not match grid");
  for (double yy : y) {
    if (!(yy >= 0.0)) throw DomainError("heights must be nonnegative");
  }
  Spectral spectral(grid.n, grid.h(), pad);
  spectral.load(f);
  const int half = spectral.size() / 2 + 1;
  std::vector<std::complex<double>> base(half);
  for (int k = 0; k < half; ++k) base[k] = {spectral.spectrum()[k][0], spectral.spectrum()[k][1]};
  HalfPlaneField out;
  out.x.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) out.x[i] = grid.x(i);
  out.y = y;
  out.v.resize(y.size() * grid.n);
  out.u.resize(y.size() * grid.n);
  const auto& xi = spectral.xi();
  for (std::size_t j = 0; j < y.size(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < half; ++k) {
        std::complex<double> c = base[k] * std::exp(-xi[k] * y[j]);
        // Conjugate: multiplier i sign(xi), xi >= 0 on the stored half.
        if (pass == 1) c = (k == 0) ? 0.0 : std::complex<double>(0.0, 1.0) * c;
        if (pass == 1 && 2 * k == spectral.size()) c = 0.0;
        spectral.spectrum()[k][0] = c.real();
        spectral.spectrum()[k][1] = c.imag();
      }
      spectral.inverse();
      double* dst = (pass == 0 ? out.v.data() : out.u.data()) + j * grid.n;
      for (int i = 0; i < grid.n; ++i) dst[i] = spectral.real()[i] / spectral.size();
    }
  }
  return out;
}

double extension_dirichlet_energy(std::span<const double> f, double h, int pad, double growth) {
  if (f.size() < 2 || !(h > 0.0) || !(growth > 1.0)) throw DomainError("invalid extension energy arguments");
  const int n = static_cast<int>(f.size());
  Spectral spectral(n, h, pad);
  const int size = spectral.size();
  std::vector<double> padded(size, 0.0);
  std::copy(f.begin(), f.end(), padded.begin());
  spectral.load(f);
  const int half = size / 2 + 1;
  std::vector<std::complex<double>> base(half);
  for (int k = 0; k < half; ++k) base[k] = {spectral.spectrum()[k][0], spectral.spectrum()[k][1]};
  const auto& xi = spectral.xi();
  auto layer = [&](double y, std::vector<double>& out) {
    for (int k = 0; k < half; ++k) {
      const std::complex<double> c = base[k] * std::exp(-xi[k] * y);
      spectral.spectrum()[k][0] = c.real();
      spectral.spectrum()[k][1] = c.imag();
    }
    spectral.inverse();
    out.assign(spectral.real(), spectral.real() + size);
    for (double& v : out) v /= size;
  };
  auto dx_sq = [&](const std::vector<double>& v) {
    double s = 0.0;
    for (int i = 0; i < size; ++i) {
      const double d = (v[(i + 1) % size] - v[(i + size - 1) % size]) / (2.0 * h);
      s += d * d;
    }
    return s * h;
  };
  // Layers 0, h/4, growing geometrically until the lowest mode has decayed.
  const double top = 40.0 / xi[1];
  std::vector<double> prev = padded;
  double y_prev = 0.0;
  double gx_prev = dx_sq(prev);
  double total = 0.0;
  double step = 0.25 * h;
  std::vector<double> cur;
  while (y_prev < top) {
    const double y = y_prev + step;
    layer(y, cur);
    const double gx = dx_sq(cur);
    double gy = 0.0;
    for (int i = 0; i < size; ++i) {
      const double d = (cur[i] - prev[i]) / step;
      gy += d * d;
    }
    gy *= h;
    total += 0.5 * (gx + gx_prev) * step + gy * step;
    prev.swap(cur);
    gx_prev = gx;
    y_prev = y;
    step *= growth;
  }
  return total;
}

EnergyBreakdown total_energy(const MagnetizationProfile& profile, double alpha, const SimulationParams& params) {
  profile.validate();
  params.validate();
  Functional functional(profile.grid, params.epsilon, alpha, params.model, params.pad);
  return functional.eval(profile.phi, nullptr);
}

std::string to_string(DescentStatus status) {
  switch (status) {
    case DescentStatus::Converged:
      return "converged";
    case DescentStatus::MaxIter:
      return "max-iter";
    case DescentStatus::Stalled:
      return "stalled";
  }
  return "unknown";
}

Grid1D simulation_grid(const WallConfig& config, const SimulationParams& params) {
  params.validate();
  Grid1D grid;
  grid.n = params.n;
  if (config.model == Model::Confined) {
    grid.left = -1.0;
    grid.right = 1.0;
  } else {
    const double lo = config.a.empty() ? 0.0 : config.a.front();
    const double hi = config.a.empty() ? 0.0 : config.a.back();
    const double centre = 0.5 * (lo + hi);
    const double L = params.half_width > 0.0 ? params.half_width : std::max(10.0, 10.0 * (hi - lo));
    grid.left = centre - L;
    grid.right = centre + L;
  }
  return grid;
}

std::vector<int> pinned_nodes(const WallConfig& config, const Grid1D& grid, double pin_tolerance) {
  std::vector<int> out;
  const double h = grid.h();
  for (double a : config.a) {
    if (a - grid.left < pin_tolerance * h || grid.right - a < pin_tolerance * h) {
      throw DomainError("wall too close to the end of the grid");
    }
    const int idx = grid.nearest(a);
    if (!out.empty() && idx - out.back() < pin_tolerance) throw DomainError("walls closer than the pinning tolerance");
    out.push_back(idx);
  }
  return out;
}

MagnetizationProfile initial_profile(const WallConfig& config, const SimulationParams& params, int start_sign) {
  config.validate();
  params.validate();
  const Grid1D grid = simulation_grid(config, params);
  const auto pins = pinned_nodes(config, grid, params.pin_tolerance);
  const Lifting lift = lifting(config, start_sign);
  const double delta = params.delta();
  MagnetizationProfile prof;
  prof.grid = grid;
  prof.phi.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    double p = lift.base;
    for (std::size_t k = 0; k < config.size(); ++k) {
      p += lift.jump[k] * (0.5 + std::atan((x - config.a[k]) / delta) / kPi);
    }
    prof.phi[i] = p;
  }
  prof.phi.front() = lift.base;
  prof.phi.back() = lift.end;
  for (std::size_t k = 0; k < pins.size(); ++k) prof.phi[pins[k]] = lift.centre[k];
  return prof;
}

EnergyMinimum minimize_energy(const WallConfig& config, const SimulationParams& params,
                              const MagnetizationProfile* init, const DescentOptions& options) {
  config.validate();
  params.validate();
  if (config.model != params.model) throw DomainError("configuration and parameters disagree on the model");
  EnergyMinimum out;
  out.profile = init != nullptr ? *init : initial_profile(config, params, options.start_sign);
  out.profile.validate();
  const Grid1D& grid = out.profile.grid;
  const int n = grid.n;
  const double h = grid.h();
  out.pinned = pinned_nodes(config, grid, params.pin_tolerance);
  std::vector<char> free(n, 1);
  free.front() = 0;
  free.back() = 0;
  for (std::size_t k = 0; k < out.pinned.size(); ++k) {
    free[out.pinned[k]] = 0;
    if (std::abs(std::cos(out.profile.phi[out.pinned[k]]) - config.d[k]) > 1e-12) {
      throw DomainError("initial profile violates a wall constraint");
    }
  }

  Functional functional(grid, params.epsilon, config.alpha, config.model, params.pad);
  std::vector<double>& phi = out.profile.phi;
  std::vector<double> g, g_new, d, trial(n), q(n);
  auto mask = [&](std::vector<double>& v) {
    for (int i = 0; i < n; ++i) {
      if (!free[i]) v[i] = 0.0;
    }
  };
  EnergyBreakdown e = functional.eval(phi, &g);
  mask(g);
  auto max_norm = [&](const std::vector<double>& v) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::abs(v[i]));
    return m / h;
  };
  auto record = [&](int it, const EnergyBreakdown& eb) {
    if (options.trace_every > 0 && it % options.trace_every == 0) out.trace.push_back({it, eb});
  };
  record(0, e);

  // Limited-memory quasi-Newton pairs; the spectral preconditioner is the
  // initial inverse Hessian.
  struct Pair {
    std::vector<double> s, y;
    double rho;
  };
  std::deque<Pair> history;
  auto direction = [&]() {
    q = g;
    std::vector<double> coef(history.size());
    for (std::size_t k = history.size(); k-- > 0;) {
      coef[k] = history[k].rho * dot(history[k].s, q);
      for (int i = 0; i < n; ++i) q[i] -= coef[k] * history[k].y[i];
    }
    functional.precondition(q, free, d);
    for (std::size_t k = 0; k < history.size(); ++k) {
      const double b = history[k].rho * dot(history[k].y, d);
      for (int i = 0; i < n; ++i) d[i] += (coef[k] - b) * history[k].s[i];
    }
  };

  constexpr double kArmijo = 1e-4;
  out.status = DescentStatus::MaxIter;
  int it = 0;
  for (; it < options.max_iter; ++it) {
    out.grad_norm = max_norm(g);
    if (out.grad_norm <= options.grad_tol) {
      out.status = DescentStatus::Converged;
      break;
    }
    direction();
    double gd = dot(g, d);
    if (!(gd > 0.0)) {
      history.clear();
      direction();
      gd = dot(g, d);
    }
    bool accepted = false;
    EnergyBreakdown e_new;
    double step = 1.0;
    std::vector<double> dphi(n);
    for (int bt = 0; bt < 60; ++bt) {
      for (int i = 0; i < n; ++i) dphi[i] = -step * d[i];
      const double change = functional.difference(phi, dphi);
      if (change <= -kArmijo * step * gd) {
        for (int i = 0; i < n; ++i) trial[i] = phi[i] + dphi[i];
        e_new = functional.eval(trial, &g_new);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!history.empty()) {
        history.clear();
        continue;
      }
      out.status = DescentStatus::Stalled;
      break;
    }
    mask(g_new);
    Pair pair{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (int i = 0; i < n; ++i) {
      pair.s[i] = trial[i] - phi[i];
      pair.y[i] = g_new[i] - g[i];
    }
    const double sy = dot(pair.s, pair.y);
    if (sy > 1e-14 * std::sqrt(dot(pair.s, pair.s) * dot(pair.y, pair.y))) {
      pair.rho = 1.0 / sy;
      history.push_back(std::move(pair));
      if (static_cast<int>(history.size()) > options.memory) history.pop_front();
    }
    phi.swap(trial);
    g.swap(g_new);
    e = e_new;
    record(it + 1, e);
  }
  if (out.status == DescentStatus::MaxIter) out.grad_norm = max_norm(g);
  out.iterations = it;
  out.energy = e;
  if (config.model == Model::Unconfined) {
    // Tails decaying like 1/x^2 beyond the grid, extrapolated from the
    // nodes one twentieth in from each end.
    const double centre = 0.5 * (grid.left + grid.right);
    const double L = 0.5 * (grid.right - grid.left);
    const double ca = std::cos(config.alpha);
    double est = 0.0;
    for (int idx : {n / 20, n - 1 - n / 20}) {
      const double f = std::cos(phi[idx]) - ca;
      const double D = std::abs(grid.x(idx) - centre);
      est += f * f * std::pow(D, 4) / (3.0 * L * L * L);
    }
    out.clamp_error = 2.0 * est;
  }
  return out;
}

std::string to_string(FitStatus status) { return status == FitStatus::Ok ? "ok" : "ill-conditioned"; }

ExpansionFit fit_expansion(const std::vector<double>& epsilon, const std::vector<double>& energy) {
  if (epsilon.size() != energy.size()) throw DomainError("epsilon and energy lists differ in length");
  if (epsilon.size() < 4) throw DomainError("the fit needs at least four values of epsilon");
  const auto [lo, hi] = std::minmax_element(epsilon.begin(), epsilon.end());
  if (!(*lo > 0.0 && *hi < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  if (*hi / *lo < 100.0 * (1.0 - 1e-12)) throw DomainError("epsilon values must span two decades");
  ExpansionFit fit;
  fit.epsilon = epsilon;
  fit.energy = energy;
  double s11 = 0.0, s12 = 0.0, s22 = 0.0, r1 = 0.0, r2 = 0.0;
  for (std::size_t i = 0; i < epsilon.size(); ++i) {
    const double L = -std::log(epsilon[i] * std::log(1.0 / epsilon[i]));
    fit.log_inv_delta.push_back(L);
    const double x1 = 1.0 / L;
    const double x2 = 1.0 / (L * L);
    s11 += x1 * x1;
    s12 += x1 * x2;
    s22 += x2 * x2;
    r1 += x1 * energy[i];
    r2 += x2 * energy[i];
  }
  // Condition number of the column-scaled normal matrix.
  const double c12 = s12 / std::sqrt(s11 * s22);
  fit.condition = (1.0 + std::abs(c12)) / std::max(1.0 - std::abs(c12), 1e-300);
  const double det = s11 * s22 - s12 * s12;
  fit.A = (r1 * s22 - r2 * s12) / det;
  fit.B = (s11 * r2 - s12 * r1) / det;
  double rss = 0.0;
  for (std::size_t i = 0; i < epsilon.size(); ++i) {
    const double L = fit.log_inv_delta[i];
    const double r = energy[i] - fit.A / L - fit.B / (L * L);
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / epsilon.size());
  fit.status = (fit.condition > 1e10 || !std::isfinite(fit.A) || !std::isfinite(fit.B)) ? FitStatus::IllConditioned
                                                                                        : FitStatus::Ok;
  return fit;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::clamp<std::size_t>(threads < 1 ? 1 : threads, 1, std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

ExpansionFit expansion_fit(const WallConfig& config, const std::vector<double>& epsilon, const SimulationParams& params,
                           const DescentOptions& options, int threads) {
  std::vector<double> energy(epsilon.size());
  std::vector<DescentStatus> runs(epsilon.size());
  DescentOptions quiet = options;
  quiet.trace_every = 0;
  parallel_for(epsilon.size(), threads, [&](std::size_t i) {
    SimulationParams p = params;
    p.epsilon = epsilon[i];
    const EnergyMinimum m = minimize_energy(config, p, nullptr, quiet);
    energy[i] = m.energy.total;
    runs[i] = m.status;
  });
  ExpansionFit fit = fit_expansion(epsilon, energy);
  fit.runs = runs;
  return fit;
}

}  // namespace neel
