// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

#include "neel/neel.h"

#include <algorithm>
#include <cstring>
#include <span>
#include <exception>
#include <string>
#include <vector>

#include "neel/error.hpp"
#include "neel/geometry.hpp"
#include "neel/micromag.hpp"
#include "neel/profiles.hpp"
#include "neel/renorm.hpp"
#include "neel/specfun.hpp"
#include "neel/verify.hpp"

struct neel_config {
  neel::WallConfig config;
};

struct neel_simulation {
  neel::EnergyMinimum result;
};

struct neel_step {
  neel::StepFunction step;
};

struct neel_report {
  std::vector<neel::CriterionResult> results;
};

namespace {

thread_local std::string last_error;

template <class F>
neel_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return NEEL_OK;
  } catch (const neel::DomainError& e) {
    last_error = e.what();
    return NEEL_ERR_DOMAIN;
  } catch (const neel::AccuracyError& e) {
    last_error = e.what();
    return NEEL_ERR_ACCURACY;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return NEEL_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return NEEL_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return NEEL_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

template <class T>
void put(T* dst, T value) {
  if (dst != nullptr) *dst = value;
}

neel_status special_value(neel::SpecialValue (*fn)(double, const neel::QuadratureSpec&), double t, double* value,
                          double* error) {
  return guarded([&] {
    require(value != nullptr, "value pointer is null");
    const auto v = fn(t, {});
    *value = v.value;
    put(error, v.error);
  });
}

int energy_status(neel::EnergyStatus s) {
  switch (s) {
    case neel::EnergyStatus::Finite:
      return NEEL_ENERGY_FINITE;
    case neel::EnergyStatus::PlusInfinity:
      return NEEL_ENERGY_PLUS_INFINITY;
    case neel::EnergyStatus::MinusInfinity:
      return NEEL_ENERGY_MINUS_INFINITY;
  }
  return NEEL_ENERGY_FINITE;
}

int minimize_status(neel::MinimizeStatus s) {
  switch (s) {
    case neel::MinimizeStatus::Converged:
      return NEEL_MIN_CONVERGED;
    case neel::MinimizeStatus::DivergingToMinusInfinity:
      return NEEL_MIN_DIVERGING;
    case neel::MinimizeStatus::BoundaryCollapse:
      return NEEL_MIN_BOUNDARY_COLLAPSE;
    case neel::MinimizeStatus::Escaping:
      return NEEL_MIN_NO_CRITICAL_POINT;
    case neel::MinimizeStatus::MaxIter:
      return NEEL_MIN_MAX_ITER;
  }
  return NEEL_MIN_MAX_ITER;
}

int descent_status(neel::DescentStatus s) {
  switch (s) {
    case neel::DescentStatus::Converged:
      return NEEL_DESCENT_CONVERGED;
    case neel::DescentStatus::MaxIter:
      return NEEL_DESCENT_MAX_ITER;
    case neel::DescentStatus::Stalled:
      return NEEL_DESCENT_STALLED;
  }
  return NEEL_DESCENT_MAX_ITER;
}

neel_status copy_text(const std::string& text, char* buffer, size_t capacity, size_t* needed) {
  put(needed, text.size() + 1);
  if (buffer == nullptr || capacity < text.size() + 1) {
    last_error = "buffer too small";
    return NEEL_ERR_BUFFER_TOO_SMALL;
  }
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return NEEL_OK;
}

}  // namespace

extern "C" {

const char* neel_version(void) { return "1.0.0"; }

const char* neel_last_error(void) { return last_error.c_str(); }

const char* neel_status_string(int status) {
  switch (status) {
    case NEEL_OK:
      return "ok";
    case NEEL_ERR_DOMAIN:
      return "domain error";
    case NEEL_ERR_ACCURACY:
      return "accuracy error";
    case NEEL_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case NEEL_ERR_BUFFER_TOO_SMALL:
      return "buffer too small";
    default:
      return "internal error";
  }
}

const char* neel_minimize_status_string(int status) {
  switch (status) {
    case NEEL_MIN_CONVERGED:
      return "converged";
    case NEEL_MIN_DIVERGING:
      return "diverging-to-minus-infinity";
    case NEEL_MIN_BOUNDARY_COLLAPSE:
      return "boundary-collapse";
    case NEEL_MIN_NO_CRITICAL_POINT:
      return "no-critical-point";
    default:
      return "max-iter";
  }
}

neel_status neel_eval_I(double t, double* value, double* error) { return special_value(neel::eval_I, t, value, error); }

neel_status neel_eval_I0(double* value, double* error) {
  return guarded([&] {
    require(value != nullptr, "value pointer is null");
    const auto v = neel::eval_I0();
    *value = v.value;
    put(error, v.error);
  });
}

neel_status neel_eval_I_alt(double t, double* value, double* error) {
  return special_value(neel::eval_I_alt, t, value, error);
}

neel_status neel_eval_I_prime(double t, double* value, double* error) {
  return special_value(neel::eval_I_prime, t, value, error);
}

neel_status neel_eval_I_dprime(double t, double* value, double* error) {
  return special_value(neel::eval_I_dprime, t, value, error);
}

neel_status neel_I_prime_ratio(double t, double* value) {
  return guarded([&] {
    require(value != nullptr, "value pointer is null");
    *value = neel::I_prime_ratio(t);
  });
}

neel_status neel_ratio_root(double q, double* t) {
  return guarded([&] {
    require(t != nullptr, "output pointer is null");
    *t = neel::ratio_root(q);
  });
}

neel_status neel_config_create(int model, double alpha, size_t n, const double* a, const int* d, neel_config** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    require(n == 0 || (a != nullptr && d != nullptr), "position or sign array is null");
    require(model == NEEL_MODEL_CONFINED || model == NEEL_MODEL_UNCONFINED, "unknown model");
    neel::WallConfig c;
    c.model = model == NEEL_MODEL_CONFINED ? neel::Model::Confined : neel::Model::Unconfined;
    c.alpha = alpha;
    c.a.assign(a, a + n);
    c.d.assign(d, d + n);
    c.validate();
    *out = new neel_config{c};
  });
}

void neel_config_destroy(neel_config* config) { delete config; }

size_t neel_config_size(const neel_config* config) { return config == nullptr ? 0 : config->config.size(); }

neel_status neel_gammas(const neel_config* config, double* gamma, double* Gamma) {
  return guarded([&] {
    require(config != nullptr, "config is null");
    const auto g = neel::gammas(config->config);
    if (gamma != nullptr) std::copy(g.gamma.begin(), g.gamma.end(), gamma);
    put(Gamma, g.Gamma);
  });
}

neel_status neel_theta_N(int n, double* theta) {
  return guarded([&] {
    require(theta != nullptr, "output pointer is null");
    *theta = neel::theta_N(n);
  });
}

neel_status neel_admissible_range(size_t n, const int* d, double* lower, double* upper) {
  return guarded([&] {
    require(d != nullptr, "sign array is null");
    const auto r = neel::admissible_range(std::vector<int>(d, d + n));
    put(lower, r.lower);
    put(upper, r.upper);
  });
}

neel_status neel_W(const neel_config* config, double* W, int* energy_status_out, double* self_terms,
                   double* pair_terms, double* gradient) {
  return guarded([&] {
    require(config != nullptr && W != nullptr, "null argument");
    const auto r = neel::W_eval(config->config, gradient != nullptr);
    *W = r.W;
    put(energy_status_out, energy_status(r.status));
    const size_t n = config->config.size();
    if (self_terms != nullptr && r.self_terms.size() == n) std::copy(r.self_terms.begin(), r.self_terms.end(), self_terms);
    if (pair_terms != nullptr && r.pair_terms.size() == n) {
      for (size_t k = 0; k < n; ++k) std::copy(r.pair_terms[k].begin(), r.pair_terms[k].end(), pair_terms + k * n);
    }
    if (gradient != nullptr) {
      if (r.gradient.size() == n) {
        std::copy(r.gradient.begin(), r.gradient.end(), gradient);
      } else {
        std::fill(gradient, gradient + n, 0.0);
      }
    }
  });
}

neel_status neel_minimize_W(const neel_config* config, double grad_tol, int max_iter, double* argmin, double* W,
                            double* grad_norm, int* iterations, int* status) {
  return guarded([&] {
    require(config != nullptr, "config is null");
    neel::MinimizeOptions opt;
    if (grad_tol > 0.0) opt.grad_tol = grad_tol;
    if (max_iter > 0) opt.max_iter = max_iter;
    const auto r = neel::minimize_W(config->config, opt);
    if (argmin != nullptr) std::copy(r.argmin.begin(), r.argmin.end(), argmin);
    put(W, r.W);
    put(grad_norm, r.grad_norm);
    put(iterations, r.iterations);
    put(status, minimize_status(r.status));
  });
}

neel_status neel_minimize_W_multistart(const neel_config* config, int starts, uint64_t seed, int* statuses, double* W,
                                       double* argmin) {
  return guarded([&] {
    require(config != nullptr && starts > 0, "invalid arguments");
    const auto runs = neel::minimize_W_multistart(config->config, starts, seed);
    const size_t n = config->config.size();
    for (size_t i = 0; i < runs.size(); ++i) {
      if (statuses != nullptr) statuses[i] = minimize_status(runs[i].status);
      if (W != nullptr) W[i] = runs[i].W;
      if (argmin != nullptr) std::copy(runs[i].argmin.begin(), runs[i].argmin.end(), argmin + i * n);
    }
  });
}

neel_status neel_scan_path(const neel_config* config, int kind, int index, int last, const double* etas, size_t count,
                           double* W, int* energy_status_out) {
  return guarded([&] {
    require(config != nullptr && etas != nullptr && W != nullptr, "null argument");
    neel::PathFamily path;
    if (kind == 0) {
      path = neel::pair_gap_path(config->config.a, index);
    } else if (kind == 1) {
      path = neel::block_collapse_path(config->config.a, index, last);
    } else {
      throw std::invalid_argument("unknown path kind");
    }
    const auto samples = neel::scan_path(config->config, path, std::vector<double>(etas, etas + count));
    for (size_t i = 0; i < samples.size(); ++i) {
      W[i] = samples[i].W;
      if (energy_status_out != nullptr) energy_status_out[i] = energy_status(samples[i].status);
    }
  });
}

neel_status neel_critical_point_N3(double alpha, const int* d, int* found, double* t0, double* a, double* W,
                                   double* grad_norm) {
  return guarded([&] {
    require(d != nullptr && found != nullptr, "null argument");
    const auto cp = neel::critical_point_N3(alpha, std::vector<int>(d, d + 3));
    *found = cp.has_value() ? 1 : 0;
    if (cp) {
      put(t0, cp->t0);
      if (a != nullptr) std::copy(cp->a.begin(), cp->a.end(), a);
      put(W, cp->W);
      put(grad_norm, cp->grad_norm);
    }
  });
}

neel_status neel_simulate(const neel_config* config, double epsilon, int nodes, int pad, double half_width,
                          double grad_tol, int max_iter, int trace_every, neel_simulation** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    neel::SimulationParams p;
    p.epsilon = epsilon;
    p.model = config->config.model;
    if (nodes > 0) p.n = nodes;
    if (pad > 0) p.pad = pad;
    p.half_width = half_width;
    neel::DescentOptions opt;
    if (grad_tol > 0.0) opt.grad_tol = grad_tol;
    if (max_iter > 0) opt.max_iter = max_iter;
    opt.trace_every = trace_every;
    auto* sim = new neel_simulation{neel::minimize_energy(config->config, p, nullptr, opt)};
    *out = sim;
  });
}

void neel_simulation_destroy(neel_simulation* sim) { delete sim; }

neel_status neel_simulation_energy(const neel_simulation* sim, double* exchange, double* anisotropy, double* stray,
                                   double* total) {
  return guarded([&] {
    require(sim != nullptr, "simulation is null");
    put(exchange, sim->result.energy.exchange);
    put(anisotropy, sim->result.energy.anisotropy);
    put(stray, sim->result.energy.stray);
    put(total, sim->result.energy.total);
  });
}

neel_status neel_simulation_info(const neel_simulation* sim, int* status, int* iterations, double* grad_norm,
                                 double* clamp_error) {
  return guarded([&] {
    require(sim != nullptr, "simulation is null");
    put(status, descent_status(sim->result.status));
    put(iterations, sim->result.iterations);
    put(grad_norm, sim->result.grad_norm);
    put(clamp_error, sim->result.clamp_error);
  });
}

size_t neel_simulation_nodes(const neel_simulation* sim) {
  return sim == nullptr ? 0 : sim->result.profile.phi.size();
}

neel_status neel_simulation_profile(const neel_simulation* sim, double* x, double* phi) {
  return guarded([&] {
    require(sim != nullptr, "simulation is null");
    const auto& prof = sim->result.profile;
    for (int i = 0; i < prof.grid.n; ++i) {
      if (x != nullptr) x[i] = prof.grid.x(i);
      if (phi != nullptr) phi[i] = prof.phi[i];
    }
  });
}

size_t neel_simulation_trace_length(const neel_simulation* sim) {
  return sim == nullptr ? 0 : sim->result.trace.size();
}

neel_status neel_simulation_trace(const neel_simulation* sim, int* iteration, double* exchange, double* anisotropy,
                                  double* stray, double* total) {
  return guarded([&] {
    require(sim != nullptr, "simulation is null");
    const auto& tr = sim->result.trace;
    for (size_t i = 0; i < tr.size(); ++i) {
      if (iteration != nullptr) iteration[i] = tr[i].iteration;
      if (exchange != nullptr) exchange[i] = tr[i].energy.exchange;
      if (anisotropy != nullptr) anisotropy[i] = tr[i].energy.anisotropy;
      if (stray != nullptr) stray[i] = tr[i].energy.stray;
      if (total != nullptr) total[i] = tr[i].energy.total;
    }
  });
}

neel_status neel_expansion_fit(const neel_config* config, const double* epsilon, size_t count, int nodes, int pad,
                               int threads, double* A, double* B, double* residual, double* condition,
                               int* fit_status, double* energies, int* run_status) {
  return guarded([&] {
    require(config != nullptr && epsilon != nullptr, "null argument");
    neel::SimulationParams p;
    p.model = config->config.model;
    if (nodes > 0) p.n = nodes;
    if (pad > 0) p.pad = pad;
    const auto fit =
        neel::expansion_fit(config->config, std::vector<double>(epsilon, epsilon + count), p, {}, threads);
    put(A, fit.A);
    put(B, fit.B);
    put(residual, fit.residual);
    put(condition, fit.condition);
    put(fit_status, static_cast<int>(fit.status == neel::FitStatus::Ok ? NEEL_FIT_OK : NEEL_FIT_ILL_CONDITIONED));
    for (size_t i = 0; i < count; ++i) {
      if (energies != nullptr) energies[i] = fit.energy[i];
      if (run_status != nullptr) run_status[i] = descent_status(fit.runs[i]);
    }
  });
}

neel_status neel_stray_energy(const double* f, size_t n, double h, int pad, double* spectral, double* double_integral) {
  return guarded([&] {
    require(f != nullptr, "data pointer is null");
    const std::span<const double> data(f, n);
    if (spectral != nullptr) *spectral = neel::stray_energy_spectral(data, h, pad > 0 ? pad : 4).energy;
    if (double_integral != nullptr) *double_integral = neel::stray_energy_double_integral(data, h);
  });
}

neel_status neel_step_from_json(const char* json, neel_step** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      throw neel::DomainError(std::string("invalid JSON: ") + e.what());
    }
    *out = new neel_step{neel::step_from_json(j)};
  });
}

void neel_step_destroy(neel_step* step) { delete step; }

neel_status neel_step_analyse(const neel_step* step, int* iota, double* eta, int* simple) {
  return guarded([&] {
    require(step != nullptr, "step is null");
    put(iota, neel::iota(step->step));
    put(eta, neel::eta(step->step));
    put(simple, neel::is_simple(step->step) ? 1 : 0);
  });
}

neel_status neel_step_profile(const neel_step* step, size_t capacity, double* a, int* d, size_t* count) {
  neel_status s = guarded([&] {
    require(step != nullptr, "step is null");
    const auto tp = neel::transition_profile(step->step);
    put(count, tp.a.size());
    if (capacity < tp.a.size()) throw std::length_error("capacity too small");
    if (a != nullptr) std::copy(tp.a.begin(), tp.a.end(), a);
    if (d != nullptr) std::copy(tp.d.begin(), tp.d.end(), d);
  });
  if (s == NEEL_ERR_INTERNAL && last_error == "capacity too small") s = NEEL_ERR_BUFFER_TOO_SMALL;
  return s;
}

neel_status neel_verify(const int* ids, size_t count, int threads, uint64_t seed, neel_report** out) {
  return guarded([&] {
    require(out != nullptr && (count == 0 || ids != nullptr), "null argument");
    neel::VerifyOptions opt;
    opt.threads = threads > 0 ? threads : 1;
    opt.seed = seed;
    *out = new neel_report{neel::run_criteria(std::vector<int>(ids, ids + count), opt)};
  });
}

neel_status neel_suite_criteria(const char* suite, int* ids, size_t capacity, size_t* count) {
  neel_status s = guarded([&] {
    require(suite != nullptr, "suite is null");
    const auto list = neel::suite_criteria(suite);
    put(count, list.size());
    if (capacity < list.size() || ids == nullptr) throw std::length_error("capacity too small");
    std::copy(list.begin(), list.end(), ids);
  });
  if (s == NEEL_ERR_INTERNAL && last_error == "capacity too small") s = NEEL_ERR_BUFFER_TOO_SMALL;
  return s;
}

void neel_report_destroy(neel_report* report) { delete report; }

int neel_report_all_passed(const neel_report* report) {
  if (report == nullptr) return 0;
  for (const auto& r : report->results) {
    if (!r.passed) return 0;
  }
  return 1;
}

size_t neel_report_size(const neel_report* report) { return report == nullptr ? 0 : report->results.size(); }

neel_status neel_report_text(const neel_report* report, size_t index, char* buffer, size_t capacity, size_t* needed) {
  if (report == nullptr) {
    last_error = "report is null";
    return NEEL_ERR_INVALID_ARGUMENT;
  }
  std::string text;
  if (index == static_cast<size_t>(-1)) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : report->results) j.push_back(neel::to_json(r));
    text = j.dump(2);
  } else if (index < report->results.size()) {
    text = neel::summary_line(report->results[index]);
  } else {
    last_error = "report index out of range";
    return NEEL_ERR_INVALID_ARGUMENT;
  }
  last_error.clear();
  return copy_text(text, buffer, capacity, needed);
}

neel_status neel_report_passed(const neel_report* report, size_t index, int* passed) {
  if (report == nullptr || passed == nullptr || index >= report->results.size()) {
    last_error = "invalid report query";
    return NEEL_ERR_INVALID_ARGUMENT;
  }
  *passed = report->results[index].passed ? 1 : 0;
  last_error.clear();
  return NEEL_OK;
}

}  // extern "C"
