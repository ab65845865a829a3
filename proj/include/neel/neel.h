/* Copyright 2026 The neelwall Authors
 * SPDX-License-Identifier: Apache-2.0 */

#ifndef NEEL_NEEL_H
#define NEEL_NEEL_H

/* C interface to the neelwall library: opaque handles, status codes and a
 * thread-local message for the last failure. Arrays are caller-allocated
 * unless a function returns a handle. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define NEEL_API __declspec(dllexport)
#else
#define NEEL_API __attribute__((visibility("default")))
#endif

typedef enum neel_status {
  NEEL_OK = 0,
  NEEL_ERR_DOMAIN = 1,
  NEEL_ERR_ACCURACY = 2,
  NEEL_ERR_INVALID_ARGUMENT = 3,
  NEEL_ERR_BUFFER_TOO_SMALL = 4,
  NEEL_ERR_INTERNAL = 5
} neel_status;

enum { NEEL_MODEL_CONFINED = 0, NEEL_MODEL_UNCONFINED = 1 };
enum { NEEL_ENERGY_FINITE = 0, NEEL_ENERGY_PLUS_INFINITY = 1, NEEL_ENERGY_MINUS_INFINITY = 2 };
enum {
  NEEL_MIN_CONVERGED = 0,
  NEEL_MIN_DIVERGING = 1,
  NEEL_MIN_BOUNDARY_COLLAPSE = 2,
  NEEL_MIN_NO_CRITICAL_POINT = 3,
  NEEL_MIN_MAX_ITER = 4
};
enum { NEEL_DESCENT_CONVERGED = 0, NEEL_DESCENT_MAX_ITER = 1, NEEL_DESCENT_STALLED = 2 };
enum { NEEL_FIT_OK = 0, NEEL_FIT_ILL_CONDITIONED = 1 };

typedef struct neel_config neel_config;
typedef struct neel_simulation neel_simulation;
typedef struct neel_step neel_step;
typedef struct neel_report neel_report;

NEEL_API const char* neel_version(void);
/* Message of the last failing call on this thread; empty after success. */
NEEL_API const char* neel_last_error(void);
NEEL_API const char* neel_status_string(int status);
NEEL_API const char* neel_minimize_status_string(int status);

/* ---- special functions ---- */
NEEL_API neel_status neel_eval_I(double t, double* value, double* error);
NEEL_API neel_status neel_eval_I0(double* value, double* error);
NEEL_API neel_status neel_eval_I_alt(double t, double* value, double* error);
NEEL_API neel_status neel_eval_I_prime(double t, double* value, double* error);
NEEL_API neel_status neel_eval_I_dprime(double t, double* value, double* error);
NEEL_API neel_status neel_I_prime_ratio(double t, double* value);
NEEL_API neel_status neel_ratio_root(double q, double* t);

/* ---- wall configurations ---- */
NEEL_API neel_status neel_config_create(int model, double alpha, size_t n, const double* a, const int* d,
                                        neel_config** out);
NEEL_API void neel_config_destroy(neel_config* config);
NEEL_API size_t neel_config_size(const neel_config* config);
NEEL_API neel_status neel_gammas(const neel_config* config, double* gamma, double* Gamma);
NEEL_API neel_status neel_theta_N(int n, double* theta);
/* Admissible alpha-interval for an alternating sign vector. */
NEEL_API neel_status neel_admissible_range(size_t n, const int* d, double* lower, double* upper);

/* ---- renormalised energy ---- */
/* self_terms (n) and pair_terms (n * n, row-major) and gradient (n) may be NULL. */
NEEL_API neel_status neel_W(const neel_config* config, double* W, int* energy_status, double* self_terms,
                            double* pair_terms, double* gradient);
NEEL_API neel_status neel_minimize_W(const neel_config* config, double grad_tol, int max_iter, double* argmin,
                                     double* W, double* grad_norm, int* iterations, int* status);
/* Per start: status, W and final positions (starts * n, row-major). */
NEEL_API neel_status neel_minimize_W_multistart(const neel_config* config, int starts, uint64_t seed,
                                                int* statuses, double* W, double* argmin);
/* kind 0: gap of pair (index, index + 1) scaled by eta; kind 1: walls
 * index..last (1-based) scaled towards 0 by eta. */
NEEL_API neel_status neel_scan_path(const neel_config* config, int kind, int index, int last, const double* etas,
                                    size_t count, double* W, int* energy_status);
NEEL_API neel_status neel_critical_point_N3(double alpha, const int* d, int* found, double* t0, double* a,
                                            double* W, double* grad_norm);

/* ---- full micromagnetic energy ---- */
NEEL_API neel_status neel_simulate(const neel_config* config, double epsilon, int nodes, int pad, double half_width,
                                   double grad_tol, int max_iter, int trace_every, neel_simulation** out);
NEEL_API void neel_simulation_destroy(neel_simulation* sim);
NEEL_API neel_status neel_simulation_energy(const neel_simulation* sim, double* exchange, double* anisotropy,
                                            double* stray, double* total);
NEEL_API neel_status neel_simulation_info(const neel_simulation* sim, int* status, int* iterations,
                                          double* grad_norm, double* clamp_error);
NEEL_API size_t neel_simulation_nodes(const neel_simulation* sim);
NEEL_API neel_status neel_simulation_profile(const neel_simulation* sim, double* x, double* phi);
NEEL_API size_t neel_simulation_trace_length(const neel_simulation* sim);
NEEL_API neel_status neel_simulation_trace(const neel_simulation* sim, int* iteration, double* exchange,
                                           double* anisotropy, double* stray, double* total);
/* energies (count) receives the minimal energy per epsilon; run_status (count) may be NULL. */
NEEL_API neel_status neel_expansion_fit(const neel_config* config, const double* epsilon, size_t count, int nodes,
                                        int pad, int threads, double* A, double* B, double* residual,
                                        double* condition, int* fit_status, double* energies, int* run_status);
NEEL_API neel_status neel_stray_energy(const double* f, size_t n, double h, int pad, double* spectral,
                                       double* double_integral);

/* ---- limiting step functions ---- */
NEEL_API neel_status neel_step_from_json(const char* json, neel_step** out);
NEEL_API void neel_step_destroy(neel_step* step);
NEEL_API neel_status neel_step_analyse(const neel_step* step, int* iota, double* eta, int* simple);
/* Transition profile; *count receives the wall number even if capacity is short. */
NEEL_API neel_status neel_step_profile(const neel_step* step, size_t capacity, double* a, int* d, size_t* count);

/* ---- acceptance suite ---- */
NEEL_API neel_status neel_verify(const int* ids, size_t count, int threads, uint64_t seed, neel_report** out);
/* Criteria of a named suite; *count receives the number even if capacity is short. */
NEEL_API neel_status neel_suite_criteria(const char* suite, int* ids, size_t capacity, size_t* count);
NEEL_API void neel_report_destroy(neel_report* report);
NEEL_API int neel_report_all_passed(const neel_report* report);
NEEL_API size_t neel_report_size(const neel_report* report);
/* Copies the i-th one-line summary (or the full JSON report when index is
 * (size_t)-1) into buffer; *needed receives the length including the NUL. */
NEEL_API neel_status neel_report_text(const neel_report* report, size_t index, char* buffer, size_t capacity,
                                      size_t* needed);
NEEL_API neel_status neel_report_passed(const neel_report* report, size_t index, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* NEEL_NEEL_H */
