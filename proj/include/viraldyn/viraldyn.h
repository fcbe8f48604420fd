/*
 * Copyright 2026 The viraldyn Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the viraldyn library.
 *
 * Every function returns an int status: VD_OK (0) on success, VD_NO_RESULT
 * (1) when a query has no answer (for instance no infected equilibrium), and
 * a negative VD_ERROR_* code otherwise. The message of the most recent
 * failure on the calling thread is available from vd_last_error_message.
 *
 * Text outputs follow one convention: the caller passes a buffer and its
 * capacity in *out_len. When the buffer is NULL or too small the call
 * returns VD_ERROR_INSUFFICIENT_BUFFER and stores the required size,
 * including the terminating NUL, in *out_len. On success *out_len holds
 * the number of bytes written, including the NUL.
 */
#ifndef VIRALDYN_H
#define VIRALDYN_H

#include <stddef.h>

#if defined(_WIN32)
#define VD_API __declspec(dllexport)
#else
#define VD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum vd_status {
  VD_OK = 0,
  VD_NO_RESULT = 1,
  VD_ERROR_INVALID_INPUT = -1,
  VD_ERROR_CONTRACT = -2,
  VD_ERROR_RANGE = -3,
  VD_ERROR_NUMERICAL = -4,
  VD_ERROR_BLOWUP = -5,
  VD_ERROR_IO = -6,
  VD_ERROR_NULL_POINTER = -7,
  VD_ERROR_INSUFFICIENT_BUFFER = -8,
  VD_ERROR_UNKNOWN = -99
};

typedef struct vd_params_struct* vd_params_t;
typedef struct vd_trajectory_struct* vd_trajectory_t;

VD_API const char* vd_version(void);
VD_API const char* vd_error_description(int status);
/* Message of the last failure on this thread, "" if none. */
VD_API const char* vd_last_error_message(void);

/* ---- parameters ---- */

/* Names: fig1, fig3, fig5, fig7c, fig8. */
VD_API int vd_params_init_preset(vd_params_t* params, const char* name);
/* Flat "name = value" text; see the README for the format. */
VD_API int vd_params_init_text(vd_params_t* params, const char* text);
VD_API int vd_params_init_file(vd_params_t* params, const char* path);
VD_API int vd_params_destroy(vd_params_t params);
/* Names: s, d, a, t_max, b, alpha, mu, p, c, tau. Values are validated
 * when used, not when set. */
VD_API int vd_params_set(vd_params_t params, const char* name, double value);
VD_API int vd_params_get(vd_params_t params, const char* name, double* value);
VD_API int vd_params_validate(vd_params_t params);

/* ---- equilibria and stability ---- */

VD_API int vd_r0(vd_params_t params, double* r0);
VD_API int vd_t0(vd_params_t params, double* t0);
/* (T, I, V) of the infected equilibrium, or VD_NO_RESULT when R0 <= 1. */
VD_API int vd_infected_equilibrium(vd_params_t params, double state[3]);
VD_API int vd_stability_json(vd_params_t params, char* out, size_t* out_len);
/* Constant history used when none is given. */
VD_API int vd_default_history(vd_params_t params, double state[3]);

/* ---- simulation ---- */

/* history may be NULL for the default. step <= 0 picks a step. */
VD_API int vd_integrate(vd_trajectory_t* traj, vd_params_t params, const double history[3],
                        double t_end, double step);
VD_API int vd_trajectory_destroy(vd_trajectory_t traj);
VD_API int vd_trajectory_size(vd_trajectory_t traj, size_t* size);
VD_API int vd_trajectory_sample(vd_trajectory_t traj, size_t index, double* t, double state[3]);
/* Dense output on [-tau, t_end]; VD_ERROR_RANGE outside. */
VD_API int vd_trajectory_eval(vd_trajectory_t traj, double t, double state[3]);
VD_API int vd_trajectory_step(vd_trajectory_t traj, double* step);
VD_API int vd_trajectory_positivity(vd_trajectory_t traj, size_t* clamped, size_t* violations);
VD_API int vd_trajectory_csv(vd_trajectory_t traj, char* out, size_t* out_len);
VD_API int vd_trajectory_write_csv(vd_trajectory_t traj, const char* path);
/* Outcome detection against E1 and E2 (when present). settle_tol <= 0
 * selects the default 1e-3. */
VD_API int vd_verdict_json(vd_trajectory_t traj, double settle_tol, char* out, size_t* out_len);
VD_API int vd_peaks_csv(vd_trajectory_t traj, double settle_tol, char* out, size_t* out_len);
VD_API int vd_permanence_json(vd_trajectory_t traj, char* out, size_t* out_len);

/* ---- sensitivity and sweeps ---- */

/* analytic != 0 requests the closed form (mu, b, p, c only). */
VD_API int vd_sensitivity_index(vd_params_t params, const char* name, int analytic,
                                double* index);
VD_API int vd_sensitivity_csv(vd_params_t params, char* out, size_t* out_len);
/* axis: "tau", "c" or "alpha". history may be NULL. max_workers == 0
 * defers to VIRALDYN_THREADS or the hardware. */
VD_API int vd_sweep_csv(vd_params_t params, const char* axis, const double* grid,
                        size_t grid_len, double t_end, double step, const double history[3],
                        size_t max_workers, char* out, size_t* out_len);

#ifdef __cplusplus
}
#endif

#endif
