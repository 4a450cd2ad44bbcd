/*
 * Copyright 2026 The pencilspec authors
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

/* C interface to the pencilspec shared library: opaque handles plus error
 * codes. Every function returns ps_status (or a trivial value); on failure
 * ps_last_error() describes the problem for the calling thread. Status
 * values double as process exit codes for the CLI. */

#ifndef PENCILSPEC_H
#define PENCILSPEC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ps_status {
  PS_OK = 0,
  PS_ERR_INVALID_ARGUMENT = 1,
  PS_ERR_CONFIG = 2,       /* bad config/input files, missing keys */
  PS_ERR_PRECONDITION = 3, /* contract violated before numerics ran */
  PS_ERR_NUMERICAL = 4     /* failure detected mid-computation */
} ps_status;

const char* ps_version(void);

/* Message for the most recent failure on this thread; empty string if none. */
const char* ps_last_error(void);

/* ------------------------------------------------------------------ */
/* Matrices                                                            */

typedef struct ps_matrix ps_matrix;

/* Entries are row-major interleaved (re, im) pairs, n*n*2 doubles. */
ps_status ps_matrix_create(int n, const double* entries, ps_matrix** out);
ps_status ps_matrix_load(const char* path, ps_matrix** out);
void ps_matrix_free(ps_matrix* m);
int ps_matrix_dim(const ps_matrix* m);
ps_status ps_matrix_get(const ps_matrix* m, int row, int col, double* re,
                        double* im);

/* ------------------------------------------------------------------ */
/* Spectral decomposition                                              */

typedef struct ps_spectral_model ps_spectral_model;

/* alpha_a <= 0 selects the default margin (1.01 ||A||, or 2.01 ||A|| when
 * fourier_margin is nonzero). */
ps_status ps_eig_decompose(const ps_matrix* m, double alpha_a,
                           int fourier_margin, ps_spectral_model** out);
void ps_spectral_model_free(ps_spectral_model* model);
int ps_model_dim(const ps_spectral_model* model);
ps_status ps_model_eigenvalue(const ps_spectral_model* model, int index,
                              double* re, double* im);
double ps_model_alpha(const ps_spectral_model* model);
double ps_model_kappa_j(const ps_spectral_model* model);
double ps_model_gap(const ps_spectral_model* model);
double ps_model_normalized_gap(const ps_spectral_model* model);

/* ------------------------------------------------------------------ */
/* Experiment runners                                                  */

typedef struct ps_run_options {
  uint64_t seed;  /* used when has_seed != 0 */
  int has_seed;
  int64_t trials; /* used when has_trials != 0 */
  int has_trials;
  int threads;    /* used when has_threads != 0 */
  int has_threads;
  const char* out_path; /* overrides the config 'out' key when non-NULL */
} ps_run_options;

/* config_path may be NULL for runners whose keys are all optional; each
 * runner writes its JSON report (and CSV table when applicable) to the
 * resolved output path. */
ps_status ps_run_estimate(const char* config_path, const ps_run_options* opts);
ps_status ps_run_scaling(const char* config_path, const ps_run_options* opts);
ps_status ps_run_bounds(const char* config_path, const ps_run_options* opts);
ps_status ps_run_liouvillian(const char* config_path, const ps_run_options* opts);
ps_status ps_run_abscissa(const char* config_path, const ps_run_options* opts);

/* Runs the acceptance suite. *report receives a NUL-terminated transcript
 * (one PASS/FAIL line per criterion); free it with ps_string_free.
 * Returns PS_OK when every criterion passes, PS_ERR_NUMERICAL otherwise. */
ps_status ps_selftest(uint64_t seed, char** report);

void ps_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PENCILSPEC_H */
