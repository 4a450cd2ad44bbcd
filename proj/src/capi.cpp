// Copyright 2026 The pencilspec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pencilspec/pencilspec.h"

#include <cstring>
#include <sstream>
#include <string>

#include "pencilspec/acceptance.hpp"
#include "pencilspec/matrix_io.hpp"
#include "pencilspec/runner.hpp"
#include "pencilspec/spectral.hpp"

namespace {

thread_local std::string g_last_error;

ps_status status_of(const pencilspec::Error& e) {
  switch (e.category()) {
    case pencilspec::ErrorCategory::Config: return PS_ERR_CONFIG;
    case pencilspec::ErrorCategory::Precondition: return PS_ERR_PRECONDITION;
    case pencilspec::ErrorCategory::Numerical: return PS_ERR_NUMERICAL;
  }
  return PS_ERR_NUMERICAL;
}

template <typename Fn>
ps_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const pencilspec::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PS_ERR_NUMERICAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PS_ERR_NUMERICAL;
  }
}

pencilspec::RunOverrides to_overrides(const ps_run_options* opts) {
  pencilspec::RunOverrides ov;
  if (!opts) return ov;
  if (opts->has_seed) ov.seed = opts->seed;
  if (opts->has_trials) ov.trials = opts->trials;
  if (opts->has_threads) ov.threads = opts->threads;
  if (opts->out_path) ov.out = opts->out_path;
  return ov;
}

using RunFn = pencilspec::Json (*)(const pencilspec::ExperimentConfig&);

ps_status run_with(RunFn fn, const char* config_path, const ps_run_options* opts) {
  return guarded([&]() {
    pencilspec::ExperimentConfig cfg =
        config_path ? pencilspec::ExperimentConfig::from_file(config_path)
                    : pencilspec::ExperimentConfig{};
    cfg = pencilspec::apply_overrides(std::move(cfg), to_overrides(opts));
    const pencilspec::Json report = fn(cfg);
    pencilspec::write_report(report, cfg.get_string("out", ""));
    return PS_OK;
  });
}

}  // namespace

struct ps_matrix {
  pencilspec::CMatrix m;
};

struct ps_spectral_model {
  pencilspec::SpectralModel model;
};

extern "C" {

const char* ps_version(void) { return "0.1.0"; }

const char* ps_last_error(void) { return g_last_error.c_str(); }

ps_status ps_matrix_create(int n, const double* entries, ps_matrix** out) {
  if (n < 1 || !entries || !out) {
    g_last_error = "ps_matrix_create: bad arguments";
    return PS_ERR_INVALID_ARGUMENT;
  }
  return guarded([&]() {
    auto* h = new ps_matrix;
    h->m.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double re = entries[2 * (i * n + j)];
        const double im = entries[2 * (i * n + j) + 1];
        h->m(i, j) = pencilspec::Complex(re, im);
      }
    pencilspec::check_finite(h->m, "ps_matrix_create");
    *out = h;
    return PS_OK;
  });
}

ps_status ps_matrix_load(const char* path, ps_matrix** out) {
  if (!path || !out) {
    g_last_error = "ps_matrix_load: bad arguments";
    return PS_ERR_INVALID_ARGUMENT;
  }
  return guarded([&]() {
    auto* h = new ps_matrix{pencilspec::read_matrix_file(path)};
    *out = h;
    return PS_OK;
  });
}

void ps_matrix_free(ps_matrix* m) { delete m; }

int ps_matrix_dim(const ps_matrix* m) {
  return m ? static_cast<int>(m->m.rows()) : 0;
}

ps_status ps_matrix_get(const ps_matrix* m, int row, int col, double* re,
                        double* im) {
  if (!m || !re || !im || row < 0 || col < 0 || row >= m->m.rows() ||
      col >= m->m.cols()) {
    g_last_error = "ps_matrix_get: bad arguments";
    return PS_ERR_INVALID_ARGUMENT;
  }
  *re = m->m(row, col).real();
  *im = m->m(row, col).imag();
  return PS_OK;
}

ps_status ps_eig_decompose(const ps_matrix* m, double alpha_a,
                           int fourier_margin, ps_spectral_model** out) {
  if (!m || !out) {
    g_last_error = "ps_eig_decompose: bad arguments";
    return PS_ERR_INVALID_ARGUMENT;
  }
  return guarded([&]() {
    pencilspec::EigOptions opts;
    if (alpha_a > 0.0) opts.alpha_a = alpha_a;
    opts.fourier_margin = fourier_margin != 0;
    auto* h = new ps_spectral_model{pencilspec::eig_decompose(m->m, opts)};
    *out = h;
    return PS_OK;
  });
}

void ps_spectral_model_free(ps_spectral_model* model) { delete model; }

int ps_model_dim(const ps_spectral_model* model) {
  return model ? model->model.dim() : 0;
}

ps_status ps_model_eigenvalue(const ps_spectral_model* model, int index,
                              double* re, double* im) {
  if (!model || !re || !im || index < 0 || index >= model->model.dim()) {
    g_last_error = "ps_model_eigenvalue: bad arguments";
    return PS_ERR_INVALID_ARGUMENT;
  }
  *re = model->model.eigenvalues(index).real();
  *im = model->model.eigenvalues(index).imag();
  return PS_OK;
}

double ps_model_alpha(const ps_spectral_model* model) {
  return model ? model->model.alpha_a : 0.0;
}

double ps_model_kappa_j(const ps_spectral_model* model) {
  return model ? model->model.kappa_j : 0.0;
}

double ps_model_gap(const ps_spectral_model* model) {
  return model ? model->model.gap : 0.0;
}

double ps_model_normalized_gap(const ps_spectral_model* model) {
  return model ? model->model.normalized_gap : 0.0;
}

ps_status ps_run_estimate(const char* config_path, const ps_run_options* opts) {
  return run_with(&pencilspec::run_estimate, config_path, opts);
}

ps_status ps_run_scaling(const char* config_path, const ps_run_options* opts) {
  return run_with(&pencilspec::run_scaling, config_path, opts);
}

ps_status ps_run_bounds(const char* config_path, const ps_run_options* opts) {
  return run_with(&pencilspec::run_bounds, config_path, opts);
}

ps_status ps_run_liouvillian(const char* config_path, const ps_run_options* opts) {
  return run_with(&pencilspec::run_liouvillian, config_path, opts);
}

ps_status ps_run_abscissa(const char* config_path, const ps_run_options* opts) {
  return run_with(&pencilspec::run_abscissa, config_path, opts);
}

ps_status ps_selftest(uint64_t seed, char** report) {
  bool all = false;
  const ps_status st = guarded([&]() {
    std::ostringstream os;
    all = pencilspec::run_acceptance(os, seed);
    if (report) {
      const std::string text = os.str();
      *report = new char[text.size() + 1];
      std::memcpy(*report, text.c_str(), text.size() + 1);
    }
    return PS_OK;
  });
  if (st != PS_OK) return st;
  if (!all) {
    g_last_error = "acceptance suite reported failures";
    return PS_ERR_NUMERICAL;
  }
  return PS_OK;
}

void ps_string_free(char* s) { delete[] s; }

}  // extern "C"
