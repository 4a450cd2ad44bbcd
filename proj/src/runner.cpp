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

#include "pencilspec/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "pencilspec/bounds.hpp"
#include "pencilspec/chebyshev.hpp"
#include "pencilspec/generator.hpp"
#include "pencilspec/lindblad.hpp"
#include "pencilspec/matrix_io.hpp"
#include "pencilspec/pencil.hpp"
#include "pencilspec/stability.hpp"

namespace pencilspec {

namespace {

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CVector& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(to_json(v(i)));
  return arr;
}

Json config_echo(const ExperimentConfig& cfg) {
  Json j = Json::object();
  for (const auto& [k, v] : cfg.entries()) {
    // Execution details; identical experiments must produce identical
    // bytes regardless of where the report lands or how many workers ran.
    if (k == "out" || k == "threads") continue;
    j[k] = v;
  }
  return j;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  threads = std::clamp(threads, 1, 256);
  if (threads == 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int w = 0; w < std::min(threads, count); ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct ResolvedInstance {
  Instance instance;
  FamilySpec family;
  int r_probe = 0;
  std::string source;
};

FamilySpec family_for(const ExperimentConfig& cfg, const SpectralModel& model) {
  FamilySpec fam;
  fam.tag = signal_family_from_string(cfg.get_string("family", "power"));
  fam.alpha_a = model.alpha_a;
  return fam;
}

ResolvedInstance resolve_instance(const ExperimentConfig& cfg,
                                  std::uint64_t seed) {
  ResolvedInstance out;
  const std::string source = cfg.get_string("instance", "generate");
  const SignalFamily family_tag =
      signal_family_from_string(cfg.get_string("family", "power"));

  if (source == "file") {
    const std::string matrix_path = cfg.require_string("matrix_file");
    const CMatrix a = read_matrix_file(matrix_path);
    EigOptions opts;
    if (cfg.has("alpha")) opts.alpha_a = cfg.get_double("alpha", 0.0);
    opts.fourier_margin = family_tag == SignalFamily::Fourier;
    SpectralModel model = eig_decompose(a, opts);

    InitialState state = [&]() {
      if (cfg.has("state_file")) return read_state_file(cfg.require_string("state_file"));
      // Maximally mixed default: every mode carries weight <phi_i|psi_i>/N = 1/N.
      const int n = static_cast<int>(a.rows());
      return InitialState::density_matrix(
          CMatrix::Identity(n, n) / static_cast<double>(n));
    }();

    const int r_probe = static_cast<int>(
        cfg.get_int("R", std::min<std::int64_t>(model.dim(), 8)));
    SparseExpansion exp =
        expand_initial_state(state, model, r_probe, /*drop_tol=*/1e-10);
    out.instance = Instance{a, std::move(model), std::move(state), std::move(exp)};
    out.r_probe = r_probe;
    out.source = matrix_path;
  } else if (source == "generate") {
    InstanceSpec spec;
    spec.n = static_cast<int>(cfg.get_int("n", 8));
    spec.r = static_cast<int>(cfg.get_int("r", 2));
    spec.spectrum = spectrum_kind_from_string(cfg.get_string(
        "spectrum", family_tag == SignalFamily::Fourier
                        ? "real"
                        : (family_tag == SignalFamily::Exponential ? "negreal"
                                                                   : "complex")));
    spec.min_normalized_gap = cfg.get_double("min_gap", 0.1);
    spec.min_c_min = cfg.get_double("min_cmin", 0.1);
    spec.nonnormality = cfg.get_double("nonnormality", 0.3);
    spec.radius = cfg.get_double("radius", 0.9);
    spec.include_zero = cfg.get_bool("include_zero", false);
    spec.zero_in_support = cfg.get_bool("zero_in_support", true);
    spec.fourier_margin = family_tag == SignalFamily::Fourier;
    auto rng = substream(seed, {rngkey::kInstance});
    out.instance = generate_instance(spec, rng);
    out.r_probe = static_cast<int>(cfg.get_int("R", 2 * spec.r));
    out.source = "generate";
  } else {
    raise(ErrorKind::ConfigError, "instance must be 'generate' or 'file'");
  }
  out.family = family_for(cfg, out.instance.model);
  return out;
}

AccessModel access_for(const ExperimentConfig& cfg, std::uint64_t seed) {
  const std::string mode = cfg.get_string("access", "exact");
  if (mode == "exact") return AccessModel::exact(seed);
  if (mode == "hadamard")
    return AccessModel::hadamard(cfg.get_int("shots", 100000), seed);
  if (mode == "qae")
    return AccessModel::qae(cfg.get_double("qae_eps", 1e-3),
                            cfg.get_double("qae_delta", 1e-2), seed,
                            cfg.get_double("qae_const", 1.0));
  raise(ErrorKind::ConfigError, "unknown access mode '" + mode + "'");
}

PipelineOptions pipeline_options(const ExperimentConfig& cfg, int r_probe) {
  PipelineOptions opts;
  opts.r_probe = r_probe;
  opts.tau_rel = cfg.get_double("tau_rel", 1e-6);
  opts.tau_abs_factor = cfg.get_double("tau_abs", 10.0);
  return opts;
}

/// Generalized-eigenvalue nodes of the instance's support under the family.
CVector support_nodes(const Instance& inst, const FamilySpec& family) {
  const CVector lambdas = inst.support_eigenvalues();
  CVector z(lambdas.size());
  for (int i = 0; i < lambdas.size(); ++i) z(i) = family.kernel(lambdas(i), 1);
  return z;
}

double min_pairwise_gap(const CVector& z) {
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < z.size(); ++i)
    for (int j = i + 1; j < z.size(); ++j)
      gap = std::min(gap, std::abs(z(i) - z(j)));
  return std::isfinite(gap) ? gap : 0.0;
}

Json bound_to_json(const BoundReport& b) {
  Json j;
  j["name"] = b.name;
  j["predicted"] = b.predicted;
  if (b.observed) j["observed"] = *b.observed;
  if (b.satisfied) j["satisfied"] = *b.satisfied;
  j["params"] = Json(b.params);
  j["note"] = "scaling model; leading constants set to 1 unless stated";
  return j;
}

/// Bound certificates evaluated at the instance's parameters.
Json instance_bounds(const ResolvedInstance& ri, const AccessModel& access,
                     const ExperimentConfig& cfg) {
  Json out = Json::array();
  const Instance& inst = ri.instance;
  const int r = inst.expansion.sparsity();
  const CVector z = support_nodes(inst, ri.family);
  const double node_gap = min_pairwise_gap(z);
  const double eps_target = cfg.get_double("epsilon", 0.1);
  const double delta_target = cfg.get_double("delta", 0.1);
  const VandermondeConditioning vc = vandermonde_conditioning(z);

  {
    BoundReport b;
    b.name = "kappa_bound_general";
    b.params = {{"r", double(r)}, {"Delta", node_gap}};
    if (r >= 1 && node_gap > 0.0 && node_gap <= 2.0) {
      b.predicted = kappa_bound_general(r, node_gap);
      b.observed = vc.kappa;
      b.satisfied = vc.kappa <= b.predicted;
    }
    out.push_back(bound_to_json(b));
  }
  if (ri.family.tag == SignalFamily::Fourier && inst.model.wraparound_gap) {
    // Evaluated at the probe dimension (sample rows of the rectangular
    // Fourier Vandermonde); inadmissible geometries report NaN.
    const double dw = wraparound_gap_of_nodes(z);
    const int rows = ri.r_probe;
    BoundReport b;
    b.name = "kappa_bound_fourier";
    b.params = {{"rows", double(rows)}, {"Delta_w", dw}};
    if (rows > 1.0 / dw + 1.0) {
      b.predicted = kappa_bound_fourier(rows, dw);
      const double kappa_rect = vandermonde_conditioning_rect(z, rows).kappa;
      b.observed = kappa_rect;
      b.satisfied = kappa_rect <= b.predicted;
    } else {
      b.predicted = std::numeric_limits<double>::quiet_NaN();
    }
    out.push_back(bound_to_json(b));
  }
  {
    // Expected eigenvalue shift for the access model's per-entry noise.
    double entry = 0.0;
    for (int t = 0; t <= 2 * ri.r_probe - 1; ++t)
      entry = std::max(entry, access.entry_noise_std(ri.family, t));
    const double e_norm = entrywise_to_operator_norm(r, 3.0 * entry);
    BoundReport b;
    b.name = "gevp_perturbation_bound";
    b.predicted = perturbation_bound(std::max(e_norm, 0.0) + 1e-300, vc.kappa,
                                     vc.sigma_min, inst.expansion.c_min);
    b.params = {{"E_norm", e_norm},
                {"kappa_V", vc.kappa},
                {"sigma_min_V", vc.sigma_min},
                {"c_min", inst.expansion.c_min}};
    out.push_back(bound_to_json(b));
  }
  {
    BoundReport b;
    b.name = "sample_complexity_general";
    b.params = {{"r", double(r)},
                {"Delta", node_gap},
                {"eps1", eps_target},
                {"c_min", inst.expansion.c_min},
                {"delta", delta_target}};
    if (node_gap > 0.0)
      b.predicted = sample_complexity_general(r, node_gap, eps_target,
                                              inst.expansion.c_min, delta_target);
    out.push_back(bound_to_json(b));
  }

  CostParams params{{"r", double(r)},
                    {"eps", eps_target},
                    {"delta", delta_target},
                    {"c_min", inst.expansion.c_min},
                    {"alpha_a", inst.model.alpha_a},
                    {"delta_prime", inst.model.normalized_gap},
                    {"kappa_j", inst.model.kappa_j},
                    {"kappa_v", vc.kappa},
                    {"zeta", 0.0},
                    {"alpha_beta", 1.0},
                    {"alpha_fprime", 1.0}};
  if (inst.model.wraparound_gap) params["delta_w"] = *inst.model.wraparound_gap;
  for (CostRegime regime :
       {CostRegime::GeneralSample, CostRegime::GeneralPurified,
        CostRegime::RealSample, CostRegime::RealPurified,
        CostRegime::ComplexSample, CostRegime::ComplexPurified}) {
    const bool real_variant = regime == CostRegime::RealSample ||
                              regime == CostRegime::RealPurified;
    if (real_variant && !inst.model.spectrum_is_real(1e-9 * inst.model.alpha_a))
      continue;
    Json j;
    j["name"] = std::string("query_cost_model/") + to_string(regime);
    const QueryCost qc = query_cost_model(regime, params);
    j["max_coherent_queries"] = qc.max_coherent_queries;
    j["sample_count"] = qc.sample_count;
    j["total_queries"] = qc.total_queries;
    j["note"] = "scaling model; leading constants set to 1";
    out.push_back(j);
  }
  return out;
}

Json instance_to_json(const ResolvedInstance& ri) {
  const Instance& inst = ri.instance;
  Json j;
  j["source"] = ri.source;
  j["n"] = inst.model.dim();
  j["sparsity"] = inst.expansion.sparsity();
  j["alpha_a"] = inst.model.alpha_a;
  j["kappa_j"] = inst.model.kappa_j;
  j["gap"] = inst.model.gap;
  j["normalized_gap"] = inst.model.normalized_gap;
  if (inst.model.wraparound_gap) j["wraparound_gap"] = *inst.model.wraparound_gap;
  j["c_min"] = inst.expansion.c_min;
  j["support_eigenvalues"] = to_json(inst.support_eigenvalues());
  j["coefficients"] = to_json(inst.expansion.diag_coeffs);
  j["residual_offdiag_norm"] = inst.expansion.residual_offdiag_norm;
  // The expansion comes from the dense eigendecomposition oracle; a physical
  // run has no access to it and cannot certify sparsity or c_min this way.
  j["expansion_oracle"] = "dense eigendecomposition (desk-scale only)";
  return j;
}

Json trial_to_json(int index, const EstimateReport& rep) {
  Json j;
  j["trial"] = index;
  j["z_hat"] = to_json(rep.z_hat);
  j["lambda_hat"] = to_json(rep.lambda_hat);
  j["coefficients"] = to_json(rep.coeffs);
  j["sparsity_estimate"] = rep.sparsity;
  j["cost"] = rep.cost_total;
  j["noise_scale"] = rep.noise_scale;
  if (rep.matched_error) j["matched_error"] = *rep.matched_error;
  if (rep.one_sided_error) j["one_sided_error"] = *rep.one_sided_error;
  if (rep.family.tag == SignalFamily::Power) {
    j["possible_zero"] = rep.possible_zero;
    j["trace_deficit"] = rep.trace_deficit;
    if (rep.possible_zero)
      j["recommendation"] =
          "trace deficit exceeds the noise scale; a zero eigenvalue is "
          "invisible to the power family, re-run with family = exponential";
  }
  return j;
}

std::string csv_path_for(const std::string& out_path) {
  std::filesystem::path p(out_path);
  p.replace_extension(".csv");
  return p.string();
}

}  // namespace

ExperimentConfig apply_overrides(ExperimentConfig cfg, const RunOverrides& ov) {
  if (ov.seed) cfg.set("seed", std::to_string(*ov.seed));
  if (ov.trials) cfg.set("trials", std::to_string(*ov.trials));
  if (ov.threads) cfg.set("threads", std::to_string(*ov.threads));
  if (ov.out) cfg.set("out", *ov.out);
  return cfg;
}

int resolve_threads(const ExperimentConfig& cfg) {
  if (cfg.has("threads"))
    return std::max(1, static_cast<int>(cfg.get_int("threads", 1)));
  if (const char* env = std::getenv("PENCILSPEC_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      raise(ErrorKind::ConfigError,
            std::string("PENCILSPEC_THREADS is not an integer: '") + env + "'");
    }
  }
  return 1;
}

Json run_estimate(const ExperimentConfig& cfg) {
  const std::uint64_t seed = cfg.get_u64("seed", 1);
  const int trials = static_cast<int>(cfg.get_int("trials", 1));
  const int threads = resolve_threads(cfg);
  if (trials < 1) raise(ErrorKind::ConfigError, "trials must be >= 1");

  const ResolvedInstance ri = resolve_instance(cfg, seed);
  const PipelineOptions opts = pipeline_options(cfg, ri.r_probe);
  const CVector truth = ri.instance.support_eigenvalues();

  std::vector<EstimateReport> reports(trials);
  parallel_for(trials, threads, [&](int t) {
    AccessModel access = access_for(cfg, mix64(seed ^ mix64(rngkey::kTrial ^ t)));
    reports[t] = run_pipeline(ri.instance.model, ri.instance.expansion, ri.family,
                              access, opts, truth);
  });

  Json doc;
  doc["kind"] = "estimate";
  doc["config"] = config_echo(cfg);
  doc["instance"] = instance_to_json(ri);
  doc["family"] = to_string(ri.family.tag);
  doc["probe_dimension"] = ri.r_probe;

  Json trials_json = Json::array();
  std::vector<double> errors;
  std::int64_t total_cost = 0;
  for (int t = 0; t < trials; ++t) {
    trials_json.push_back(trial_to_json(t, reports[t]));
    if (reports[t].matched_error) errors.push_back(*reports[t].matched_error);
    total_cost += reports[t].cost_total;
  }
  doc["trials"] = trials_json;
  doc["bounds"] = instance_bounds(ri, access_for(cfg, seed), cfg);

  Json summary;
  if (!errors.empty()) {
    summary["max_matched_error"] = *std::max_element(errors.begin(), errors.end());
    summary["median_matched_error"] = median(errors);
  }
  summary["total_cost"] = total_cost;
  doc["summary"] = summary;
  return doc;
}

Json run_scaling(const ExperimentConfig& cfg) {
  const std::uint64_t seed = cfg.get_u64("seed", 1);
  const int threads = resolve_threads(cfg);
  const int decades = static_cast<int>(cfg.get_int("scaling_decades", 4));
  const int per_point = static_cast<int>(cfg.get_int("scaling_trials", 50));
  if (decades < 1 || per_point < 1)
    raise(ErrorKind::ConfigError, "scaling_decades and scaling_trials must be >= 1");

  ExperimentConfig icfg = cfg;
  if (!icfg.has("r")) icfg.set("r", "2");
  const ResolvedInstance ri = resolve_instance(icfg, seed);
  PipelineOptions opts = pipeline_options(cfg, ri.r_probe);
  // The sweep deliberately includes noise levels at which rank estimation
  // would refuse to proceed; the instance's sparsity is known here.
  opts.fixed_sparsity = ri.instance.expansion.sparsity();
  const CVector truth = ri.instance.support_eigenvalues();

  struct Point {
    std::string mode;
    double knob = 0.0;
    double total_cost = 0.0;
    double median_error = 0.0;
  };
  std::vector<Point> points;

  auto sweep = [&](const std::string& mode, int index, double knob) {
    std::vector<double> errs(per_point);
    std::vector<std::int64_t> costs(per_point);
    parallel_for(per_point, threads, [&](int t) {
      const std::uint64_t s =
          mix64(seed ^ mix64(rngkey::kTrial ^ (1000 * index + t)));
      AccessModel access =
          mode == "hadamard"
              ? AccessModel::hadamard(static_cast<std::int64_t>(knob), s)
              : AccessModel::qae(knob, cfg.get_double("qae_delta", 1e-2), s,
                                 cfg.get_double("qae_const", 1.0));
      const EstimateReport rep = run_pipeline(
          ri.instance.model, ri.instance.expansion, ri.family, access, opts, truth);
      errs[t] = rep.matched_error.value_or(
          std::numeric_limits<double>::quiet_NaN());
      costs[t] = rep.cost_total;
    });
    Point p;
    p.mode = mode;
    p.knob = knob;
    p.total_cost = static_cast<double>(costs[0]);  // deterministic per config
    p.median_error = median(errs);
    points.push_back(p);
  };

  const double shots_min = cfg.get_double("hadamard_shots_min", 100.0);
  for (int d = 0; d <= decades; ++d)
    sweep("hadamard", d, shots_min * std::pow(10.0, d));
  const double eps_max = cfg.get_double("qae_eps_max", 0.1);
  for (int d = 0; d <= decades; ++d)
    sweep("qae", 100 + d, eps_max * std::pow(10.0, -d));

  // Exact floor for reference.
  {
    AccessModel access = AccessModel::exact(seed);
    const EstimateReport rep = run_pipeline(
        ri.instance.model, ri.instance.expansion, ri.family, access, opts, truth);
    Point p;
    p.mode = "exact";
    p.total_cost = static_cast<double>(rep.cost_total);
    p.median_error = rep.matched_error.value_or(0.0);
    points.push_back(p);
  }

  auto slope_of = [&](const std::string& mode) {
    std::vector<double> xs, ys;
    for (const Point& p : points)
      if (p.mode == mode && p.median_error > 0.0) {
        xs.push_back(std::log10(p.total_cost));
        ys.push_back(std::log10(p.median_error));
      }
    if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };

  Json doc;
  doc["kind"] = "scaling";
  doc["config"] = config_echo(cfg);
  doc["instance"] = instance_to_json(ri);
  Json table = Json::array();
  std::string csv = "mode,knob,total_cost,median_error\n";
  for (const Point& p : points) {
    Json row;
    row["mode"] = p.mode;
    row["knob"] = p.knob;
    row["total_cost"] = p.total_cost;
    row["median_error"] = p.median_error;
    table.push_back(row);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g\n", p.mode.c_str(),
                  p.knob, p.total_cost, p.median_error);
    csv += buf;
  }
  doc["table"] = table;
  doc["csv"] = csv;
  doc["slopes"] = Json{{"hadamard", slope_of("hadamard")}, {"qae", slope_of("qae")}};
  return doc;
}

Json run_bounds(const ExperimentConfig& cfg) {
  const std::uint64_t seed = cfg.get_u64("seed", 1);
  const int trials = static_cast<int>(cfg.get_int("bounds_trials", 500));
  const int r_max = static_cast<int>(cfg.get_int("bounds_r_max", 5));
  const int pert_trials = static_cast<int>(cfg.get_int("perturbation_trials", 100));

  Json doc;
  doc["kind"] = "bounds";
  doc["config"] = config_echo(cfg);
  Json checks = Json::array();

  // kappa(V) of random unit-disk nodes against the closed-form bound.
  {
    auto rng = substream(seed, {rngkey::kExperiment, 1});
    std::uniform_int_distribution<int> rdist(1, r_max);
    double worst_ratio = 0.0;
    int violations = 0;
    for (int t = 0; t < trials; ++t) {
      const int r = rdist(rng);
      const CVector z = random_disk_nodes(r, 1e-3, rng);
      const double gap = r > 1 ? min_pairwise_gap(z) : 1.0;
      const double bound = kappa_bound_general(r, std::min(gap, 2.0));
      const double kappa = vandermonde_conditioning(z).kappa;
      worst_ratio = std::max(worst_ratio, kappa / bound);
      if (kappa > bound) ++violations;
    }
    BoundReport b;
    b.name = "kappa_bound_general_monte_carlo";
    b.predicted = 1.0;
    b.observed = worst_ratio;
    b.satisfied = violations == 0;
    b.params = {{"trials", double(trials)}, {"r_max", double(r_max)}};
    checks.push_back(bound_to_json(b));
  }

  // Fourier nodes in the admissible wrap-around regime. The bound speaks
  // about the sample count of a rectangular Fourier Vandermonde (R rows over
  // k nodes with phase gap above 1/(R-1) turns); a square matrix over r
  // nodes always has gap <= 1/r and is out of regime.
  {
    auto rng = substream(seed, {rngkey::kExperiment, 2});
    double worst_ratio = 0.0;
    int violations = 0;
    int accepted = 0;
    for (int t = 0; t < 100 * trials && accepted < trials; ++t) {
      const int rows = 8 + (t % 8);
      const int k = 2 + (t % 3);
      const CVector z = random_disk_nodes(
          k, 2.0 * std::sin(3.14159265358979323846 / (rows - 1)), rng,
          /*on_circle=*/true);
      const double dw = wraparound_gap_of_nodes(z);
      if (!(rows > 1.0 / dw + 1.0)) continue;
      ++accepted;
      const double bound = kappa_bound_fourier(rows, dw);
      const double kappa = vandermonde_conditioning_rect(z, rows).kappa;
      worst_ratio = std::max(worst_ratio, kappa / bound);
      if (kappa > bound) ++violations;
    }
    BoundReport b;
    b.name = "kappa_bound_fourier_monte_carlo";
    b.predicted = 1.0;
    b.observed = worst_ratio;
    b.satisfied = violations == 0 && accepted > 0;
    b.params = {{"accepted_trials", double(accepted)}};
    checks.push_back(bound_to_json(b));
  }

  // Explicit Vandermonde inverse against the numeric inverse.
  {
    auto rng = substream(seed, {rngkey::kExperiment, 3});
    std::uniform_int_distribution<int> rdist(1, r_max);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const int r = rdist(rng);
      const CVector z = random_disk_nodes(r, 0.3, rng);
      const CMatrix w = vandermonde_inverse_explicit(z);
      const CMatrix v = vandermonde_matrix(z);
      worst = std::max(worst, (v * w - CMatrix::Identity(r, r)).cwiseAbs().maxCoeff());
    }
    BoundReport b;
    b.name = "vandermonde_inverse_explicit_residual";
    b.predicted = 1e-8;
    b.observed = worst;
    b.satisfied = worst <= 1e-8;
    b.params = {{"trials", double(trials)}, {"min_gap", 0.3}};
    checks.push_back(bound_to_json(b));
  }

  // ||V^-1||_F against sqrt(r * binom(2(r-1), r-1)) / Delta^(r-1).
  {
    auto rng = substream(seed, {rngkey::kExperiment, 4});
    std::uniform_int_distribution<int> rdist(1, r_max);
    int violations = 0;
    for (int t = 0; t < trials; ++t) {
      const int r = rdist(rng);
      const CVector z = random_disk_nodes(r, 0.05, rng);
      const double gap = r > 1 ? min_pairwise_gap(z) : 1.0;
      double binom = 1.0;
      for (int k = 1; k <= r - 1; ++k)
        binom *= static_cast<double>(r - 1 + k) / k;
      const double bound =
          std::sqrt(r * binom) / std::pow(gap, r - 1);
      const double frob = vandermonde_inverse_explicit(z).norm();
      if (frob > bound * (1.0 + 1e-12)) ++violations;
    }
    BoundReport b;
    b.name = "vandermonde_inverse_frobenius_bound";
    b.predicted = 0.0;
    b.observed = double(violations);
    b.satisfied = violations == 0;
    b.params = {{"trials", double(trials)}};
    checks.push_back(bound_to_json(b));
  }

  // GEVP shift under controlled Hankel perturbations vs the first-order
  // bound (x2 margin), general and Fourier variants.
  for (const bool fourier : {false, true}) {
    auto rng = substream(seed, {rngkey::kExperiment, fourier ? 6u : 5u});
    double worst_ratio = 0.0;
    int violations = 0;
    for (const double e_norm : {1e-8, 1e-6}) {
      for (const int r : {2, 3}) {
        const CVector z = random_disk_nodes(r, 0.5, rng, fourier);
        CVector c(r);
        std::uniform_real_distribution<double> cd(0.3, 1.0);
        for (int i = 0; i < r; ++i) c(i) = cd(rng);
        c /= c.sum();
        SignalSeries series;
        series.family = FamilySpec{};
        series.values.resize(4 * r);
        for (int t = 0; t < 4 * r; ++t) {
          Complex g = 0.0;
          for (int i = 0; i < r; ++i) g += c(i) * std::pow(z(i), t);
          series.values(t) = g;
        }
        const HankelPair pair = build_hankel_pair(series, r);
        const CVector ideal = solve_gevp(pair);
        const VandermondeConditioning vc = vandermonde_conditioning(z);
        const double c_min = c.cwiseAbs().minCoeff();
        const double bound =
            fourier
                ? fourier_perturbation_bound(e_norm, vc.kappa, r, c_min)
                : perturbation_bound(e_norm, vc.kappa, vc.sigma_min, c_min);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int t = 0; t < pert_trials; ++t) {
          HankelPair noisy = pair;
          for (CMatrix* h : {&noisy.h0, &noisy.h1}) {
            CMatrix e(r, r);
            for (int i = 0; i < r; ++i)
              for (int j = 0; j < r; ++j)
                e(i, j) = Complex(gauss(rng), gauss(rng));
            *h += (e_norm / operator_norm(e)) * e;
          }
          const CVector shifted = solve_gevp(noisy);
          const double shift = match_eigenvalues(shifted, ideal).one_sided_error;
          worst_ratio = std::max(worst_ratio, shift / bound);
          if (shift > 2.0 * bound) ++violations;
        }
      }
    }
    BoundReport b;
    b.name = fourier ? "fourier_perturbation_bound_monte_carlo"
                     : "gevp_perturbation_bound_monte_carlo";
    b.predicted = 2.0;
    b.observed = worst_ratio;
    b.satisfied = violations == 0;
    b.params = {{"perturbations_per_case", double(pert_trials)}};
    checks.push_back(bound_to_json(b));
  }

  // Matrix-Bernstein tail frequencies.
  {
    const int r = static_cast<int>(cfg.get_int("bernstein_r", 3));
    const std::int64_t m = cfg.get_int("bernstein_m", 1000);
    const int btrials = static_cast<int>(cfg.get_int("bernstein_trials", 1000));
    auto rng = substream(seed, {rngkey::kExperiment, 7});
    // A fixed r-mode signal normalized into [-1,1] supplies the means.
    const CVector z = random_disk_nodes(r, 0.3, rng);
    std::vector<double> re(2 * r - 1), im(2 * r - 1);
    for (int t = 0; t < 2 * r - 1; ++t) {
      Complex g = 0.0;
      for (int i = 0; i < r; ++i) g += std::pow(z(i), t) / double(r);
      re[t] = std::clamp(g.real(), -1.0, 1.0);
      im[t] = std::clamp(g.imag(), -1.0, 1.0);
    }
    std::vector<double> norms(btrials);
    for (int trial = 0; trial < btrials; ++trial) {
      // Sum over i of Z_i has entry S_{j+k}; each anti-diagonal aggregates m
      // centered +-1 draws, which is a shifted binomial.
      CMatrix sum(r, r);
      std::vector<Complex> s(2 * r - 1);
      for (int t = 0; t < 2 * r - 1; ++t) {
        std::binomial_distribution<std::int64_t> bre(m, 0.5 * (1.0 + re[t]));
        std::binomial_distribution<std::int64_t> bim(m, 0.5 * (1.0 + im[t]));
        const double sx = double(2 * bre(rng) - m) - double(m) * re[t];
        const double sy = double(2 * bim(rng) - m) - double(m) * im[t];
        s[t] = Complex(sx, sy);
      }
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) sum(j, k) = s[j + k];
      norms[trial] = operator_norm(sum);
    }
    std::sort(norms.begin(), norms.end());
    Json gamma_rows = Json::array();
    bool ok = true;
    double max_excess = 0.0;
    for (int gi = 1; gi <= 12; ++gi) {
      const double gamma = gi * std::sqrt(2.0 * r * double(m)) / 2.0;
      const double tail = bernstein_tail(r, m, gamma);
      const auto it = std::lower_bound(norms.begin(), norms.end(), gamma);
      const double freq =
          double(norms.end() - it) / double(btrials);
      Json row;
      row["gamma"] = gamma;
      row["bound"] = std::min(tail, 1.0);
      row["observed_frequency"] = freq;
      gamma_rows.push_back(row);
      if (freq > tail) ok = false;
      max_excess = std::max(max_excess, freq - tail);
    }
    Json j;
    j["name"] = "matrix_bernstein_tail_monte_carlo";
    j["rows"] = gamma_rows;
    j["satisfied"] = ok;
    j["params"] = Json{{"r", r}, {"m", m}, {"trials", btrials}};
    checks.push_back(j);
  }

  // Monotonicity probes of the bound evaluators.
  {
    bool ok = true;
    ok &= sample_complexity_general(2, 0.5, 0.05, 0.3, 0.1) >
          sample_complexity_general(2, 0.5, 0.1, 0.3, 0.1);
    ok &= sample_complexity_general(2, 0.25, 0.1, 0.3, 0.1) >
          sample_complexity_general(2, 0.5, 0.1, 0.3, 0.1);
    ok &= sample_complexity_general(2, 0.5, 0.1, 0.15, 0.1) >
          sample_complexity_general(2, 0.5, 0.1, 0.3, 0.1);
    ok &= kappa_bound_general(3, 0.2) > kappa_bound_general(3, 0.4);
    ok &= bernstein_tail(3, 1000, 200.0) > bernstein_tail(3, 1000, 400.0);
    BoundReport b;
    b.name = "bound_monotonicity_probes";
    b.predicted = 1.0;
    b.observed = ok ? 1.0 : 0.0;
    b.satisfied = ok;
    checks.push_back(bound_to_json(b));
  }

  // Sweep table: kappa bound across a gap grid at fixed r.
  {
    const int r = static_cast<int>(cfg.get_int("sweep_r", 3));
    const double g0 = cfg.get_double("sweep_gap_min", 0.1);
    const double g1 = cfg.get_double("sweep_gap_max", 1.0);
    const int pts = static_cast<int>(cfg.get_int("sweep_points", 10));
    std::string csv = "r,Delta,kappa_bound,sample_complexity\n";
    Json rows = Json::array();
    for (int i = 0; i < pts; ++i) {
      const double gap = g0 + (g1 - g0) * i / std::max(1, pts - 1);
      const double kb = kappa_bound_general(r, gap);
      const double sc = sample_complexity_general(r, gap, 0.1, 0.3, 0.1);
      Json row;
      row["Delta"] = gap;
      row["kappa_bound"] = kb;
      row["sample_complexity"] = sc;
      rows.push_back(row);
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g\n", r, gap, kb, sc);
      csv += buf;
    }
    doc["sweep"] = rows;
    doc["csv"] = csv;
  }

  doc["checks"] = checks;
  bool all_ok = true;
  for (const auto& c : checks)
    if (c.contains("satisfied") && !c["satisfied"].get<bool>()) all_ok = false;
  doc["all_satisfied"] = all_ok;
  return doc;
}

namespace {

/// Builds the Liouvillian-gap initial state: steady mode plus a spread of
/// low-lying excitations taken from the oracle eigenbasis.
InitialState gap_initial_state(const SpectralModel& model, int excite) {
  // Modes sorted by Re descending puts the steady mode first.
  CVector psi = model.right_vectors.col(0);
  const int extra = std::min(excite, model.dim() - 1);
  for (int k = 1; k <= extra; ++k)
    psi += 0.7 * model.right_vectors.col(k);
  psi /= psi.norm();
  return InitialState::pure_vector(psi);
}

}  // namespace

Json run_liouvillian(const ExperimentConfig& cfg) {
  const std::uint64_t seed = cfg.get_u64("seed", 1);
  LindbladSpec spec;
  if (cfg.has("lindblad_file")) {
    spec = read_lindblad_file(cfg.require_string("lindblad_file"));
  } else {
    spec = damped_qubit_spec(cfg.get_double("lindblad_gamma", 1.0));
  }
  const CMatrix gen = vectorize_lindblad(spec);

  // Cross-check the vectorization against the direct master equation on a
  // handful of random density matrices.
  double worst_vec_residual = 0.0;
  {
    auto rng = substream(seed, {rngkey::kExperiment, 11});
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int dim = spec.hilbert_dim();
    for (int t = 0; t < 10; ++t) {
      CMatrix g(dim, dim);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
      CMatrix rho = g * g.adjoint();
      rho /= rho.trace().real();
      const CVector lhs = gen * vec_row_major(rho);
      const CVector rhs = vec_row_major(apply_lindblad(spec, rho));
      worst_vec_residual = std::max(worst_vec_residual, (lhs - rhs).norm());
    }
  }

  EigOptions opts;
  const SpectralModel model = eig_decompose(gen, opts);
  const int excite = static_cast<int>(cfg.get_int("excite_modes", 3));
  const InitialState state = gap_initial_state(model, excite);
  const int r_probe = static_cast<int>(
      cfg.get_int("R", std::min<std::int64_t>(model.dim(), excite + 2)));
  const SparseExpansion exp =
      expand_initial_state(state, model, r_probe, /*drop_tol=*/1e-10);

  FamilySpec family;
  family.tag = SignalFamily::Exponential;
  family.alpha_a = model.alpha_a;

  AccessModel access = access_for(cfg, seed);
  const PipelineOptions popts = pipeline_options(cfg, r_probe);
  const EstimateReport rep = run_pipeline(model, exp, family, access, popts,
                                          exp.support_eigenvalues(model));

  // Error scale: numerical floor for exact access, otherwise the first-order
  // perturbation bound at the instance's parameters.
  double err_scale = 1e-9 * model.alpha_a;
  if (access.mode != AccessModel::Mode::Exact) {
    const CVector z = [&]() {
      const CVector lam = exp.support_eigenvalues(model);
      CVector out(lam.size());
      for (int i = 0; i < lam.size(); ++i) out(i) = family.kernel(lam(i), 1);
      return out;
    }();
    const VandermondeConditioning vc = vandermonde_conditioning(z);
    double entry = 0.0;
    for (int t = 0; t < 2 * r_probe; ++t)
      entry = std::max(entry, access.entry_noise_std(family, t));
    const double e_norm = entrywise_to_operator_norm(exp.sparsity(), 3.0 * entry);
    err_scale = model.alpha_a *
                perturbation_bound(e_norm + 1e-300, vc.kappa, vc.sigma_min,
                                   std::max(exp.c_min, 1e-12));
  }
  const double zero_tol = 3.0 * err_scale;
  const double gap = liouvillian_gap(rep, zero_tol);

  Json doc;
  doc["kind"] = "liouvillian";
  doc["config"] = config_echo(cfg);
  doc["lindblad_spec"] = format_lindblad_spec(spec);
  doc["vectorized_dim"] = gen.rows();
  doc["vec_crosscheck_residual"] = worst_vec_residual;
  doc["oracle_spectrum"] = to_json(model.eigenvalues);
  doc["support_eigenvalues"] = to_json(exp.support_eigenvalues(model));
  doc["trial"] = trial_to_json(0, rep);
  doc["zero_tol"] = zero_tol;
  doc["gap"] = gap;
  return doc;
}

Json run_abscissa(const ExperimentConfig& cfg) {
  const std::uint64_t seed = cfg.get_u64("seed", 1);
  const ResolvedInstance ri = [&]() {
    ExperimentConfig c = cfg;
    c.set("family", "power");
    return resolve_instance(c, seed);
  }();
  const PipelineOptions opts = pipeline_options(cfg, ri.r_probe);
  AccessModel access = access_for(cfg, seed);

  const EstimateReport power_rep =
      run_pipeline(ri.instance.model, ri.instance.expansion, ri.family, access,
                   opts, ri.instance.support_eigenvalues());

  double err_scale = 1e-8 * ri.instance.model.alpha_a;
  if (access.mode != AccessModel::Mode::Exact) {
    const CVector z = support_nodes(ri.instance, ri.family);
    const VandermondeConditioning vc = vandermonde_conditioning(z);
    double entry = 0.0;
    for (int t = 0; t < 2 * ri.r_probe; ++t)
      entry = std::max(entry, access.entry_noise_std(ri.family, t));
    err_scale = perturbation_bound(
        entrywise_to_operator_norm(power_rep.sparsity, 3.0 * entry) + 1e-300,
        vc.kappa, vc.sigma_min, std::max(ri.instance.expansion.c_min, 1e-12));
  }

  std::optional<EstimateReport> rerun;
  const bool zero_test = cfg.get_bool("zero_test", true);
  Json rerun_json;
  if (zero_test) {
    // The re-run probes for a persistent constant mode with the Exponential
    // family. Default state: maximally mixed, which overlaps every mode.
    if (!ri.instance.model.spectrum_nonpositive_real_part(err_scale)) {
      rerun_json["skipped"] =
          "spectrum has Re(lambda) > 0; exponential family inapplicable";
    } else {
      const int n = ri.instance.model.dim();
      InitialState zstate =
          cfg.has("zero_state_file")
              ? read_state_file(cfg.require_string("zero_state_file"))
              : InitialState::density_matrix(CMatrix::Identity(n, n) /
                                             static_cast<double>(n));
      const int zprobe = std::min(n, ri.r_probe + 2);
      const SparseExpansion zexp =
          expand_initial_state(zstate, ri.instance.model, zprobe, 1e-10);
      FamilySpec efam;
      efam.tag = SignalFamily::Exponential;
      efam.alpha_a = ri.instance.model.alpha_a;
      AccessModel zaccess = access_for(cfg, mix64(seed ^ 0x7e57));
      PipelineOptions zopts = opts;
      zopts.r_probe = zprobe;
      rerun = run_pipeline(ri.instance.model, zexp, efam, zaccess, zopts);
      rerun_json = trial_to_json(1, *rerun);
    }
  }

  const StabilityVerdict verdict = spectral_abscissa(power_rep, err_scale, rerun);

  Json doc;
  doc["kind"] = "abscissa";
  doc["config"] = config_echo(cfg);
  doc["instance"] = instance_to_json(ri);
  doc["trial"] = trial_to_json(0, power_rep);
  if (!rerun_json.is_null()) doc["zero_test"] = rerun_json;
  doc["error_scale"] = err_scale;
  doc["abscissa"] = verdict.abscissa;
  doc["classification"] = to_string(verdict.classification);
  doc["margin"] = verdict.margin;
  doc["zero_mode_found"] = verdict.zero_mode_found;
  return doc;
}

void write_report(const Json& report, const std::string& out_path) {
  if (out_path.empty())
    raise(ErrorKind::ConfigError, "no output path given (config 'out' or --out)");
  std::ofstream out(out_path);
  if (!out)
    raise(ErrorKind::ConfigError, "cannot write report to '" + out_path + "'");
  out << report.dump(2) << "\n";
  if (report.contains("csv")) {
    const std::string csv_path = csv_path_for(out_path);
    std::ofstream csv(csv_path);
    if (!csv)
      raise(ErrorKind::ConfigError, "cannot write table to '" + csv_path + "'");
    csv << report["csv"].get<std::string>();
  }
}

}  // namespace pencilspec
