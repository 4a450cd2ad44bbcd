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

#include "pencilspec/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "pencilspec/bounds.hpp"
#include "pencilspec/chebyshev.hpp"
#include "pencilspec/generator.hpp"
#include "pencilspec/lindblad.hpp"
#include "pencilspec/pencil.hpp"
#include "pencilspec/stability.hpp"

namespace pencilspec {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double min_gap_of(const CVector& z) {
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < z.size(); ++i)
    for (int j = i + 1; j < z.size(); ++j)
      gap = std::min(gap, std::abs(z(i) - z(j)));
  return std::isfinite(gap) ? gap : 1.0;
}

// ---------------------------------------------------------------------------
// 1. Exact recovery on 200 random instances (N <= 16, r <= 4, Delta' >= 0.1,
//    c_min >= 0.05): matched error <= 1e-7 in every trial.
CriterionResult exact_recovery(std::uint64_t seed) {
  CriterionResult res;
  res.name = "exact_recovery_power_family";
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    auto rng = substream(seed, {1, static_cast<std::uint64_t>(i)});
    std::uniform_int_distribution<int> rdist(1, 4);
    InstanceSpec spec;
    spec.r = rdist(rng);
    std::uniform_int_distribution<int> ndist(spec.r, 16);
    spec.n = ndist(rng);
    spec.spectrum = SpectrumKind::Complex;
    spec.min_normalized_gap = 0.1;
    spec.min_c_min = 0.05;
    spec.nonnormality = 0.3;
    const Instance inst = generate_instance(spec, rng);

    FamilySpec family;
    family.alpha_a = inst.model.alpha_a;
    PipelineOptions opts;
    opts.r_probe = 2 * spec.r;
    const EstimateReport rep =
        run_pipeline(inst.model, inst.expansion, family,
                     AccessModel::exact(seed + i), opts,
                     inst.support_eigenvalues());
    const bool ok = rep.sparsity == spec.r &&
                    rep.matched_error.value_or(1.0) <= 1e-7;
    if (!ok) ++failures;
    worst = std::max(worst, rep.matched_error.value_or(1.0));
  }
  res.passed = failures == 0;
  res.detail = "200 instances, worst matched error " + fmt(worst) +
               (failures ? ", " + std::to_string(failures) + " failures" : "");
  return res;
}

// ---------------------------------------------------------------------------
// 2. Heisenberg scaling on a fixed r = 2 instance: log-log slope of median
//    error vs total cost, -1.0 +- 0.15 for amplitude estimation and
//    -0.5 +- 0.1 for Hadamard shots, >= 4 decades, >= 50 trials per point.
CriterionResult heisenberg_scaling(std::uint64_t seed) {
  CriterionResult res;
  res.name = "heisenberg_scaling_slopes";

  auto rng = substream(seed, {2});
  InstanceSpec spec;
  spec.n = 6;
  spec.r = 2;
  spec.spectrum = SpectrumKind::Complex;
  spec.min_normalized_gap = 0.35;
  spec.min_c_min = 0.3;
  spec.nonnormality = 0.2;
  spec.radius = 0.8;
  const Instance inst = generate_instance(spec, rng);
  FamilySpec family;
  family.alpha_a = inst.model.alpha_a;
  PipelineOptions opts;
  opts.r_probe = 2;
  opts.fixed_sparsity = 2;
  const CVector truth = inst.support_eigenvalues();
  const int trials = 50;

  auto run_point = [&](const AccessModel& proto, int point) {
    std::vector<double> errs(trials);
    std::int64_t cost = 0;
    for (int t = 0; t < trials; ++t) {
      AccessModel access = proto;
      access.seed = mix64(seed ^ mix64(0x5ca1e ^ (point * 1000 + t)));
      const EstimateReport rep =
          run_pipeline(inst.model, inst.expansion, family, access, opts, truth);
      errs[t] = rep.matched_error.value_or(1.0);
      cost = rep.cost_total;
    }
    return std::pair<double, double>(static_cast<double>(cost), median(errs));
  };

  std::vector<double> hx, hy;
  for (int d = 0; d <= 4; ++d) {
    const std::int64_t shots = static_cast<std::int64_t>(1e4 * std::pow(10.0, d));
    const auto [cost, err] = run_point(AccessModel::hadamard(shots, 0), d);
    hx.push_back(std::log10(cost));
    hy.push_back(std::log10(err));
  }
  std::vector<double> qx, qy;
  for (int d = 0; d <= 4; ++d) {
    const double eps = 1e-2 * std::pow(10.0, -d);
    const auto [cost, err] = run_point(AccessModel::qae(eps, 1e-4, 0), 100 + d);
    qx.push_back(std::log10(cost));
    qy.push_back(std::log10(err));
  }
  const double h_slope = fit_slope(hx, hy);
  const double q_slope = fit_slope(qx, qy);
  res.passed = std::abs(h_slope + 0.5) <= 0.1 && std::abs(q_slope + 1.0) <= 0.15;
  res.detail = "hadamard slope " + fmt(h_slope) + " (target -0.5 +- 0.1), qae slope " +
               fmt(q_slope) + " (target -1.0 +- 0.15)";
  return res;
}

// ---------------------------------------------------------------------------
// 3. Perturbation bounds never violated: ||E|| in {1e-8, 1e-6}, 100 random
//    perturbations each on r in {2,3}; shift <= 2x the first-order bound;
//    Fourier node sets additionally against the Fourier-mode bound.
CriterionResult perturbation_bounds(std::uint64_t seed) {
  CriterionResult res;
  res.name = "gevp_perturbation_bounds";
  double worst_ratio = 0.0;
  int violations = 0;

  for (const bool fourier : {false, true}) {
    auto rng = substream(seed, {3, fourier ? 1u : 0u});
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> cdist(0.3, 1.0);
    for (const double e_norm : {1e-8, 1e-6}) {
      for (const int r : {2, 3}) {
        const CVector z = random_disk_nodes(r, 0.5, rng, fourier);
        CVector c(r);
        for (int i = 0; i < r; ++i) c(i) = cdist(rng);
        c /= c.sum();
        SignalSeries series;
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
            fourier ? fourier_perturbation_bound(e_norm, vc.kappa, r, c_min)
                    : perturbation_bound(e_norm, vc.kappa, vc.sigma_min, c_min);
        for (int t = 0; t < 100; ++t) {
          HankelPair noisy = pair;
          for (CMatrix* h : {&noisy.h0, &noisy.h1}) {
            CMatrix e(r, r);
            for (int i = 0; i < r; ++i)
              for (int j = 0; j < r; ++j) e(i, j) = Complex(gauss(rng), gauss(rng));
            *h += (e_norm / operator_norm(e)) * e;
          }
          const double shift =
              match_eigenvalues(solve_gevp(noisy), ideal).one_sided_error;
          worst_ratio = std::max(worst_ratio, shift / bound);
          if (shift > 2.0 * bound) ++violations;
        }
      }
    }
  }
  res.passed = violations == 0;
  res.detail = "worst shift/bound ratio " + fmt(worst_ratio) + " (limit 2)" +
               (violations ? ", " + std::to_string(violations) + " violations" : "");
  return res;
}

// ---------------------------------------------------------------------------
// 4. Conditioning bounds: kappa(V) <= closed-form bound on 500 random
//    unit-disk node sets (r <= 5); Fourier node sets in the admissible regime
//    against the wrap-around bound; explicit inverse to 1e-8.
CriterionResult conditioning_bounds(std::uint64_t seed) {
  CriterionResult res;
  res.name = "vandermonde_conditioning_bounds";
  auto rng = substream(seed, {4});
  std::uniform_int_distribution<int> rdist(1, 5);
  int kappa_viol = 0;
  double worst_ratio = 0.0;
  for (int t = 0; t < 500; ++t) {
    const int r = rdist(rng);
    const CVector z = random_disk_nodes(r, 1e-3, rng);
    const double gap = r > 1 ? min_gap_of(z) : 1.0;
    const double bound = kappa_bound_general(r, std::min(gap, 2.0));
    const double kappa = vandermonde_conditioning(z).kappa;
    worst_ratio = std::max(worst_ratio, kappa / bound);
    if (kappa > bound) ++kappa_viol;
  }

  // The wrap-around bound is about the sample count of a (generally
  // rectangular) Fourier Vandermonde: R rows over k nodes whose phase gap
  // (in turns) exceeds 1/(R-1). A square matrix over r nodes always has
  // gap <= 1/r, so the admissible regime needs R > number of nodes.
  int fourier_viol = 0;
  int fourier_cases = 0;
  double worst_fourier_ratio = 0.0;
  for (int t = 0; fourier_cases < 100 && t < 100000; ++t) {
    const int rows = 9 + (t % 8);
    const int k = 2 + (t % 3);
    const CVector z =
        random_disk_nodes(k, 2.0 * std::sin(3.14159265358979323846 / (rows - 1)),
                          rng, /*on_circle=*/true);
    const double dw = wraparound_gap_of_nodes(z);
    if (!(rows > 1.0 / dw + 1.0)) continue;
    ++fourier_cases;
    const double kappa = vandermonde_conditioning_rect(z, rows).kappa;
    const double bound = kappa_bound_fourier(rows, dw);
    worst_fourier_ratio = std::max(worst_fourier_ratio, kappa / bound);
    if (kappa > bound) ++fourier_viol;
  }

  double worst_inverse = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int r = rdist(rng);
    const CVector z = random_disk_nodes(r, 0.3, rng);
    const CMatrix w = vandermonde_inverse_explicit(z);
    CMatrix numeric = vandermonde_matrix(z).partialPivLu().inverse();
    worst_inverse = std::max(worst_inverse, (w - numeric).cwiseAbs().maxCoeff());
  }

  res.passed = kappa_viol == 0 && fourier_cases == 100 && fourier_viol == 0 &&
               worst_inverse <= 1e-8;
  res.detail = "worst kappa/bound " + fmt(worst_ratio) + ", worst fourier ratio " +
               fmt(worst_fourier_ratio) + " over " + std::to_string(fourier_cases) +
               " cases, explicit-inverse residual " + fmt(worst_inverse);
  return res;
}

// ---------------------------------------------------------------------------
// 5. Sample complexity: with m from the closed-form formula (unit constant),
//    eps1 is met in >= 1-delta of 200 end-to-end trials on an r=2 instance.
//    A calibrated constant (smallest power of 10 still passing) is reported.
CriterionResult sample_complexity(std::uint64_t seed) {
  CriterionResult res;
  res.name = "sample_complexity_end_to_end";

  Instance inst;
  for (int attempt = 0;; ++attempt) {
    auto rng = substream(seed, {5, static_cast<std::uint64_t>(attempt)});
    InstanceSpec spec;
    spec.n = 6;
    spec.r = 2;
    spec.spectrum = SpectrumKind::Complex;
    spec.min_normalized_gap = 0.35;
    spec.min_c_min = 0.3;
    spec.nonnormality = 0.15;
    spec.radius = 0.55;
    inst = generate_instance(spec, rng);
    // The sampling model matches the analysis when the signals are
    // sub-unit, i.e. alpha_A <= 1.
    if (inst.model.alpha_a <= 1.0) break;
    if (attempt > 50) {
      res.detail = "could not build an alpha_A <= 1 instance";
      return res;
    }
  }
  const double eps1 = 0.1;
  const double delta = 0.1;
  const CVector truth = inst.support_eigenvalues();
  const double gap = min_gap_of(truth);  // power family: z = lambda
  const double c_min = inst.expansion.c_min;

  FamilySpec family;
  family.alpha_a = inst.model.alpha_a;
  PipelineOptions opts;
  opts.r_probe = 2;
  opts.fixed_sparsity = 2;

  auto success_rate = [&](double constant, std::uint64_t salt) {
    const double m_d = sample_complexity_general(2, gap, eps1, c_min, delta, constant);
    const std::int64_t m = static_cast<std::int64_t>(
        std::min(m_d, 9.0e15));
    int ok = 0;
    for (int t = 0; t < 200; ++t) {
      AccessModel access =
          AccessModel::hadamard(m, mix64(seed ^ mix64(salt ^ (7777 + t))));
      const EstimateReport rep =
          run_pipeline(inst.model, inst.expansion, family, access, opts, truth);
      if (rep.matched_error.value_or(1.0) <= eps1) ++ok;
    }
    return std::pair<int, std::int64_t>(ok, m);
  };

  const auto [ok_unit, m_unit] = success_rate(1.0, 0);
  const bool unit_passes = ok_unit >= 180;

  // Calibration sweep downward in decades; report the smallest constant that
  // still meets the success target.
  double calibrated = 1.0;
  for (double c = 1e-2; c >= 1e-14; c *= 1e-2) {
    const auto [ok, m] = success_rate(c, static_cast<std::uint64_t>(-std::log10(c)));
    if (ok >= 180)
      calibrated = c;
    else
      break;
  }

  res.passed = unit_passes;
  res.detail = "unit-constant m = " + std::to_string(m_unit) + ", successes " +
               std::to_string(ok_unit) + "/200 (need 180); calibrated constant " +
               fmt(calibrated);
  return res;
}

// ---------------------------------------------------------------------------
// 6. Approximation: Chebyshev truncation of e^{-2 pi i x t} meets requested
//    tolerances down to 1e-10; generating-function residual decays
//    geometrically; truncated-series signal path matches exact signals.
CriterionResult approximation(std::uint64_t seed) {
  CriterionResult res;
  res.name = "chebyshev_faber_approximation";
  std::ostringstream detail;

  bool tol_ok = true;
  for (const double eps2 : {1e-4, 1e-7, 1e-10}) {
    for (int t = 0; t <= 5; ++t) {
      const int d = truncation_order(SignalFamily::Fourier, t, eps2);
      const double resid =
          kernel_series_residual(chebyshev_coeffs(SignalFamily::Fourier, t, d),
                                 SignalFamily::Fourier, t);
      if (resid > eps2) tol_ok = false;
    }
  }

  const double res20 = generating_function_residual(0.7, 0.5, 20);
  const double res40 = generating_function_residual(0.7, 0.5, 40);
  const double res60 = generating_function_residual(0.7, 0.5, 60);
  // Tail of a geometric series: each 20 extra orders gain about 0.5^20.
  const bool geo_ok = res40 <= res20 * std::pow(0.5, 18) && res60 <= 1e-12;

  // Signal path: Fourier signals through the truncated matrix series agree
  // with the spectral route to eps2.
  const double eps2 = 1e-8;
  double worst_signal = 0.0;
  bool signal_ok = true;
  for (int i = 0; i < 50; ++i) {
    auto rng = substream(seed, {6, static_cast<std::uint64_t>(i)});
    InstanceSpec spec;
    spec.n = 5;
    spec.r = 2;
    spec.spectrum = SpectrumKind::Real;
    spec.min_normalized_gap = 0.05;
    spec.min_c_min = 0.2;
    spec.nonnormality = 0.25;
    spec.fourier_margin = true;  // spectrum of A/alpha inside [-1/2, 1/2]
    const Instance inst = generate_instance(spec, rng);
    FamilySpec family;
    family.tag = SignalFamily::Fourier;
    family.alpha_a = inst.model.alpha_a;
    const int r_probe = 2;
    const SignalSeries exact = ideal_signal(inst.model, inst.expansion, family, r_probe);
    const CMatrix a_norm = inst.a / inst.model.alpha_a;
    const CMatrix rho = inst.state.density();
    for (int t = 0; t < exact.length(); ++t) {
      const double scalar_tol = eps2 / (2.0 * std::max(1.0, inst.model.kappa_j));
      const int d = truncation_order(SignalFamily::Fourier, t, scalar_tol, 0.0,
                                     inst.model.kappa_j);
      const CMatrix f = eval_series_matrix(chebyshev_coeffs(SignalFamily::Fourier, t, d),
                                           a_norm);
      const Complex via_series = (rho * f).trace();
      worst_signal = std::max(worst_signal, std::abs(via_series - exact.values(t)));
    }
  }
  signal_ok = worst_signal <= eps2;

  res.passed = tol_ok && geo_ok && signal_ok;
  detail << "sup-norm tolerances " << (tol_ok ? "met" : "MISSED")
         << "; generating-function decay ratios " << fmt(res40 / res20) << "/"
         << fmt(res60) << "; worst signal-path deviation " << fmt(worst_signal)
         << " (limit " << fmt(eps2) << ")";
  res.detail = detail.str();
  return res;
}

// ---------------------------------------------------------------------------
// 7. Applications: damped-qubit spectrum and gap; vectorization cross-check;
//    triangular abscissa; zero eigenvalue missed by the power family and
//    caught by the exponential re-run.
CriterionResult applications(std::uint64_t seed) {
  CriterionResult res;
  res.name = "applications_lindblad_stability";
  std::ostringstream detail;
  bool ok = true;

  // Damped qubit, exact access.
  const double gamma = 1.3;
  const LindbladSpec spec = damped_qubit_spec(gamma);
  const CMatrix gen = vectorize_lindblad(spec);
  const SpectralModel model = eig_decompose(gen);
  CVector truth(4);
  truth << Complex(0, 0), Complex(-gamma / 2, 0), Complex(-gamma / 2, 0),
      Complex(-gamma, 0);
  // Every true mode must be hit by the oracle spectrum.
  for (int j = 0; j < truth.size(); ++j) {
    double best = 1e300;
    for (int i = 0; i < model.eigenvalues.size(); ++i)
      best = std::min(best, std::abs(model.eigenvalues(i) - truth(j)));
    if (best > 1e-10) ok = false;
  }

  CVector psi = model.right_vectors.col(0) + 0.8 * model.right_vectors.col(1) +
                0.6 * model.right_vectors.col(3);
  psi /= psi.norm();
  const InitialState state = InitialState::pure_vector(psi);
  const SparseExpansion exp = expand_initial_state(state, model, 4, 1e-10);
  FamilySpec family;
  family.tag = SignalFamily::Exponential;
  family.alpha_a = model.alpha_a;
  PipelineOptions opts;
  opts.r_probe = std::max(3, exp.sparsity());

  const EstimateReport exact_rep =
      run_pipeline(model, exp, family, AccessModel::exact(seed), opts,
                   exp.support_eigenvalues(model));
  const double exact_gap = liouvillian_gap(exact_rep, 3e-9 * model.alpha_a);
  const double gap_err_exact = std::abs(exact_gap - gamma / 2);
  if (gap_err_exact > 1e-8) ok = false;
  // Recovered estimates must cover the full multiset of true eigenvalues.
  double cover = 0.0;
  for (int j = 0; j < truth.size(); ++j) {
    double best = 1e300;
    for (int i = 0; i < exact_rep.lambda_hat.size(); ++i)
      best = std::min(best, std::abs(exact_rep.lambda_hat(i) - truth(j)));
    cover = std::max(cover, best);
  }
  if (cover > 1e-8) ok = false;

  // Sampled access to a requested accuracy. The closed-form noise bound is
  // orders of magnitude conservative here, so the budget comes from a pilot:
  // measure the error at a pilot shot count, then scale by the 1/sqrt(m) law
  // with a 4x margin.
  const double eps_req = 0.02 * gamma;
  {
    const std::int64_t m_pilot = 1000000;
    std::vector<double> pilot_errs;
    for (int t = 0; t < 12; ++t) {
      PipelineOptions popts = opts;
      popts.fixed_sparsity = exp.sparsity();
      const EstimateReport rep = run_pipeline(
          model, exp, family,
          AccessModel::hadamard(m_pilot, mix64(seed ^ (0xbeef0 + t))), popts,
          exp.support_eigenvalues(model));
      pilot_errs.push_back(rep.matched_error.value_or(1.0));
    }
    const double e_pilot = std::max(median(pilot_errs), 1e-12);
    const double blowup = 4.0 * e_pilot / eps_req;
    const std::int64_t shots = static_cast<std::int64_t>(std::min(
        9.0e15,
        std::ceil(static_cast<double>(m_pilot) * std::max(1.0, blowup * blowup))));
    int hits = 0;
    for (int t = 0; t < 10; ++t) {
      const EstimateReport rep = run_pipeline(
          model, exp, family,
          AccessModel::hadamard(shots, mix64(seed ^ (0xda0 + t))), opts,
          exp.support_eigenvalues(model));
      const double g = liouvillian_gap(rep, 3.0 * eps_req);
      if (std::abs(g - gamma / 2) <= eps_req) ++hits;
    }
    if (hits < 9) ok = false;
    detail << "gap exact err " << fmt(gap_err_exact) << ", sampled hits " << hits
           << "/10 at eps " << fmt(eps_req) << " (m=" << shots << "); ";
  }

  // Vectorization cross-check on 100 random (spec, rho).
  double worst_vec = 0.0;
  {
    auto rng = substream(seed, {7, 1});
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const char letters[4] = {'I', 'X', 'Y', 'Z'};
    for (int c = 0; c < 100; ++c) {
      LindbladSpec s;
      s.n_qubits = 1 + static_cast<int>(rng() % 2);
      const int dim = s.hilbert_dim();
      auto random_word = [&]() {
        std::string w;
        for (int q = 0; q < s.n_qubits; ++q) w.push_back(letters[rng() % 4]);
        return w;
      };
      const int hterms = 1 + static_cast<int>(rng() % 3);
      for (int h = 0; h < hterms; ++h)
        s.hamiltonian.push_back({2.0 * unif(rng) - 1.0, random_word()});
      const int jumps = 1 + static_cast<int>(rng() % 2);
      for (int j = 0; j < jumps; ++j) {
        JumpOperator jop;
        const int terms = 1 + static_cast<int>(rng() % 2);
        for (int k = 0; k < terms; ++k)
          jop.terms.emplace_back(Complex(gauss(rng), gauss(rng)) * 0.5,
                                 random_word());
        s.jumps.push_back(jop);
      }
      CMatrix g(dim, dim);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
      CMatrix rho = g * g.adjoint();
      rho /= rho.trace().real();
      const CVector lhs = vectorize_lindblad(s) * vec_row_major(rho);
      const CVector rhs = vec_row_major(apply_lindblad(s, rho));
      worst_vec = std::max(worst_vec, (lhs - rhs).norm());
    }
    if (worst_vec > 1e-12) ok = false;
  }

  // Triangular matrix: spectrum read off the diagonal, stable.
  {
    CMatrix tri(2, 2);
    tri << Complex(-1, 0), Complex(5, 0), Complex(0, 0), Complex(-0.5, 0);
    const SpectralModel tm = eig_decompose(tri);
    CVector tpsi = (tm.right_vectors.col(0) + tm.right_vectors.col(1));
    tpsi /= tpsi.norm();
    const SparseExpansion texp =
        expand_initial_state(InitialState::pure_vector(tpsi), tm, 2, 1e-10);
    FamilySpec tfam;
    tfam.alpha_a = tm.alpha_a;
    PipelineOptions topts;
    topts.r_probe = 2;
    const EstimateReport trep =
        run_pipeline(tm, texp, tfam, AccessModel::exact(seed), topts,
                     texp.support_eigenvalues(tm));
    const StabilityVerdict v = spectral_abscissa(trep, 1e-8 * tm.alpha_a);
    if (v.classification != StabilityVerdict::Classification::AsymptoticallyStable ||
        std::abs(v.abscissa + 0.5) > 1e-8)
      ok = false;
  }

  // Zero eigenvalue excluded from the power-family signal, caught by the
  // exponential re-run on a state that overlaps every mode.
  {
    auto rng = substream(seed, {7, 2});
    InstanceSpec zspec;
    zspec.n = 4;
    zspec.r = 2;
    zspec.spectrum = SpectrumKind::NegReal;
    zspec.min_normalized_gap = 0.15;
    zspec.min_c_min = 0.2;
    zspec.background_gap = 0.3;  // keep all modes resolvable for the re-run
    zspec.include_zero = true;
    zspec.zero_in_support = false;  // the power run never sees lambda = 0
    const Instance zinst = generate_instance(zspec, rng);

    FamilySpec pfam;
    pfam.alpha_a = zinst.model.alpha_a;
    PipelineOptions zopts;
    zopts.r_probe = 2 * zspec.r;
    const EstimateReport prep =
        run_pipeline(zinst.model, zinst.expansion, pfam,
                     AccessModel::exact(seed), zopts,
                     zinst.support_eigenvalues());
    const double err_scale = 1e-7 * zinst.model.alpha_a;
    const StabilityVerdict without =
        spectral_abscissa(prep, err_scale);
    if (without.classification !=
        StabilityVerdict::Classification::AsymptoticallyStable)
      ok = false;

    const int n = zinst.model.dim();
    const InitialState mixed = InitialState::density_matrix(
        CMatrix::Identity(n, n) / static_cast<double>(n));
    const SparseExpansion zexp =
        expand_initial_state(mixed, zinst.model, n, 1e-10);
    FamilySpec efam;
    efam.tag = SignalFamily::Exponential;
    efam.alpha_a = zinst.model.alpha_a;
    PipelineOptions eopts;
    eopts.r_probe = n;
    const EstimateReport erep = run_pipeline(zinst.model, zexp, efam,
                                             AccessModel::exact(seed), eopts);
    const StabilityVerdict with_rerun =
        spectral_abscissa(prep, err_scale, erep);
    if (with_rerun.classification !=
            StabilityVerdict::Classification::MarginallyStable ||
        !with_rerun.zero_mode_found)
      ok = false;
    detail << "vec residual " << fmt(worst_vec) << "; zero-mode re-run "
           << (with_rerun.zero_mode_found ? "caught" : "MISSED");
  }

  res.passed = ok;
  res.detail = detail.str();
  return res;
}

// ---------------------------------------------------------------------------
// 8. Matrix-Bernstein: observed tail frequencies of ||sum Z_i|| never exceed
//    the closed-form tail over 1e3 trials (r = 3, m = 1e3).
CriterionResult bernstein_tail_check(std::uint64_t seed) {
  CriterionResult res;
  res.name = "matrix_bernstein_tail";
  const int r = 3;
  const std::int64_t m = 1000;
  const int trials = 1000;

  auto rng = substream(seed, {8});
  const CVector z = random_disk_nodes(r, 0.3, rng);
  std::vector<double> re(2 * r - 1), im(2 * r - 1);
  for (int t = 0; t < 2 * r - 1; ++t) {
    Complex g = 0.0;
    for (int i = 0; i < r; ++i) g += std::pow(z(i), t) / static_cast<double>(r);
    re[t] = std::clamp(g.real(), -1.0, 1.0);
    im[t] = std::clamp(g.imag(), -1.0, 1.0);
  }

  std::vector<double> norms(trials);
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<Complex> s(2 * r - 1);
    for (int t = 0; t < 2 * r - 1; ++t) {
      std::binomial_distribution<std::int64_t> bre(m, 0.5 * (1.0 + re[t]));
      std::binomial_distribution<std::int64_t> bim(m, 0.5 * (1.0 + im[t]));
      const double sx = double(2 * bre(rng) - m) - double(m) * re[t];
      const double sy = double(2 * bim(rng) - m) - double(m) * im[t];
      s[t] = Complex(sx, sy);
    }
    CMatrix sum(r, r);
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) sum(j, k) = s[j + k];
    norms[trial] = operator_norm(sum);
  }
  std::sort(norms.begin(), norms.end());

  bool ok = true;
  double tightest = 1e300;
  for (int gi = 1; gi <= 16; ++gi) {
    const double gamma = 0.5 * gi * std::sqrt(2.0 * r * static_cast<double>(m));
    const double bound = bernstein_tail(r, m, gamma);
    const auto it = std::lower_bound(norms.begin(), norms.end(), gamma);
    const double freq =
        static_cast<double>(norms.end() - it) / static_cast<double>(trials);
    if (freq > bound) ok = false;
    if (freq > 0.0) tightest = std::min(tightest, bound / std::max(freq, 1e-12));
  }
  res.passed = ok;
  res.detail = std::string(ok ? "no tail violation" : "tail VIOLATION") +
               "; tightest bound/frequency ratio " + fmt(tightest);
  return res;
}

}  // namespace

namespace {

using CriterionFn = CriterionResult (*)(std::uint64_t);

constexpr CriterionFn kCriteria[] = {
    &exact_recovery,      &heisenberg_scaling, &perturbation_bounds,
    &conditioning_bounds, &sample_complexity,  &approximation,
    &applications,        &bernstein_tail_check,
};

}  // namespace

std::vector<CriterionResult> acceptance_results(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (CriterionFn fn : kCriteria) out.push_back(fn(seed));
  return out;
}

bool run_acceptance(std::ostream& out, std::uint64_t seed) {
  bool all = true;
  int index = 0;
  for (CriterionFn fn : kCriteria) {
    ++index;
    const CriterionResult r = fn(seed);
    out << (r.passed ? "PASS" : "FAIL") << " criterion-" << index << " "
        << r.name << ": " << r.detail << "\n";
    out.flush();
    all &= r.passed;
  }
  out << (all ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " (" << index
      << " criteria)\n";
  return all;
}

}  // namespace pencilspec
