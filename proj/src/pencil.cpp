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

#include "pencilspec/pencil.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace pencilspec {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void sort_deterministic(CVector& v) {
  std::vector<Complex> vals(v.data(), v.data() + v.size());
  std::sort(vals.begin(), vals.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() < b.imag();
  });
  for (int i = 0; i < v.size(); ++i) v(i) = vals[i];
}

CMatrix hankel_from(const SignalSeries& series, int dim, int shift) {
  CMatrix h(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int k = 0; k < dim; ++k) h(j, k) = series.values(j + k + shift);
  return h;
}

}  // namespace

HankelPair build_hankel_pair(const SignalSeries& series, int r) {
  if (r < 1) raise(ErrorKind::PreconditionViolated, "build_hankel_pair: r < 1");
  if (series.length() < 2 * r)
    raise(ErrorKind::SeriesTooShort,
          "build_hankel_pair: need 2r = " + std::to_string(2 * r) +
              " samples, have " + std::to_string(series.length()));
  HankelPair pair;
  pair.h0 = hankel_from(series, r, 0);
  pair.h1 = hankel_from(series, r, 1);
  pair.probe_dim = r;
  pair.sparsity = r;
  return pair;
}

int estimate_sparsity(const SignalSeries& series, int r_probe, double noise_scale,
                      double tau_rel, double tau_abs_factor) {
  if (r_probe < 1)
    raise(ErrorKind::PreconditionViolated, "estimate_sparsity: R < 1");
  if (noise_scale < 0.0)
    raise(ErrorKind::PreconditionViolated, "estimate_sparsity: noise_scale < 0");
  if (series.length() < 2 * r_probe)
    raise(ErrorKind::SeriesTooShort,
          "estimate_sparsity: need 2R samples, have " +
              std::to_string(series.length()));
  const CMatrix h0 = hankel_from(series, r_probe, 0);
  Eigen::JacobiSVD<CMatrix> svd(h0);
  const auto& sigma = svd.singularValues();
  const double threshold =
      std::max(tau_rel * sigma(0), tau_abs_factor * noise_scale * r_probe);
  int r = 0;
  for (int k = 0; k < sigma.size(); ++k)
    if (sigma(k) > threshold) ++r;
  if (r == 0)
    raise(ErrorKind::AllSingular,
          "estimate_sparsity: signal indistinguishable from noise "
          "(sigma_1 = " + std::to_string(sigma(0)) + ")");
  return r;
}

CVector merge_coincident(const CVector& z, double tol) {
  std::vector<Complex> merged;
  std::vector<int> counts;
  for (int i = 0; i < z.size(); ++i) {
    bool absorbed = false;
    for (std::size_t m = 0; m < merged.size(); ++m) {
      if (std::abs(merged[m] / static_cast<double>(counts[m]) - z(i)) < tol) {
        merged[m] += z(i);
        counts[m] += 1;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) {
      merged.push_back(z(i));
      counts.push_back(1);
    }
  }
  CVector out(static_cast<int>(merged.size()));
  for (std::size_t m = 0; m < merged.size(); ++m)
    out(static_cast<int>(m)) = merged[m] / static_cast<double>(counts[m]);
  return out;
}

CVector solve_gevp(const HankelPair& pair) {
  if (pair.sparsity < 1)
    raise(ErrorKind::PreconditionViolated, "solve_gevp: estimated sparsity < 1");
  const int dim = pair.dim();
  const int r = std::min(pair.sparsity, dim);

  Eigen::JacobiSVD<CMatrix> svd(pair.h0, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  if (!(sigma(r - 1) > std::max(1e-14 * sigma(0), 1e-300)))
    raise(ErrorKind::SingularPencil,
          "solve_gevp: sigma_r(H0) = " + std::to_string(sigma(r - 1)) +
              " below the machine-level threshold");

  // Rank-r truncated pseudoinverse of H0.
  CMatrix pinv = CMatrix::Zero(dim, dim);
  for (int k = 0; k < r; ++k)
    pinv += (1.0 / sigma(k)) * svd.matrixV().col(k) * svd.matrixU().col(k).adjoint();

  const CMatrix g = pinv * pair.h1;
  Eigen::ComplexEigenSolver<CMatrix> es(g, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    raise(ErrorKind::NumericalError, "solve_gevp: eigensolver failed");
  CVector all = es.eigenvalues();

  CVector kept;
  if (dim > r) {
    // Truncation introduces dim - r spurious null directions; keep the r
    // largest-magnitude eigenvalues.
    std::vector<int> order(dim);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::abs(all(a)) > std::abs(all(b)); });
    kept.resize(r);
    for (int k = 0; k < r; ++k) kept(k) = all(order[k]);
  } else {
    kept = all;
  }

  CVector merged = merge_coincident(kept, 1e-9);
  sort_deterministic(merged);
  return merged;
}

CVector postprocess(const CVector& z_hat, const FamilySpec& family) {
  CVector lambda(z_hat.size());
  for (int i = 0; i < z_hat.size(); ++i) {
    const Complex z = z_hat(i);
    switch (family.tag) {
      case SignalFamily::Power:
        lambda(i) = z;
        break;
      case SignalFamily::Fourier: {
        if (std::abs(z) < 1e-15)
          raise(ErrorKind::ZeroModulus, "postprocess: |z| = 0 under Fourier");
        // Projection onto the unit circle, then invert the phase map
        // z = e^{-2 pi i lambda / alpha}; arg in (-pi, pi].
        lambda(i) = Complex(-family.alpha_a * std::arg(z) / kTwoPi, 0.0);
        break;
      }
      case SignalFamily::Exponential: {
        if (std::abs(z) < 1e-15)
          raise(ErrorKind::ZeroModulus, "postprocess: |z| = 0 under Exponential");
        lambda(i) = family.alpha_a * std::log(z);  // principal branch
        break;
      }
    }
  }
  return lambda;
}

namespace {

// O(n^3) Hungarian algorithm on a square cost matrix (potentials +
// augmenting paths). Returns column assigned to each row.
std::vector<int> hungarian(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = std::numeric_limits<double>::infinity();
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] >= 1) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace

MatchResult match_eigenvalues(const CVector& estimates, const CVector& truth) {
  const int ne = static_cast<int>(estimates.size());
  const int nt = static_cast<int>(truth.size());
  if (ne == 0 || nt == 0)
    raise(ErrorKind::PreconditionViolated, "match_eigenvalues: empty input set");

  // Pad the rectangular problem to square; dummy pairings cost zero, so the
  // optimum minimizes the total cost over min(ne, nt) genuine pairs.
  const int n = std::max(ne, nt);
  Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < ne; ++i)
    for (int j = 0; j < nt; ++j) cost(i, j) = std::abs(estimates(i) - truth(j));

  const std::vector<int> row_to_col = hungarian(cost);
  MatchResult res;
  for (int i = 0; i < ne; ++i) {
    const int j = row_to_col[i];
    if (j >= 0 && j < nt) {
      res.assignment.emplace_back(i, j);
      res.matched_error = std::max(res.matched_error, cost(i, j));
    } else {
      res.unmatched_estimates.push_back(i);
    }
  }
  std::vector<char> truth_hit(nt, false);
  for (const auto& [i, j] : res.assignment) truth_hit[j] = true;
  for (int j = 0; j < nt; ++j)
    if (!truth_hit[j]) res.unmatched_truth.push_back(j);

  for (int i = 0; i < ne; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < nt; ++j) best = std::min(best, std::abs(estimates(i) - truth(j)));
    res.one_sided_error = std::max(res.one_sided_error, best);
  }
  return res;
}

std::pair<double, double> vandermonde_residual(const HankelPair& pair,
                                               const CVector& z, const CVector& c) {
  const int r = static_cast<int>(z.size());
  if (c.size() != r || pair.dim() != r)
    raise(ErrorKind::DimensionMismatch, "vandermonde_residual: sizes disagree");
  CMatrix v(r, r);
  for (int j = 0; j < r; ++j) {
    Complex p = 1.0;
    for (int k = 0; k < r; ++k) {
      v(j, k) = p;
      p *= z(j);
    }
  }
  // H0 = V^T C V with the row-node convention (plain transpose, no conjugate).
  const CMatrix rebuilt0 = v.transpose() * c.asDiagonal() * v;
  const CMatrix rebuilt1 = v.transpose() * c.asDiagonal() * z.asDiagonal() * v;
  return {operator_norm(pair.h0 - rebuilt0), operator_norm(pair.h1 - rebuilt1)};
}

CVector recover_coefficients(const SignalSeries& series, const CVector& z,
                             int t_first) {
  const CVector nodes = merge_coincident(z, 1e-9);
  const int r = static_cast<int>(nodes.size());
  const int len = series.length();
  if (t_first < 0 || len - t_first < r)
    raise(ErrorKind::PreconditionViolated,
          "recover_coefficients: not enough samples");
  CMatrix w(len - t_first, r);
  CVector rhs(len - t_first);
  for (int t = t_first; t < len; ++t) {
    for (int i = 0; i < r; ++i) w(t - t_first, i) = std::pow(nodes(i), t);
    rhs(t - t_first) = series.values(t);
  }
  return w.colPivHouseholderQr().solve(rhs);
}

EstimateReport run_pipeline(const SpectralModel& model, const SparseExpansion& exp,
                            const FamilySpec& family, const AccessModel& access,
                            const PipelineOptions& opts,
                            const std::optional<CVector>& truth) {
  if (opts.r_probe < 1)
    raise(ErrorKind::PreconditionViolated, "run_pipeline: probe dimension < 1");

  const SampledSeries sampled = sample_series(model, exp, family, opts.r_probe, access);

  // Aggregate per-entry noise into the scalar handed to the rank estimator.
  double noise_sq = 0.0;
  for (int t = 0; t <= 2 * opts.r_probe - 2; ++t) {
    const double s = access.entry_noise_std(family, t);
    noise_sq += s * s;
  }
  const double noise_scale = std::sqrt(noise_sq / (2.0 * opts.r_probe - 1.0));

  const int r_est = opts.fixed_sparsity
                        ? *opts.fixed_sparsity
                        : estimate_sparsity(sampled.series, opts.r_probe,
                                            noise_scale, opts.tau_rel,
                                            opts.tau_abs_factor);
  HankelPair pair = build_hankel_pair(sampled.series, r_est);

  EstimateReport rep;
  rep.family = family;
  rep.cost_total = sampled.cost;
  rep.sparsity = r_est;
  rep.noise_scale = noise_scale;
  rep.z_hat = solve_gevp(pair);
  if (family.tag == SignalFamily::Fourier) {
    // Report the unit-circle projection; Fourier modes are phase factors.
    for (int i = 0; i < rep.z_hat.size(); ++i) {
      const double mod = std::abs(rep.z_hat(i));
      if (mod > 1e-15) rep.z_hat(i) /= mod;
    }
  }
  rep.lambda_hat = postprocess(rep.z_hat, family);
  rep.coeffs = recover_coefficients(sampled.series, rep.z_hat, /*t_first=*/1);

  if (family.tag == SignalFamily::Power) {
    // A zero eigenvalue leaves no trace for t >= 1; its weight shows up as a
    // deficit between g(0) and the recovered coefficient sum.
    const Complex deficit = sampled.series.values(0) - rep.coeffs.sum();
    rep.trace_deficit = std::abs(deficit);
    rep.possible_zero = rep.trace_deficit > std::max(10.0 * noise_scale, 1e-8);
  }

  if (truth) {
    const MatchResult match = match_eigenvalues(rep.lambda_hat, *truth);
    rep.matched_error = match.matched_error;
    rep.one_sided_error = match.one_sided_error;
  }
  return rep;
}

}  // namespace pencilspec
