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

#include "pencilspec/generator.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>

namespace pencilspec {

SpectrumKind spectrum_kind_from_string(const std::string& name) {
  if (name == "complex") return SpectrumKind::Complex;
  if (name == "real") return SpectrumKind::Real;
  if (name == "negreal") return SpectrumKind::NegReal;
  raise(ErrorKind::ConfigError, "unknown spectrum kind '" + name + "'");
}

const char* to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::Complex: return "complex";
    case SpectrumKind::Real: return "real";
    case SpectrumKind::NegReal: return "negreal";
  }
  return "?";
}

namespace {

Complex draw_eigenvalue(SpectrumKind kind, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  switch (kind) {
    case SpectrumKind::Real:
      return Complex(radius * unit(rng), 0.0);
    case SpectrumKind::NegReal: {
      std::uniform_real_distribution<double> neg(-radius, 0.0);
      return Complex(neg(rng), 0.5 * radius * unit(rng));
    }
    case SpectrumKind::Complex: {
      // rejection into the disk
      for (;;) {
        const Complex z(radius * unit(rng), radius * unit(rng));
        if (std::abs(z) <= radius) return z;
      }
    }
  }
  return 0.0;
}

std::vector<Complex> draw_separated(int count, SpectrumKind kind, double radius,
                                    double min_gap, std::mt19937_64& rng,
                                    const std::vector<Complex>& fixed) {
  std::vector<Complex> out = fixed;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 20000)
      raise(ErrorKind::NumericalError,
            "generate_instance: cannot place separated eigenvalues; "
            "loosen the gap or sparsity");
    const Complex z = draw_eigenvalue(kind, radius, rng);
    bool ok = true;
    for (const Complex& w : out)
      if (std::abs(z - w) < min_gap) { ok = false; break; }
    if (ok) out.push_back(z);
  }
  return out;
}

CMatrix random_diagonalizer(int n, double nonnormality, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  const Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  CMatrix perturb(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) perturb(i, j) = Complex(gauss(rng), gauss(rng));
  perturb *= nonnormality / operator_norm(perturb);
  return q * (CMatrix::Identity(n, n) + perturb);
}

}  // namespace

CVector random_disk_nodes(int r, double min_gap, std::mt19937_64& rng,
                          bool on_circle) {
  if (r < 1) raise(ErrorKind::PreconditionViolated, "random_disk_nodes: r < 1");
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
  std::vector<Complex> nodes;
  int attempts = 0;
  while (static_cast<int>(nodes.size()) < r) {
    if (++attempts > 100000)
      raise(ErrorKind::NumericalError, "random_disk_nodes: gap unsatisfiable");
    Complex z;
    if (on_circle) {
      const double th = angle(rng);
      z = Complex(std::cos(th), std::sin(th));
    } else {
      z = Complex(unit(rng), unit(rng));
      if (std::abs(z) > 1.0) continue;
    }
    bool ok = true;
    for (const Complex& w : nodes)
      if (std::abs(z - w) < min_gap) { ok = false; break; }
    if (ok) nodes.push_back(z);
  }
  CVector out(r);
  for (int i = 0; i < r; ++i) out(i) = nodes[i];
  return out;
}

Instance generate_instance(const InstanceSpec& spec, std::mt19937_64& rng) {
  if (spec.r < 1 || spec.n < spec.r)
    raise(ErrorKind::PreconditionViolated, "generate_instance: need n >= r >= 1");
  if (!(spec.min_c_min > 0.0 && spec.min_c_min <= 0.9 / spec.r))
    raise(ErrorKind::PreconditionViolated,
          "generate_instance: min_c_min must lie in (0, 0.9/r]");

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int attempt = 0; attempt < 400; ++attempt) {
    // Support eigenvalues with a working margin on the gap; alpha_A is only
    // known after the matrix exists, so the normalized gap is re-checked.
    const double gap_target = spec.min_normalized_gap * 1.3;
    std::vector<Complex> fixed;
    if (spec.include_zero && spec.zero_in_support) fixed.push_back(0.0);
    std::vector<Complex> support =
        draw_separated(spec.r, spec.spectrum, spec.radius, gap_target, rng, fixed);

    // Background eigenvalues carry no signal weight but keep a configurable
    // separation so follow-up runs with full-support states stay resolvable.
    std::vector<Complex> all = support;
    if (spec.include_zero && !spec.zero_in_support) all.push_back(0.0);
    all = draw_separated(spec.n, spec.spectrum, spec.radius,
                         spec.background_gap, rng, all);

    CVector lambda(spec.n);
    for (int i = 0; i < spec.n; ++i) lambda(i) = all[i];
    const CMatrix p = random_diagonalizer(spec.n, spec.nonnormality, rng);
    const CMatrix a = p * lambda.asDiagonal() * p.partialPivLu().inverse();

    SpectralModel model;
    try {
      EigOptions opts;
      opts.fourier_margin = spec.fourier_margin;
      model = eig_decompose(a, opts);
    } catch (const Error&) {
      continue;
    }

    // Locate the intended support in the sorted model.
    std::vector<int> support_idx(spec.r);
    bool located = true;
    for (int i = 0; i < spec.r; ++i) {
      int best = -1;
      double best_d = 1e300;
      for (int k = 0; k < spec.n; ++k) {
        const double d = std::abs(model.eigenvalues(k) - support[i]);
        if (d < best_d) { best_d = d; best = k; }
      }
      if (best_d > 1e-8) { located = false; break; }
      support_idx[i] = best;
    }
    if (!located) continue;

    double min_gap = 1e300;
    for (int i = 0; i < spec.r; ++i)
      for (int j = i + 1; j < spec.r; ++j)
        min_gap = std::min(min_gap, std::abs(support[i] - support[j]));
    if (spec.r > 1 && min_gap / model.alpha_a < spec.min_normalized_gap) continue;

    // Pure state in the span of the support right-vectors; the Gram matrix
    // is near identity for mild non-normality, so rejection on c_min
    // converges quickly.
    bool built = false;
    Instance inst;
    for (int state_try = 0; state_try < 60 && !built; ++state_try) {
      CVector psi = CVector::Zero(spec.n);
      for (int i = 0; i < spec.r; ++i) {
        const double w = spec.min_c_min * spec.r +
                         (1.0 - spec.min_c_min * spec.r) * unif(rng);
        psi += std::sqrt(w) * model.right_vectors.col(support_idx[i]);
      }
      psi /= psi.norm();
      InitialState state = InitialState::pure_vector(psi);
      SparseExpansion exp =
          expand_initial_state(state, model, spec.r, /*drop_tol=*/1e-10);
      if (exp.sparsity() != spec.r) continue;
      if (exp.c_min < spec.min_c_min) continue;
      bool support_match = true;
      for (int idx : exp.support)
        if (std::find(support_idx.begin(), support_idx.end(), idx) ==
            support_idx.end())
          support_match = false;
      if (!support_match) continue;
      inst.a = a;
      inst.model = model;
      inst.state = state;
      inst.expansion = exp;
      built = true;
    }
    if (built) return inst;
  }
  raise(ErrorKind::NumericalError,
        "generate_instance: no instance satisfied the constraints; "
        "relax min_c_min or the gap");
}

}  // namespace pencilspec
