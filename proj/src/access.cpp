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

#include "pencilspec/access.hpp"

#include <algorithm>
#include <cmath>

namespace pencilspec {

AccessModel AccessModel::exact(std::uint64_t seed) {
  AccessModel a;
  a.mode = Mode::Exact;
  a.seed = seed;
  return a;
}

AccessModel AccessModel::hadamard(std::int64_t shots, std::uint64_t seed) {
  if (shots < 1)
    raise(ErrorKind::PreconditionViolated, "hadamard access needs shots >= 1");
  AccessModel a;
  a.mode = Mode::HadamardShots;
  a.shots = shots;
  a.seed = seed;
  return a;
}

AccessModel AccessModel::qae(double eps, double delta, std::uint64_t seed,
                             double c_qae) {
  if (!(eps > 0.0 && eps < 0.5))
    raise(ErrorKind::InvalidAccuracy, "qae access needs eps in (0, 1/2)");
  if (!(delta > 0.0 && delta < 1.0))
    raise(ErrorKind::InvalidAccuracy, "qae access needs delta in (0, 1)");
  if (!(c_qae > 0.0))
    raise(ErrorKind::InvalidAccuracy, "qae constant must be positive");
  AccessModel a;
  a.mode = Mode::AmplitudeEstimation;
  a.eps = eps;
  a.delta = delta;
  a.c_qae = c_qae;
  a.seed = seed;
  return a;
}

double AccessModel::entry_noise_std(const FamilySpec& family, int t) const {
  const double scale = family.scale(t);
  switch (mode) {
    case Mode::Exact:
      return 0.0;
    case Mode::HadamardShots:
      // Each part has std <= 1/sqrt(m); complex entry combines two parts.
      return scale * std::sqrt(2.0 / static_cast<double>(shots));
    case Mode::AmplitudeEstimation:
      // Success branch: per-part error uniform within eps on the amplitude,
      // i.e. 2*eps on the (2p-1) estimate; std = 2*eps/sqrt(3) per part.
      return scale * 2.0 * eps * std::sqrt(2.0 / 3.0);
  }
  return 0.0;
}

const char* to_string(AccessModel::Mode mode) {
  switch (mode) {
    case AccessModel::Mode::Exact: return "exact";
    case AccessModel::Mode::HadamardShots: return "hadamard";
    case AccessModel::Mode::AmplitudeEstimation: return "qae";
  }
  return "?";
}

AccessModel::Mode access_mode_from_string(const std::string& name) {
  if (name == "exact") return AccessModel::Mode::Exact;
  if (name == "hadamard") return AccessModel::Mode::HadamardShots;
  if (name == "qae") return AccessModel::Mode::AmplitudeEstimation;
  raise(ErrorKind::ConfigError, "unknown access mode '" + name + "'");
}

double hadamard_sample(double p_plus, std::int64_t shots, std::mt19937_64& rng) {
  if (p_plus < -1e-12 || p_plus > 1.0 + 1e-12)
    raise(ErrorKind::InvalidProbability,
          "hadamard_sample: p_plus = " + std::to_string(p_plus));
  if (shots < 1)
    raise(ErrorKind::PreconditionViolated, "hadamard_sample: shots < 1");
  const double p = std::clamp(p_plus, 0.0, 1.0);
  std::binomial_distribution<std::int64_t> dist(shots, p);
  const std::int64_t plus = dist(rng);
  return static_cast<double>(2 * plus - shots) / static_cast<double>(shots);
}

QaeSample qae_sample(double p, double eps, double delta, std::mt19937_64& rng,
                     double c_qae) {
  if (!(eps > 0.0 && eps < 0.5))
    raise(ErrorKind::InvalidAccuracy, "qae_sample: eps must be in (0, 1/2)");
  if (!(delta > 0.0 && delta < 1.0))
    raise(ErrorKind::InvalidAccuracy, "qae_sample: delta must be in (0, 1)");
  if (p < -1e-12 || p > 1.0 + 1e-12)
    raise(ErrorKind::InvalidProbability, "qae_sample: p = " + std::to_string(p));
  const double pc = std::clamp(p, 0.0, 1.0);

  // Draw order is fixed so the substream advances identically on both
  // branches.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u_fail = unit(rng);
  const double u_val = unit(rng);

  QaeSample out;
  if (u_fail < delta) {
    out.p_tilde = u_val;  // failure branch: uninformative output
  } else {
    const double lo = std::max(0.0, pc - eps);
    const double hi = std::min(1.0, pc + eps);
    out.p_tilde = lo + (hi - lo) * u_val;
  }
  out.queries = static_cast<std::int64_t>(
      std::ceil(c_qae * (1.0 / eps) * std::log(1.0 / delta)));
  out.queries = std::max<std::int64_t>(out.queries, 1);
  return out;
}

NoisySignalEstimate estimate_signal_entry(const SpectralModel& model,
                                          const SparseExpansion& exp,
                                          const FamilySpec& family, int t,
                                          const AccessModel& access) {
  check_family_spectrum(model, family);
  const CVector lambdas = exp.support_eigenvalues(model);
  Complex ideal = 0.0;
  for (int i = 0; i < exp.sparsity(); ++i)
    ideal += exp.diag_coeffs(i) * family.kernel(lambdas(i), t);

  NoisySignalEstimate est;
  est.scale_applied = family.scale(t);
  if (access.mode == AccessModel::Mode::Exact) {
    est.value = ideal;
    est.cost = 1;  // one ideal-oracle evaluation
    return est;
  }

  const Complex normalized = ideal / est.scale_applied;
  const double slack = 1e-9;
  if (std::abs(normalized.real()) > 1.0 + slack ||
      std::abs(normalized.imag()) > 1.0 + slack)
    raise(ErrorKind::NormalizedValueOutOfRange,
          "estimate_signal_entry: |normalized signal| exceeds 1 at t=" +
              std::to_string(t) + "; alpha_A too small for this instance");
  const double re_target = std::clamp(normalized.real(), -1.0, 1.0);
  const double im_target = std::clamp(normalized.imag(), -1.0, 1.0);

  auto stream = [&](std::uint64_t part) {
    return substream(access.seed,
                     {rngkey::kSignalEntry, static_cast<std::uint64_t>(family.tag),
                      static_cast<std::uint64_t>(t), part});
  };

  if (access.mode == AccessModel::Mode::HadamardShots) {
    auto rng_re = stream(0);
    auto rng_im = stream(1);
    const double re = hadamard_sample(0.5 * (1.0 + re_target), access.shots, rng_re);
    const double im = hadamard_sample(0.5 * (1.0 + im_target), access.shots, rng_im);
    est.value = est.scale_applied * Complex(re, im);
    est.cost = 2 * access.shots;
    return est;
  }

  auto rng_re = stream(0);
  auto rng_im = stream(1);
  const QaeSample re = qae_sample(0.5 + 0.5 * re_target, access.eps, access.delta,
                                  rng_re, access.c_qae);
  const QaeSample im = qae_sample(0.5 + 0.5 * im_target, access.eps, access.delta,
                                  rng_im, access.c_qae);
  est.value = est.scale_applied *
              Complex(2.0 * re.p_tilde - 1.0, 2.0 * im.p_tilde - 1.0);
  est.cost = re.queries + im.queries;
  return est;
}

SampledSeries sample_series(const SpectralModel& model, const SparseExpansion& exp,
                            const FamilySpec& family, int r_probe,
                            const AccessModel& access) {
  if (r_probe < 1)
    raise(ErrorKind::PreconditionViolated, "sample_series: R < 1");
  SampledSeries out;
  out.series.family = family;
  out.series.ideal = access.mode == AccessModel::Mode::Exact;
  out.series.values.resize(2 * r_probe);
  for (int t = 0; t < 2 * r_probe; ++t) {
    const NoisySignalEstimate e = estimate_signal_entry(model, exp, family, t, access);
    out.series.values(t) = e.value;
    out.cost += e.cost;
  }
  return out;
}

}  // namespace pencilspec
