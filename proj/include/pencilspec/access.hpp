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

#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "pencilspec/rng.hpp"
#include "pencilspec/signal.hpp"

namespace pencilspec {

/// How signal values are obtained. HadamardShots draws m two-outcome shots
/// per estimated part; AmplitudeEstimation reproduces the (eps, delta)
/// amplitude-estimation guarantee at the statistics level, including the
/// delta failure branch.
struct AccessModel {
  enum class Mode { Exact, HadamardShots, AmplitudeEstimation };

  Mode mode = Mode::Exact;
  std::int64_t shots = 0;   // m, per estimated part (Hadamard)
  double eps = 0.0;         // additive accuracy per amplitude (QAE)
  double delta = 0.0;       // failure probability per amplitude (QAE)
  double c_qae = 1.0;       // leading constant in the QAE query count
  std::uint64_t seed = 0;

  static AccessModel exact(std::uint64_t seed = 0);
  static AccessModel hadamard(std::int64_t shots, std::uint64_t seed);
  static AccessModel qae(double eps, double delta, std::uint64_t seed,
                         double c_qae = 1.0);

  /// Expected standard deviation of one complex signal-entry estimate at
  /// time t (the scale factor included). Zero for exact access.
  double entry_noise_std(const FamilySpec& family, int t) const;
};

const char* to_string(AccessModel::Mode mode);
AccessModel::Mode access_mode_from_string(const std::string& name);

struct NoisySignalEstimate {
  Complex value;
  double scale_applied = 1.0;
  std::int64_t cost = 0;  // shots or queries consumed
};

/// Mean of m independent +-1 draws with P(+1) = p_plus; unbiased for
/// 2*p_plus - 1 with standard deviation <= 1/sqrt(m).
double hadamard_sample(double p_plus, std::int64_t shots, std::mt19937_64& rng);

struct QaeSample {
  double p_tilde = 0.0;
  std::int64_t queries = 0;
};

/// With probability 1-delta returns a uniform draw on [p-eps,p+eps]
/// intersected with [0,1]; with probability delta a uniform draw on [0,1].
/// Query count is ceil(c_qae * eps^-1 * ln(1/delta)).
QaeSample qae_sample(double p, double eps, double delta, std::mt19937_64& rng,
                     double c_qae = 1.0);

/// One noisy estimate of g(t). Real and imaginary parts are estimated
/// independently (two interferometer settings) and the costs summed.
NoisySignalEstimate estimate_signal_entry(const SpectralModel& model,
                                          const SparseExpansion& exp,
                                          const FamilySpec& family, int t,
                                          const AccessModel& access);

struct SampledSeries {
  SignalSeries series;
  std::int64_t cost = 0;
};

/// Estimates the 2R distinct time points t = 0..2R-1 once each (Hankel
/// entries with equal j+k share one estimate). Deterministic given the seed:
/// each entry draws from a substream keyed by (seed, family, t, part).
SampledSeries sample_series(const SpectralModel& model, const SparseExpansion& exp,
                            const FamilySpec& family, int r_probe,
                            const AccessModel& access);

}  // namespace pencilspec
