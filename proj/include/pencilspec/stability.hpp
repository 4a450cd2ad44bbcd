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

#include <optional>

#include "pencilspec/pencil.hpp"

namespace pencilspec {

/// Smallest nonzero |Re(lambda)| after clamping |Re| <= zero_tol to zero.
/// Requires a steady mode (clamped to zero) plus at least one decaying mode.
double liouvillian_gap(const EstimateReport& estimates, double zero_tol);

struct StabilityVerdict {
  enum class Classification { AsymptoticallyStable, MarginallyStable, Unstable };

  double abscissa = 0.0;
  Classification classification = Classification::MarginallyStable;
  double margin = 0.0;  // |abscissa| relative to the estimation error
  bool zero_mode_found = false;  // set by the Exponential-family re-run
};

const char* to_string(StabilityVerdict::Classification c);

/// Classifies max Re(lambda_hat) against the estimation error scale.
/// The Power-family signal of a zero eigenvalue vanishes for t >= 1, so a
/// negative verdict may be upgraded to MarginallyStable when the optional
/// Exponential-family re-run shows a persistent mode at lambda ~ 0.
StabilityVerdict spectral_abscissa(
    const EstimateReport& estimates, double error_scale,
    const std::optional<EstimateReport>& exponential_rerun = std::nullopt);

}  // namespace pencilspec
