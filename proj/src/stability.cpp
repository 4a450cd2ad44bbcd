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

#include "pencilspec/stability.hpp"

#include <algorithm>
#include <cmath>

namespace pencilspec {

double liouvillian_gap(const EstimateReport& estimates, double zero_tol) {
  if (estimates.lambda_hat.size() == 0)
    raise(ErrorKind::PreconditionViolated, "liouvillian_gap: empty estimate set");
  if (zero_tol < 0.0)
    raise(ErrorKind::PreconditionViolated, "liouvillian_gap: zero_tol < 0");

  bool steady = false;
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < estimates.lambda_hat.size(); ++i) {
    const double re = estimates.lambda_hat(i).real();
    if (std::abs(re) <= zero_tol) {
      steady = true;
    } else {
      gap = std::min(gap, std::abs(re));
    }
  }
  if (!steady)
    raise(ErrorKind::NoSteadyStateDetected,
          "liouvillian_gap: no mode with |Re(lambda)| <= " + std::to_string(zero_tol));
  if (!std::isfinite(gap))
    raise(ErrorKind::OnlySteadyState,
          "liouvillian_gap: every mode is within zero_tol of the imaginary axis");
  return gap;
}

const char* to_string(StabilityVerdict::Classification c) {
  switch (c) {
    case StabilityVerdict::Classification::AsymptoticallyStable:
      return "asymptotically_stable";
    case StabilityVerdict::Classification::MarginallyStable:
      return "marginally_stable";
    case StabilityVerdict::Classification::Unstable:
      return "unstable";
  }
  return "?";
}

StabilityVerdict spectral_abscissa(
    const EstimateReport& estimates, double error_scale,
    const std::optional<EstimateReport>& exponential_rerun) {
  if (estimates.lambda_hat.size() == 0)
    raise(ErrorKind::PreconditionViolated, "spectral_abscissa: empty estimate set");
  if (!(error_scale > 0.0))
    raise(ErrorKind::PreconditionViolated, "spectral_abscissa: error_scale <= 0");

  StabilityVerdict verdict;
  double abscissa = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < estimates.lambda_hat.size(); ++i)
    abscissa = std::max(abscissa, estimates.lambda_hat(i).real());
  verdict.abscissa = abscissa;
  verdict.margin = std::abs(abscissa) / error_scale;

  if (abscissa > error_scale) {
    verdict.classification = StabilityVerdict::Classification::Unstable;
    return verdict;
  }
  if (abscissa >= -error_scale) {
    verdict.classification = StabilityVerdict::Classification::MarginallyStable;
    return verdict;
  }

  verdict.classification = StabilityVerdict::Classification::AsymptoticallyStable;
  if (exponential_rerun) {
    if (exponential_rerun->family.tag != SignalFamily::Exponential)
      raise(ErrorKind::PreconditionViolated,
            "spectral_abscissa: the zero test must use the Exponential family");
    for (int i = 0; i < exponential_rerun->lambda_hat.size(); ++i) {
      if (std::abs(exponential_rerun->lambda_hat(i)) <= error_scale) {
        verdict.classification = StabilityVerdict::Classification::MarginallyStable;
        verdict.zero_mode_found = true;
        break;
      }
    }
  }
  return verdict;
}

}  // namespace pencilspec
