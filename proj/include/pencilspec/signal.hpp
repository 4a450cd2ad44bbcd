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

#include <string>

#include "pencilspec/spectral.hpp"

namespace pencilspec {

/// The three signal kernels, evaluated on integer times t = 0,1,...:
///   Power:       g(t) = tr(rho A^t)              f_t(z) = z^t
///   Fourier:     g(t) = tr(rho e^{-2pi i A t/a})  f_t(z) = e^{-2pi i z t/a}
///   Exponential: g(t) = tr(rho e^{A t/a})         f_t(z) = e^{z t/a}
/// Fourier requires a real spectrum; Exponential requires Re(lambda) <= 0.
enum class SignalFamily { Power, Fourier, Exponential };

const char* to_string(SignalFamily family);
SignalFamily signal_family_from_string(const std::string& name);

struct FamilySpec {
  SignalFamily tag = SignalFamily::Power;
  double alpha_a = 1.0;
  // Block-encoding normalization of the transformed kernel; the exact-path
  // convention 2*alpha_p = 1 keeps Fourier/Exponential estimates unscaled.
  double alpha_p = 0.5;

  /// Kernel value f_t(lambda).
  Complex kernel(const Complex& lambda, int t) const;
  /// Magnitude the noisy estimator multiplies back onto the normalized value.
  double scale(int t) const;
};

struct SignalSeries {
  FamilySpec family;
  CVector values;  // indexed by t = 0..length-1
  bool ideal = true;

  int length() const { return static_cast<int>(values.size()); }
  /// Drops the first `shift` samples; g'(t) = g(t + shift).
  SignalSeries shifted(int shift) const;
};

/// Throws FamilySpectrumMismatch if the model's spectrum violates the
/// family's precondition.
void check_family_spectrum(const SpectralModel& model, const FamilySpec& family);

/// Noiseless series from the sparse expansion: g(t) = sum_i c_i f_t(lambda_i)
/// for t = 0..2R-1, computed from the retained spectral components only.
SignalSeries ideal_signal(const SpectralModel& model, const SparseExpansion& exp,
                          const FamilySpec& family, int r_probe);

/// Independent route: dense tr(rho f_t(A)) with f_t(A) carrying every
/// eigen-component. Matrix functions are evaluated twice (eigenbasis route
/// and direct route) and cross-checked to 1e-9.
SignalSeries ideal_signal_bruteforce(const CMatrix& a, const InitialState& rho,
                                     const FamilySpec& family, int r_probe);

}  // namespace pencilspec
