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

#include <functional>
#include <optional>

#include "pencilspec/signal.hpp"

namespace pencilspec {

/// Truncated polynomial expansion of a signal kernel.
///
/// ChebyshevFirstKind stores the rescaled coefficients: with
/// Ttilde_0 = T_0/2 and Ttilde_j = T_j (j >= 1), the series reads
/// f = sum_j coeffs[j] * Ttilde_j, i.e. coeffs[0] is twice the standard
/// beta_0. FaberUnitDisk coefficients are plain Taylor coefficients,
/// since the Faber polynomials on the unit disk are the monomials.
struct PolySeries {
  enum class Basis { ChebyshevFirstKind, FaberUnitDisk };

  struct Target {
    SignalFamily family;
    int t = 0;
  };

  Basis basis = Basis::ChebyshevFirstKind;
  CVector coeffs;  // degree = coeffs.size() - 1
  std::optional<Target> target;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

using ScalarKernel = std::function<Complex(Complex)>;

/// Kernel of the transformed signal on the normalized spectrum:
/// Fourier -> x |-> e^{-2 pi i x t} on [-1,1]; Exponential -> z |-> e^{z t}
/// on the unit disk.
ScalarKernel kernel_function(SignalFamily family, int t);

/// Chebyshev coefficients by Chebyshev-Gauss quadrature projection at 4d
/// nodes. The result carries the rescaled coefficient convention.
PolySeries chebyshev_coeffs(const ScalarKernel& f, int d);
PolySeries chebyshev_coeffs(SignalFamily family, int t, int d);

/// Taylor/Faber-disk series of e^{z t}: coefficients t^k / k!.
PolySeries faber_disk_exp_coeffs(double t, int d);

/// Clenshaw (Chebyshev) or Horner (Faber-disk) evaluation.
/// Chebyshev arguments must be real in [-1,1]; Faber-disk needs |z| <= 1.
Complex eval_series_scalar(const PolySeries& series, const Complex& x);

/// Matrix Clenshaw/Horner. The spectrum of a_normalized must lie inside
/// the basis domain (checked); result approximates P f(Lambda) P^-1.
CMatrix eval_series_matrix(const PolySeries& series, const CMatrix& a_normalized);

/// Truncation order for the family's kernel at time t: first guess
/// d = ceil(C1*t + C2*ln(max(kappa_J,1)/eps2)) with C1 = 2e (Fourier) or
/// e^zeta * e (Exponential), C2 = 2, then doubled until the measured
/// sup-norm residual on a dense grid is <= eps2.
int truncation_order(SignalFamily family, int t, double eps2, double zeta = 0.0,
                     double kappa_j = 1.0);

/// Sup-norm residual of the truncated series against the kernel on a dense
/// grid over the basis domain.
double kernel_series_residual(const PolySeries& series, SignalFamily family, int t);

/// |sum_{j<d} y^j Ttilde_j(x) - (1-y^2) / (2 (1 - 2xy + y^2))|; the tail of
/// the Chebyshev generating function, geometric in d.
double generating_function_residual(double x, double y, int d);

}  // namespace pencilspec
