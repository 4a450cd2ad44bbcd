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

#include "pencilspec/signal.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>

namespace pencilspec {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

const char* to_string(SignalFamily family) {
  switch (family) {
    case SignalFamily::Power: return "power";
    case SignalFamily::Fourier: return "fourier";
    case SignalFamily::Exponential: return "exponential";
  }
  return "?";
}

SignalFamily signal_family_from_string(const std::string& name) {
  if (name == "power") return SignalFamily::Power;
  if (name == "fourier") return SignalFamily::Fourier;
  if (name == "exponential") return SignalFamily::Exponential;
  raise(ErrorKind::ConfigError, "unknown signal family '" + name + "'");
}

Complex FamilySpec::kernel(const Complex& lambda, int t) const {
  switch (tag) {
    case SignalFamily::Power:
      return std::pow(lambda, t);
    case SignalFamily::Fourier:
      return std::exp(Complex(0.0, -kTwoPi * t / alpha_a) * lambda);
    case SignalFamily::Exponential:
      return std::exp(lambda * static_cast<double>(t) / alpha_a);
  }
  return 0.0;
}

double FamilySpec::scale(int t) const {
  if (tag == SignalFamily::Power) return std::pow(alpha_a, t);
  return 2.0 * alpha_p;
}

SignalSeries SignalSeries::shifted(int shift) const {
  if (shift < 0 || shift >= length())
    raise(ErrorKind::PreconditionViolated, "SignalSeries::shifted: bad shift");
  SignalSeries out;
  out.family = family;
  out.ideal = ideal;
  out.values = values.tail(length() - shift);
  return out;
}

void check_family_spectrum(const SpectralModel& model, const FamilySpec& family) {
  const double tol = 1e-9 * std::max(1.0, model.alpha_a);
  if (family.tag == SignalFamily::Fourier && !model.spectrum_is_real(tol))
    raise(ErrorKind::FamilySpectrumMismatch,
          "Fourier family requires a real spectrum");
  if (family.tag == SignalFamily::Exponential &&
      !model.spectrum_nonpositive_real_part(tol))
    raise(ErrorKind::FamilySpectrumMismatch,
          "Exponential family requires Re(lambda) <= 0 for all eigenvalues");
}

SignalSeries ideal_signal(const SpectralModel& model, const SparseExpansion& exp,
                          const FamilySpec& family, int r_probe) {
  if (r_probe < 1)
    raise(ErrorKind::PreconditionViolated, "ideal_signal: R < 1");
  check_family_spectrum(model, family);
  SignalSeries s;
  s.family = family;
  s.ideal = true;
  s.values.resize(2 * r_probe);
  const CVector lambdas = exp.support_eigenvalues(model);
  for (int t = 0; t < 2 * r_probe; ++t) {
    Complex v = 0.0;
    for (int i = 0; i < exp.sparsity(); ++i)
      v += exp.diag_coeffs(i) * family.kernel(lambdas(i), t);
    s.values(t) = v;
  }
  return s;
}

namespace {

// f_t(A) through the eigenbasis, P f_t(Lambda) P^-1.
CMatrix matrix_function_eigen(const SpectralModel& model,
                              const FamilySpec& family, int t) {
  CVector fvals(model.dim());
  for (int i = 0; i < model.dim(); ++i)
    fvals(i) = family.kernel(model.eigenvalues(i), t);
  return model.right_vectors * fvals.asDiagonal() * model.left_vectors.adjoint();
}

// f_t(A) without the eigenbasis: repeated products for powers,
// scaling-and-squaring for the exponentials.
CMatrix matrix_function_direct(const CMatrix& a, const FamilySpec& family, int t) {
  const int n = static_cast<int>(a.rows());
  switch (family.tag) {
    case SignalFamily::Power: {
      CMatrix acc = CMatrix::Identity(n, n);
      for (int k = 0; k < t; ++k) acc = acc * a;
      return acc;
    }
    case SignalFamily::Fourier: {
      CMatrix m = Complex(0.0, -kTwoPi * t / family.alpha_a) * a;
      return m.exp();
    }
    case SignalFamily::Exponential: {
      CMatrix m = (static_cast<double>(t) / family.alpha_a) * a;
      return m.exp();
    }
  }
  return CMatrix();
}

}  // namespace

SignalSeries ideal_signal_bruteforce(const CMatrix& a, const InitialState& rho,
                                     const FamilySpec& family, int r_probe) {
  if (r_probe < 1)
    raise(ErrorKind::PreconditionViolated, "ideal_signal_bruteforce: R < 1");
  EigOptions opts;
  opts.alpha_a = family.alpha_a;
  const SpectralModel model = eig_decompose(a, opts);
  check_family_spectrum(model, family);
  const CMatrix dm = rho.density();

  SignalSeries s;
  s.family = family;
  s.ideal = true;
  s.values.resize(2 * r_probe);
  for (int t = 0; t < 2 * r_probe; ++t) {
    const CMatrix via_eigen = matrix_function_eigen(model, family, t);
    const CMatrix via_direct = matrix_function_direct(a, family, t);
    const double mismatch = operator_norm(via_eigen - via_direct);
    const double ref = std::max(1.0, operator_norm(via_direct));
    if (mismatch > 1e-9 * ref)
      raise(ErrorKind::NumericalError,
            "ideal_signal_bruteforce: matrix-function routes disagree by " +
                std::to_string(mismatch) + " at t=" + std::to_string(t));
    s.values(t) = (dm * via_direct).trace();
  }
  return s;
}

}  // namespace pencilspec
