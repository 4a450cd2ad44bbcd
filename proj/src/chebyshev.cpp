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

#include "pencilspec/chebyshev.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace pencilspec {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kDomainSlack = 1e-9;
constexpr int kMaxOrder = 1 << 15;
}  // namespace

ScalarKernel kernel_function(SignalFamily family, int t) {
  switch (family) {
    case SignalFamily::Fourier:
      return [t](Complex x) { return std::exp(Complex(0.0, -kTwoPi * t) * x); };
    case SignalFamily::Exponential:
      return [t](Complex z) { return std::exp(z * static_cast<double>(t)); };
    case SignalFamily::Power:
      return [t](Complex z) { return std::pow(z, t); };
  }
  return {};
}

PolySeries chebyshev_coeffs(const ScalarKernel& f, int d) {
  if (d < 1)
    raise(ErrorKind::PreconditionViolated, "chebyshev_coeffs: d < 1");
  const int m = 4 * d;  // quadrature nodes; margin over the integrand degree
  std::vector<Complex> fvals(m);
  std::vector<double> thetas(m);
  for (int k = 0; k < m; ++k) {
    thetas[k] = kPi * (k + 0.5) / m;
    fvals[k] = f(Complex(std::cos(thetas[k]), 0.0));
  }
  PolySeries series;
  series.basis = PolySeries::Basis::ChebyshevFirstKind;
  series.coeffs.resize(d);
  for (int j = 0; j < d; ++j) {
    Complex acc = 0.0;
    for (int k = 0; k < m; ++k) acc += fvals[k] * std::cos(j * thetas[k]);
    series.coeffs(j) = 2.0 * acc / static_cast<double>(m);
  }
  return series;
}

PolySeries chebyshev_coeffs(SignalFamily family, int t, int d) {
  PolySeries s = chebyshev_coeffs(kernel_function(family, t), d);
  s.target = PolySeries::Target{family, t};
  return s;
}

PolySeries faber_disk_exp_coeffs(double t, int d) {
  if (d < 1)
    raise(ErrorKind::PreconditionViolated, "faber_disk_exp_coeffs: d < 1");
  PolySeries series;
  series.basis = PolySeries::Basis::FaberUnitDisk;
  series.coeffs.resize(d);
  Complex term = 1.0;  // t^k / k!
  for (int k = 0; k < d; ++k) {
    series.coeffs(k) = term;
    term *= t / static_cast<double>(k + 1);
  }
  series.target = PolySeries::Target{SignalFamily::Exponential,
                                     static_cast<int>(std::lround(t))};
  return series;
}

namespace {

void check_scalar_domain(const PolySeries& series, const Complex& x) {
  if (series.basis == PolySeries::Basis::ChebyshevFirstKind) {
    if (std::abs(x.imag()) > kDomainSlack || std::abs(x.real()) > 1.0 + kDomainSlack)
      raise(ErrorKind::PreconditionViolated,
            "eval_series_scalar: Chebyshev argument outside [-1,1]");
  } else {
    if (std::abs(x) > 1.0 + kDomainSlack)
      raise(ErrorKind::PreconditionViolated,
            "eval_series_scalar: Faber-disk argument outside the unit disk");
  }
}

}  // namespace

Complex eval_series_scalar(const PolySeries& series, const Complex& x) {
  check_scalar_domain(series, x);
  const int n = static_cast<int>(series.coeffs.size());
  if (n == 0) return 0.0;
  if (series.basis == PolySeries::Basis::FaberUnitDisk) {
    Complex acc = 0.0;
    for (int j = n - 1; j >= 0; --j) acc = acc * x + series.coeffs(j);
    return acc;
  }
  // Clenshaw with the rescaled-first-coefficient convention.
  const Complex a0 = 0.5 * series.coeffs(0);
  Complex b1 = 0.0, b2 = 0.0;
  for (int j = n - 1; j >= 1; --j) {
    const Complex b = series.coeffs(j) + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b;
  }
  return a0 + x * b1 - b2;
}

CMatrix eval_series_matrix(const PolySeries& series, const CMatrix& a_normalized) {
  check_square(a_normalized, "eval_series_matrix");
  check_finite(a_normalized, "eval_series_matrix");
  const int n = static_cast<int>(a_normalized.rows());

  Eigen::ComplexEigenSolver<CMatrix> es(a_normalized, false);
  for (int i = 0; i < n; ++i) {
    const Complex ev = es.eigenvalues()(i);
    if (series.basis == PolySeries::Basis::ChebyshevFirstKind) {
      if (std::abs(ev.imag()) > 1e-6 || std::abs(ev.real()) > 1.0 + kDomainSlack)
        raise(ErrorKind::PreconditionViolated,
              "eval_series_matrix: spectrum leaves [-1,1]");
    } else if (std::abs(ev) > 1.0 + kDomainSlack) {
      raise(ErrorKind::PreconditionViolated,
            "eval_series_matrix: spectrum leaves the unit disk");
    }
  }

  const int d = static_cast<int>(series.coeffs.size());
  const CMatrix eye = CMatrix::Identity(n, n);
  if (d == 0) return CMatrix::Zero(n, n);
  if (series.basis == PolySeries::Basis::FaberUnitDisk) {
    CMatrix acc = CMatrix::Zero(n, n);
    for (int j = d - 1; j >= 0; --j)
      acc = acc * a_normalized + series.coeffs(j) * eye;
    return acc;
  }
  CMatrix b1 = CMatrix::Zero(n, n), b2 = CMatrix::Zero(n, n);
  for (int j = d - 1; j >= 1; --j) {
    CMatrix b = series.coeffs(j) * eye + 2.0 * (a_normalized * b1) - b2;
    b2.swap(b1);
    b1 = std::move(b);
  }
  return 0.5 * series.coeffs(0) * eye + a_normalized * b1 - b2;
}

double kernel_series_residual(const PolySeries& series, SignalFamily family, int t) {
  const ScalarKernel f = kernel_function(family, t);
  double worst = 0.0;
  if (series.basis == PolySeries::Basis::ChebyshevFirstKind) {
    const int grid = 1000;
    for (int k = 0; k <= grid; ++k) {
      const double x = -1.0 + 2.0 * k / grid;
      worst = std::max(worst, std::abs(eval_series_scalar(series, x) - f(x)));
    }
  } else {
    // Error of a polynomial approximant to an entire function attains its
    // maximum over the disk on the boundary.
    const int grid = 720;
    for (int k = 0; k < grid; ++k) {
      const double th = kTwoPi * k / grid;
      const Complex z(std::cos(th), std::sin(th));
      worst = std::max(worst, std::abs(eval_series_scalar(series, z) - f(z)));
    }
  }
  return worst;
}

int truncation_order(SignalFamily family, int t, double eps2, double zeta,
                     double kappa_j) {
  if (!(eps2 > 0.0 && eps2 < 1.0))
    raise(ErrorKind::PreconditionViolated, "truncation_order: eps2 outside (0,1)");
  if (family == SignalFamily::Power)
    raise(ErrorKind::PreconditionViolated,
          "truncation_order: power kernels are exact, no truncation");
  const double c1 =
      family == SignalFamily::Fourier ? 2.0 * std::exp(1.0)
                                      : std::exp(zeta) * std::exp(1.0);
  const double c2 = 2.0;
  int d = static_cast<int>(
      std::ceil(c1 * t + c2 * std::log(std::max(kappa_j, 1.0) / eps2)));
  d = std::max(d, 2);

  // The leading constants are heuristic; the residual check is the contract.
  while (d <= kMaxOrder) {
    const PolySeries series = family == SignalFamily::Fourier
                                  ? chebyshev_coeffs(family, t, d)
                                  : faber_disk_exp_coeffs(t, d);
    if (kernel_series_residual(series, family, t) <= eps2) return d;
    d *= 2;
  }
  raise(ErrorKind::NumericalError,
        "truncation_order: residual target unreachable below order " +
            std::to_string(kMaxOrder));
}

double generating_function_residual(double x, double y, int d) {
  if (std::abs(y) > 0.5)
    raise(ErrorKind::PreconditionViolated,
          "generating_function_residual: |y| > 1/2");
  if (std::abs(x) > 1.0 + kDomainSlack)
    raise(ErrorKind::PreconditionViolated,
          "generating_function_residual: x outside [-1,1]");
  if (d < 1)
    raise(ErrorKind::PreconditionViolated, "generating_function_residual: d < 1");
  double sum = 0.5;  // j = 0 term, Ttilde_0 = 1/2
  double t_prev = 1.0, t_cur = x, yj = y;
  for (int j = 1; j < d; ++j) {
    sum += yj * t_cur;
    yj *= y;
    const double t_next = 2.0 * x * t_cur - t_prev;
    t_prev = t_cur;
    t_cur = t_next;
  }
  const double target = 0.5 * (1.0 - y * y) / (1.0 - 2.0 * y * x + y * y);
  return std::abs(sum - target);
}

}  // namespace pencilspec
