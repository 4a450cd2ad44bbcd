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

#include "pencilspec/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace pencilspec {

double operator_norm(const CMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

void check_square(const CMatrix& a, const char* where) {
  if (a.rows() != a.cols() || a.rows() == 0)
    raise(ErrorKind::NonSquare, std::string(where) + ": matrix is " +
                                    std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()));
}

void check_finite(const CMatrix& a, const char* where) {
  if (!a.allFinite())
    raise(ErrorKind::NumericalError,
          std::string(where) + ": matrix has non-finite entries");
}

bool SpectralModel::spectrum_is_real(double tol) const {
  for (int i = 0; i < dim(); ++i)
    if (std::abs(eigenvalues(i).imag()) > tol) return false;
  return true;
}

bool SpectralModel::spectrum_nonpositive_real_part(double tol) const {
  for (int i = 0; i < dim(); ++i)
    if (eigenvalues(i).real() > tol) return false;
  return true;
}

double SpectralModel::biorthogonality_residual() const {
  CMatrix g = left_vectors.adjoint() * right_vectors;
  g -= CMatrix::Identity(dim(), dim());
  return g.cwiseAbs().maxCoeff();
}

double SpectralModel::reconstruction_residual(const CMatrix& a) const {
  CMatrix rebuilt =
      right_vectors * eigenvalues.asDiagonal() * left_vectors.adjoint();
  return operator_norm(a - rebuilt);
}

double SpectralModel::completeness_residual() const {
  CMatrix s = right_vectors * left_vectors.adjoint();
  s -= CMatrix::Identity(dim(), dim());
  return operator_norm(s);
}

namespace {

// Minimum pairwise distance over distinct eigenvalues. Pairs closer than
// merge_tol count as one repeated eigenvalue and do not force the gap to 0.
double spectral_gap(const CVector& lambda, double merge_tol) {
  const int n = static_cast<int>(lambda.size());
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d = std::abs(lambda(i) - lambda(j));
      if (d > merge_tol) gap = std::min(gap, d);
    }
  return std::isfinite(gap) ? gap : 0.0;
}

double wraparound_gap_cycles(const CVector& lambda, double alpha) {
  const int n = static_cast<int>(lambda.size());
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d = (lambda(i).real() - lambda(j).real()) / alpha;
      d = std::abs(d - std::round(d));
      const double merge = 1e-12;
      if (d > merge) gap = std::min(gap, d);
    }
  return std::isfinite(gap) ? gap : 0.0;
}

}  // namespace

SpectralModel eig_decompose(const CMatrix& a, const EigOptions& opts) {
  check_square(a, "eig_decompose");
  check_finite(a, "eig_decompose");
  const int n = static_cast<int>(a.rows());

  Eigen::ComplexEigenSolver<CMatrix> solver(a, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    raise(ErrorKind::NumericalError, "eig_decompose: eigensolver failed");

  // Deterministic ordering: Re descending, Im ascending.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const CVector raw_vals = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (raw_vals(i).real() != raw_vals(j).real())
      return raw_vals(i).real() > raw_vals(j).real();
    return raw_vals(i).imag() < raw_vals(j).imag();
  });

  SpectralModel model;
  model.eigenvalues.resize(n);
  model.right_vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    model.eigenvalues(k) = raw_vals(order[k]);
    CVector v = solver.eigenvectors().col(order[k]);
    model.right_vectors.col(k) = v / v.norm();
  }

  // Conditioning of the (column-normalized) eigenvector matrix gates the
  // near-defective rejection and doubles as the kappa_J estimate.
  Eigen::JacobiSVD<CMatrix> svd(model.right_vectors);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(n - 1);
  const double cond = smin > 0.0 ? smax / smin
                                 : std::numeric_limits<double>::infinity();
  if (!(cond < opts.near_defective_threshold))
    raise(ErrorKind::NearDefective,
          "eig_decompose: eigenvector condition " + std::to_string(cond) +
              " exceeds threshold; matrix is defective or too close to it");
  model.kappa_j = cond;

  // Left vectors from P^-1, with one Newton refinement when the raw solve
  // leaves biorthogonality residual above 1e-10.
  CMatrix pinv = model.right_vectors.partialPivLu().solve(CMatrix::Identity(n, n));
  CMatrix resid = pinv * model.right_vectors - CMatrix::Identity(n, n);
  if (resid.cwiseAbs().maxCoeff() > 1e-10)
    pinv = pinv - resid * pinv;
  model.left_vectors = pinv.adjoint();  // columns phi_i = conj(row i of P^-1)

  double norm_a = operator_norm(a);
  if (opts.alpha_a) {
    if (*opts.alpha_a < norm_a * (1.0 - 1e-12))
      raise(ErrorKind::PreconditionViolated,
            "eig_decompose: alpha_a below the spectral norm of A");
    model.alpha_a = *opts.alpha_a;
  } else {
    const double margin = opts.fourier_margin ? 2.01 : 1.01;
    model.alpha_a = norm_a > 0.0 ? margin * norm_a : 1.0;
  }

  const double scale = std::max(1.0, model.eigenvalues.cwiseAbs().maxCoeff());
  model.gap = spectral_gap(model.eigenvalues, 1e-12 * scale);
  model.normalized_gap = model.gap / model.alpha_a;
  if (model.spectrum_is_real(1e-9 * std::max(1.0, model.alpha_a)))
    model.wraparound_gap = wraparound_gap_cycles(model.eigenvalues, model.alpha_a);
  return model;
}

InitialState InitialState::density_matrix(const CMatrix& rho, bool purified) {
  check_square(rho, "InitialState::density_matrix");
  check_finite(rho, "InitialState::density_matrix");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12)
    raise(ErrorKind::PreconditionViolated,
          "density matrix is not Hermitian (residual " + std::to_string(herm) + ")");
  const double tr_err = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (tr_err > 1e-12)
    raise(ErrorKind::PreconditionViolated,
          "density matrix trace differs from 1 by " + std::to_string(tr_err));
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()));
  if (es.eigenvalues().minCoeff() < -1e-12)
    raise(ErrorKind::PreconditionViolated,
          "density matrix has eigenvalue " +
              std::to_string(es.eigenvalues().minCoeff()) + " < 0");
  InitialState s;
  s.kind_ = Kind::DensityMatrix;
  s.purified_ = purified;
  s.rho_ = rho;
  return s;
}

InitialState InitialState::pure_vector(const CVector& psi, bool purified) {
  if (psi.size() == 0)
    raise(ErrorKind::PreconditionViolated, "empty state vector");
  if (!psi.allFinite())
    raise(ErrorKind::NumericalError, "state vector has non-finite entries");
  if (std::abs(psi.norm() - 1.0) > 1e-12)
    raise(ErrorKind::PreconditionViolated,
          "state vector norm differs from 1 by " +
              std::to_string(std::abs(psi.norm() - 1.0)));
  InitialState s;
  s.kind_ = Kind::PureVector;
  s.purified_ = purified;
  s.psi_ = psi;
  return s;
}

int InitialState::dim() const {
  return kind_ == Kind::PureVector ? static_cast<int>(psi_.size())
                                   : static_cast<int>(rho_.rows());
}

CMatrix InitialState::density() const {
  if (kind_ == Kind::PureVector) return psi_ * psi_.adjoint();
  return rho_;
}

const CVector& InitialState::vector() const {
  if (kind_ != Kind::PureVector)
    raise(ErrorKind::PreconditionViolated,
          "InitialState::vector() on a density-matrix state");
  return psi_;
}

CVector SparseExpansion::support_eigenvalues(const SpectralModel& model) const {
  CVector out(sparsity());
  for (int i = 0; i < sparsity(); ++i) out(i) = model.eigenvalues(support[i]);
  return out;
}

SparseExpansion expand_initial_state(const InitialState& rho,
                                     const SpectralModel& model, int r_cap,
                                     double drop_tol) {
  if (rho.dim() != model.dim())
    raise(ErrorKind::DimensionMismatch,
          "expand_initial_state: state dim " + std::to_string(rho.dim()) +
              " vs model dim " + std::to_string(model.dim()));
  if (r_cap < 1)
    raise(ErrorKind::PreconditionViolated, "expand_initial_state: r_cap < 1");

  const int n = model.dim();
  const CMatrix dm = rho.density();
  CVector coeffs(n);
  for (int i = 0; i < n; ++i) {
    coeffs(i) = model.left_vectors.col(i).adjoint() * dm * model.right_vectors.col(i);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return std::abs(coeffs(i)) > std::abs(coeffs(j));
  });

  SparseExpansion exp;
  exp.full_diag_sum = coeffs.sum();
  for (int k = 0; k < n && static_cast<int>(exp.support.size()) < r_cap; ++k) {
    if (std::abs(coeffs(order[k])) > drop_tol) exp.support.push_back(order[k]);
  }
  exp.diag_coeffs.resize(exp.sparsity());
  Complex retained_sum = 0.0;
  double cmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < exp.sparsity(); ++i) {
    exp.diag_coeffs(i) = coeffs(exp.support[i]);
    retained_sum += exp.diag_coeffs(i);
    cmin = std::min(cmin, std::abs(exp.diag_coeffs(i)));
  }
  exp.c_min = exp.sparsity() > 0 ? cmin : 0.0;
  exp.discarded_diag_mass = exp.full_diag_sum - retained_sum;

  CMatrix diag_part =
      model.right_vectors * coeffs.asDiagonal() * model.left_vectors.adjoint();
  exp.residual_offdiag_norm = operator_norm(dm - diag_part);
  return exp;
}

HermitianSplit hermitian_split(const CMatrix& a) {
  check_square(a, "hermitian_split");
  check_finite(a, "hermitian_split");
  HermitianSplit out;
  out.hermitian = 0.5 * (a + a.adjoint());
  out.anti_hermitian = (a - a.adjoint()) / Complex(0.0, 2.0);
  return out;
}

double jordan_condition_estimate(const SpectralModel& model) {
  Eigen::JacobiSVD<CMatrix> svd(model.right_vectors);
  const int n = model.dim();
  return svd.singularValues()(0) / svd.singularValues()(n - 1);
}

}  // namespace pencilspec
