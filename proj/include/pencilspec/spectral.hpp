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

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "pencilspec/error.hpp"

namespace pencilspec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Spectral (operator 2-) norm.
double operator_norm(const CMatrix& m);

void check_square(const CMatrix& a, const char* where);
void check_finite(const CMatrix& a, const char* where);

/// Eigen-decomposition of a diagonalizable matrix in biorthogonal form:
/// A = sum_i lambda_i |psi_i><phi_i| with <phi_i|psi_j> = delta_ij.
/// Right vectors are the unit-norm columns of P; left vectors are the
/// conjugated rows of P^-1, stored as columns of `left_vectors` so that
/// left_vectors.col(i).adjoint() * right_vectors.col(j) == delta_ij.
struct SpectralModel {
  CVector eigenvalues;    // sorted by (Re descending, Im ascending)
  CMatrix right_vectors;  // psi_i as columns, unit L2 norm
  CMatrix left_vectors;   // phi_i as columns
  double alpha_a = 1.0;   // normalization, >= ||A||
  double kappa_j = 1.0;   // cond of the column-normalized eigenvector matrix
  double gap = 0.0;       // min |lambda_j - lambda_k| over distinct eigenvalues
  double normalized_gap = 0.0;  // gap / alpha_a
  // Wrap-around gap of the normalized spectrum, in fractions of a full
  // turn: min_{j!=k} min_m |(lambda_j - lambda_k)/alpha_a + m|.
  // Present only when the spectrum is real.
  std::optional<double> wraparound_gap;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
  bool spectrum_is_real(double tol) const;
  bool spectrum_nonpositive_real_part(double tol) const;
  /// Max |<phi_i|psi_j> - delta_ij|.
  double biorthogonality_residual() const;
  /// ||A - sum_i lambda_i |psi_i><phi_i|||.
  double reconstruction_residual(const CMatrix& a) const;
  /// ||sum_i |psi_i><phi_i| - I||.
  double completeness_residual() const;
};

struct EigOptions {
  std::optional<double> alpha_a;  // explicit normalization; must be >= ||A||
  // Selects the default margin when alpha_a is omitted: 1.01*||A|| for the
  // power/complex-exponential pipelines, 2.01*||A|| for the Fourier one.
  bool fourier_margin = false;
  double near_defective_threshold = 1e8;  // reject when cond(P) exceeds this
};

SpectralModel eig_decompose(const CMatrix& a, const EigOptions& opts = {});

/// Density matrix or pure vector fed into the estimation pipeline.
class InitialState {
 public:
  enum class Kind { DensityMatrix, PureVector };

  InitialState() = default;  // empty placeholder; build via the factories

  static InitialState density_matrix(const CMatrix& rho, bool purified = false);
  static InitialState pure_vector(const CVector& psi, bool purified = true);

  Kind kind() const { return kind_; }
  bool purified() const { return purified_; }
  int dim() const;
  /// Density-matrix view (|psi><psi| for pure inputs).
  CMatrix density() const;
  const CVector& vector() const;  // pure inputs only

 private:
  Kind kind_ = Kind::DensityMatrix;
  bool purified_ = false;
  CMatrix rho_;
  CVector psi_;
};

/// Diagonal eigenbasis expansion of an initial state, truncated to the
/// dominant components. Coefficients are c_i = <phi_i| rho |psi_i>.
struct SparseExpansion {
  std::vector<int> support;       // indices into the model, |c| descending
  CVector diag_coeffs;            // c_i for the retained indices
  double c_min = 0.0;             // min |c_i| over the retained set
  Complex full_diag_sum;          // sum of c_i over the full basis (= tr rho)
  Complex discarded_diag_mass;    // sum of c_i outside the retained set
  double residual_offdiag_norm = 0.0;  // ||rho - sum_i c_i |psi_i><phi_i|||, full basis

  int sparsity() const { return static_cast<int>(support.size()); }
  /// Eigenvalues of the retained components, in support order.
  CVector support_eigenvalues(const SpectralModel& model) const;
};

SparseExpansion expand_initial_state(const InitialState& rho,
                                     const SpectralModel& model, int r_cap,
                                     double drop_tol);

/// A = A_h + i*A_a with both parts Hermitian.
struct HermitianSplit {
  CMatrix hermitian;       // (A + A^dag)/2
  CMatrix anti_hermitian;  // (A - A^dag)/(2i)
};

HermitianSplit hermitian_split(const CMatrix& a);

/// ||P||*||P^-1|| of the column-normalized eigenvector matrix. An upper
/// estimate of the Jordan condition number; the true infimum over all
/// diagonalizers is not computed.
double jordan_condition_estimate(const SpectralModel& model);

}  // namespace pencilspec
