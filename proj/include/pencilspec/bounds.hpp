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

#include <map>
#include <optional>
#include <string>

#include "pencilspec/spectral.hpp"

namespace pencilspec {

/// One evaluated bound, optionally paired with an empirical observation.
/// Every asymptotic formula is evaluated with explicit leading constants
/// defaulting to 1 and is a scaling model, not an absolute prediction.
struct BoundReport {
  std::string name;
  double predicted = 0.0;
  std::optional<double> observed;
  std::optional<bool> satisfied;
  std::map<std::string, double> params;
};

/// Elementary symmetric polynomials e_0..e_r of the given nodes, by the
/// product expansion of prod_k (x + z_k).
CVector elementary_symmetric(const CVector& z);

/// Explicit inverse of the Vandermonde matrix V[j][k] = z_j^(k-1):
/// W[j][k] = (-1)^(r-j) e_{r-j}(z without z_k) / prod_{l != k} (z_k - z_l),
/// so that V W = I. Nodes must be pairwise distinct.
CMatrix vandermonde_inverse_explicit(const CVector& z);

/// Vandermonde matrix V[j][k] = z_j^(k-1) for the given nodes.
CMatrix vandermonde_matrix(const CVector& z);

/// Rectangular variant with `rows` sample powers per node column:
/// V[t][j] = z_j^t, t = 0..rows-1. The wrap-around conditioning bound
/// speaks about this shape, with `rows` playing the sample count.
CMatrix vandermonde_matrix_rect(const CVector& z, int rows);

struct VandermondeConditioning {
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  double kappa = 0.0;
};

/// Exact singular values / condition number (SVD; intended for r <= 64).
VandermondeConditioning vandermonde_conditioning(const CVector& z);
VandermondeConditioning vandermonde_conditioning_rect(const CVector& z, int rows);

/// Minimal pairwise wrap-around distance of the node phases, measured in
/// fractions of a full turn.
double wraparound_gap_of_nodes(const CVector& z);

/// kappa(V) <= 2^r r / (sqrt(pi) Delta^(r-1)) for nodes in the unit disk
/// with pairwise gap Delta.
double kappa_bound_general(int r, double delta);

/// Fourier-mode bound sqrt((r + 1/Delta_w - 1)/(r - 1/Delta_w - 1));
/// Delta_w is the wrap-around gap in fractions of a full turn. Requires
/// r > 1/Delta_w + 1.
double kappa_bound_fourier(int r, double delta_w);

/// First-order eigenvalue-shift bound ||E|| (kappa^2 + kappa) /
/// (sigma_min(V)^2 c_min) for noisy Hankel pairs.
double perturbation_bound(double e_norm, double kappa_v, double sigma_min_v,
                          double c_min);

/// Fourier-mode variant ||E|| (kappa^4 + kappa^3) / (r c_min).
double fourier_perturbation_bound(double e_norm, double kappa_v, int r,
                                  double c_min);

/// Matrix-Bernstein tail (d1 + d2) exp(-(gamma^2/2)/(sigma^2 + R gamma/3))
/// with d1 = d2 = r. Defaults: R = 2 sqrt(2) r, sigma^2 = 2 r m.
double bernstein_tail(int r, std::int64_t m, double gamma,
                      std::optional<double> r_bound = std::nullopt,
                      std::optional<double> sigma2 = std::nullopt);

/// Shots per signal entry sufficient for eps1 accuracy of the recovered
/// generalized eigenvalues: C * r^5 2^(8r) / (Delta^(4r) eps1 c_min)^2 *
/// log(r/delta), ceiled. Returned as a double since the unit-constant value
/// overflows 64-bit integers for small gaps.
double sample_complexity_general(int r, double delta_gap, double eps1,
                                 double c_min, double delta_fail,
                                 double leading_constant = 1.0);

/// Per-entry accuracy budget inflated to an operator-norm budget:
/// ||E|| <= r * eps_entry (Frobenius route used throughout the analysis).
double entrywise_to_operator_norm(int r, double eps_entry);

enum class CostRegime {
  GeneralSample,
  GeneralPurified,
  RealSample,
  RealPurified,
  ComplexSample,
  ComplexPurified,
};

const char* to_string(CostRegime regime);

struct QueryCost {
  double max_coherent_queries = 0.0;
  double sample_count = 0.0;
  double total_queries = 0.0;
};

using CostParams = std::map<std::string, double>;

/// Evaluates the six query/sample cost models with unit constants.
/// Expected keys (per regime): r, eps, delta, c_min, alpha_a, and
/// delta_prime / delta_w / kappa_v / kappa_j / zeta / alpha_beta /
/// alpha_fprime as the variant requires. Missing keys raise
/// MissingParameter. kappa_v, when absent for the real variants, is derived
/// from delta_w via the Fourier bound.
QueryCost query_cost_model(CostRegime regime, const CostParams& params);

}  // namespace pencilspec
