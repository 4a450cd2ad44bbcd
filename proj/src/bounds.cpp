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

#include "pencilspec/bounds.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace pencilspec {

namespace {
constexpr double kSqrtPi = 1.7724538509055160272981674833411;

double require(const CostParams& params, const char* key) {
  auto it = params.find(key);
  if (it == params.end())
    raise(ErrorKind::MissingParameter,
          std::string("query_cost_model: missing parameter '") + key + "'");
  return it->second;
}

double get_or(const CostParams& params, const char* key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}
}  // namespace

CVector elementary_symmetric(const CVector& z) {
  const int r = static_cast<int>(z.size());
  CVector e = CVector::Zero(r + 1);
  e(0) = 1.0;
  for (int k = 0; k < r; ++k)
    for (int m = std::min(k + 1, r); m >= 1; --m) e(m) += z(k) * e(m - 1);
  return e;
}

CMatrix vandermonde_matrix(const CVector& z) {
  const int r = static_cast<int>(z.size());
  CMatrix v(r, r);
  for (int j = 0; j < r; ++j) {
    Complex p = 1.0;
    for (int k = 0; k < r; ++k) {
      v(j, k) = p;
      p *= z(j);
    }
  }
  return v;
}

CMatrix vandermonde_inverse_explicit(const CVector& z) {
  const int r = static_cast<int>(z.size());
  if (r < 1)
    raise(ErrorKind::PreconditionViolated, "vandermonde_inverse_explicit: r < 1");
  const double scale = std::max(1.0, z.cwiseAbs().maxCoeff());
  for (int j = 0; j < r; ++j)
    for (int k = j + 1; k < r; ++k)
      if (std::abs(z(j) - z(k)) < 1e-14 * scale)
        raise(ErrorKind::CoincidentNodes,
              "vandermonde_inverse_explicit: nodes " + std::to_string(j) +
                  " and " + std::to_string(k) + " coincide");

  CMatrix w(r, r);
  for (int k = 0; k < r; ++k) {
    // Monic polynomial prod_{l != k} (x - z_l), built by product expansion;
    // its x^(j-1) coefficient is (-1)^(r-j) e_{r-j}(nodes without z_k).
    CVector poly = CVector::Zero(r);
    poly(0) = 1.0;
    int deg = 0;
    Complex denom = 1.0;
    for (int l = 0; l < r; ++l) {
      if (l == k) continue;
      for (int m = deg + 1; m >= 1; --m) poly(m) = poly(m - 1) - z(l) * poly(m);
      poly(0) = -z(l) * poly(0);
      ++deg;
      denom *= z(k) - z(l);
    }
    for (int j = 0; j < r; ++j) w(j, k) = poly(j) / denom;
  }
  return w;
}

CMatrix vandermonde_matrix_rect(const CVector& z, int rows) {
  const int r = static_cast<int>(z.size());
  if (rows < r)
    raise(ErrorKind::PreconditionViolated,
          "vandermonde_matrix_rect: fewer rows than nodes");
  CMatrix v(rows, r);
  for (int j = 0; j < r; ++j) {
    Complex p = 1.0;
    for (int t = 0; t < rows; ++t) {
      v(t, j) = p;
      p *= z(j);
    }
  }
  return v;
}

namespace {
VandermondeConditioning conditioning_of(const CMatrix& v) {
  Eigen::JacobiSVD<CMatrix> svd(v);
  VandermondeConditioning out;
  const auto& sigma = svd.singularValues();
  out.sigma_max = sigma(0);
  out.sigma_min = sigma(sigma.size() - 1);
  out.kappa = out.sigma_min > 0.0 ? out.sigma_max / out.sigma_min
                                  : std::numeric_limits<double>::infinity();
  return out;
}
}  // namespace

VandermondeConditioning vandermonde_conditioning(const CVector& z) {
  return conditioning_of(vandermonde_matrix(z));
}

VandermondeConditioning vandermonde_conditioning_rect(const CVector& z, int rows) {
  return conditioning_of(vandermonde_matrix_rect(z, rows));
}

double wraparound_gap_of_nodes(const CVector& z) {
  const int r = static_cast<int>(z.size());
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      double d = std::arg(z(i) / z(j)) / (2.0 * 3.14159265358979323846);
      d = std::abs(d - std::round(d));
      gap = std::min(gap, d);
    }
  return std::isfinite(gap) ? gap : 0.5;
}

double kappa_bound_general(int r, double delta) {
  if (r < 1) raise(ErrorKind::PreconditionViolated, "kappa_bound_general: r < 1");
  if (!(delta > 0.0 && delta <= 2.0))
    raise(ErrorKind::PreconditionViolated,
          "kappa_bound_general: Delta outside (0, 2]");
  return std::pow(2.0, r) * r / (kSqrtPi * std::pow(delta, r - 1));
}

double kappa_bound_fourier(int r, double delta_w) {
  if (!(delta_w > 0.0))
    raise(ErrorKind::PreconditionViolated, "kappa_bound_fourier: Delta_w <= 0");
  if (!(r > 1.0 / delta_w + 1.0))
    raise(ErrorKind::PreconditionViolated,
          "kappa_bound_fourier: requires r > 1/Delta_w + 1 (r = " +
              std::to_string(r) + ", 1/Delta_w = " + std::to_string(1.0 / delta_w) +
              ")");
  const double num = r + 1.0 / delta_w - 1.0;
  const double den = r - 1.0 / delta_w - 1.0;
  return std::sqrt(num / den);
}

double perturbation_bound(double e_norm, double kappa_v, double sigma_min_v,
                          double c_min) {
  if (e_norm < 0.0 || kappa_v <= 0.0 || sigma_min_v <= 0.0 || c_min <= 0.0)
    raise(ErrorKind::PreconditionViolated, "perturbation_bound: bad arguments");
  return e_norm * (kappa_v * kappa_v + kappa_v) / (sigma_min_v * sigma_min_v * c_min);
}

double fourier_perturbation_bound(double e_norm, double kappa_v, int r,
                                  double c_min) {
  if (e_norm < 0.0 || kappa_v <= 0.0 || r < 1 || c_min <= 0.0)
    raise(ErrorKind::PreconditionViolated,
          "fourier_perturbation_bound: bad arguments");
  const double k2 = kappa_v * kappa_v;
  return e_norm * (k2 * k2 + k2 * kappa_v) / (r * c_min);
}

double bernstein_tail(int r, std::int64_t m, double gamma,
                      std::optional<double> r_bound,
                      std::optional<double> sigma2) {
  if (r < 1 || m < 1 || gamma < 0.0)
    raise(ErrorKind::PreconditionViolated, "bernstein_tail: bad arguments");
  const double rb = r_bound.value_or(2.0 * std::sqrt(2.0) * r);
  const double s2 = sigma2.value_or(2.0 * static_cast<double>(r) * m);
  if (gamma == 0.0) return 2.0 * r;
  return 2.0 * r * std::exp(-(gamma * gamma / 2.0) / (s2 + rb * gamma / 3.0));
}

double sample_complexity_general(int r, double delta_gap, double eps1,
                                 double c_min, double delta_fail,
                                 double leading_constant) {
  if (r < 1 || !(delta_gap > 0.0) || !(eps1 > 0.0) || !(c_min > 0.0) ||
      !(delta_fail > 0.0 && delta_fail < 1.0) || !(leading_constant > 0.0))
    raise(ErrorKind::PreconditionViolated, "sample_complexity_general: bad arguments");
  const double frac =
      std::pow(delta_gap, 4.0 * r) * eps1 * c_min;
  const double m = leading_constant * std::pow(static_cast<double>(r), 5) *
                   std::pow(2.0, 8.0 * r) / (frac * frac) *
                   std::log(static_cast<double>(r) / delta_fail);
  return std::max(1.0, std::ceil(m));
}

double entrywise_to_operator_norm(int r, double eps_entry) {
  if (r < 1 || eps_entry < 0.0)
    raise(ErrorKind::PreconditionViolated, "entrywise_to_operator_norm: bad arguments");
  return r * eps_entry;
}

const char* to_string(CostRegime regime) {
  switch (regime) {
    case CostRegime::GeneralSample: return "general_sample";
    case CostRegime::GeneralPurified: return "general_purified";
    case CostRegime::RealSample: return "real_sample";
    case CostRegime::RealPurified: return "real_purified";
    case CostRegime::ComplexSample: return "complex_sample";
    case CostRegime::ComplexPurified: return "complex_purified";
  }
  return "?";
}

QueryCost query_cost_model(CostRegime regime, const CostParams& params) {
  const double r = require(params, "r");
  const double eps = require(params, "eps");
  const double delta = require(params, "delta");
  const double c_min = require(params, "c_min");
  const double alpha = require(params, "alpha_a");
  QueryCost cost;

  switch (regime) {
    case CostRegime::GeneralSample: {
      const double dp = require(params, "delta_prime");
      const double denom = std::pow(dp, 4.0 * r) * eps * c_min;
      cost.max_coherent_queries = r;
      cost.sample_count = std::pow(r, 5) * std::pow(alpha, 4.0 * r) *
                          std::pow(2.0, 8.0 * r) / (denom * denom) *
                          std::log(2.0 * r / delta);
      cost.total_queries = cost.max_coherent_queries * cost.sample_count;
      return cost;
    }
    case CostRegime::GeneralPurified: {
      const double dp = require(params, "delta_prime");
      const double denom = std::pow(dp, 4.0 * r) * eps * c_min;
      cost.max_coherent_queries = std::pow(r, 3) * std::pow(alpha, 2.0 * r) *
                                  std::pow(2.0, 4.0 * r) / denom *
                                  std::log(r / delta);
      cost.sample_count = r;
      cost.total_queries = cost.max_coherent_queries * cost.sample_count;
      return cost;
    }
    case CostRegime::RealSample:
    case CostRegime::RealPurified: {
      const double kj = require(params, "kappa_j");
      double kv = get_or(params, "kappa_v", 0.0);
      if (kv <= 0.0) {
        const double dw = require(params, "delta_w");
        kv = kappa_bound_fourier(static_cast<int>(std::lround(r)), dw);
      }
      const double kv4 = std::pow(kv, 4);
      const double d = r + std::log(kj * kv * alpha / (c_min * eps));
      const double log1 =
          std::log(r * std::sqrt(d) * kj * alpha * kv / (c_min * eps));
      const double log2 = std::log(r * alpha * kv / (c_min * eps));
      if (regime == CostRegime::RealSample) {
        cost.max_coherent_queries = std::pow(d, 1.5) * kj * kj * log1 * log2;
        cost.sample_count = kv4 * kv4 * alpha * alpha / (c_min * c_min * eps * eps) *
                            std::log(r / delta);
      } else {
        cost.max_coherent_queries = alpha * kv4 * std::pow(d, 1.5) * kj * kj /
                                    (c_min * eps) * log1 * log2 *
                                    std::log(r / delta);
        cost.sample_count = r;
      }
      cost.total_queries = cost.max_coherent_queries * cost.sample_count;
      return cost;
    }
    case CostRegime::ComplexSample:
    case CostRegime::ComplexPurified: {
      const double dp = require(params, "delta_prime");
      const double zeta = get_or(params, "zeta", 0.0);
      const double ab = get_or(params, "alpha_beta", 1.0);
      const double af = get_or(params, "alpha_fprime", 1.0);
      const double block = std::pow(r, 3) * std::pow(2.0, 4.0 * r) /
                           (eps * c_min * std::pow(dp, 4.0 * r));
      const double d = std::exp(zeta) * r + std::log(block);
      const double log1 = std::log(alpha * ab * std::sqrt(d) * af * block);
      const double log2 = std::log(alpha * block);
      if (regime == CostRegime::ComplexSample) {
        cost.max_coherent_queries = ab * std::pow(d, 1.5) * af * af * log1 * log2;
        cost.sample_count = std::pow(r, 5) * std::pow(2.0, 8.0 * r) * alpha * alpha /
                            std::pow(std::pow(dp, 4.0 * r) * eps * c_min, 2) *
                            std::log(r / delta);
        cost.total_queries = cost.max_coherent_queries * cost.sample_count;
      } else {
        cost.max_coherent_queries =
            block * alpha * ab * std::pow(d, 1.5) * af * af * log1 * log2;
        cost.sample_count = r;
        cost.total_queries = cost.max_coherent_queries * cost.sample_count *
                             std::log(r / delta);
      }
      return cost;
    }
  }
  raise(ErrorKind::PreconditionViolated, "query_cost_model: unknown cost regime");
}

}  // namespace pencilspec
