// Test-only oracles, independent of the library paths they check.

#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "pencilspec/spectral.hpp"

namespace oracles {

using pencilspec::CMatrix;
using pencilspec::Complex;
using pencilspec::CVector;

// Closed-form biorthogonal decomposition of [[1, 1], [0, 0.5]]:
// lambda = {1, 0.5}; psi_1 = (1,0), psi_2 = (2,-1)/sqrt(5);
// phi_1 = (1,2), phi_2 = (0,-sqrt(5)).
struct UpperTriangular2x2 {
  CMatrix a;
  CVector lambda;
  CMatrix right;
  CMatrix left;

  UpperTriangular2x2() {
    a.resize(2, 2);
    a << 1.0, 1.0, 0.0, 0.5;
    lambda.resize(2);
    lambda << 1.0, 0.5;
    const double s5 = std::sqrt(5.0);
    right.resize(2, 2);
    right << 1.0, 2.0 / s5, 0.0, -1.0 / s5;
    left.resize(2, 2);
    left << 1.0, 0.0, 2.0, -s5;
  }
};

// Singular values of a 2x2 complex matrix from the eigenvalues of M^dag M.
inline std::pair<double, double> singular_values_2x2(const CMatrix& m) {
  const CMatrix g = m.adjoint() * m;
  const double t = g.trace().real();
  const double d = std::abs(std::norm(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)));
  const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * d));
  return {std::sqrt((t + disc) / 2.0), std::sqrt((t - disc) / 2.0)};
}

// Prony route: solve the Hankel linear system for the monic polynomial with
// the signal modes as roots, then read the roots off the companion matrix.
// Shares no code with the pencil solver.
inline CVector prony_roots(const CVector& series, int r) {
  CMatrix h0(r, r);
  CVector rhs(r);
  for (int j = 0; j < r; ++j) {
    for (int k = 0; k < r; ++k) h0(j, k) = series(j + k);
    rhs(j) = -series(r + j);
  }
  const CVector alpha = h0.partialPivLu().solve(rhs);
  CMatrix companion = CMatrix::Zero(r, r);
  for (int i = 1; i < r; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < r; ++i) companion(i, r - 1) = -alpha(i);
  Eigen::ComplexEigenSolver<CMatrix> es(companion, false);
  return es.eigenvalues();
}

// Exhaustive minimum-cost assignment for small problems.
inline double brute_force_matched_error(const CVector& est, const CVector& truth) {
  const int ne = static_cast<int>(est.size());
  const int nt = static_cast<int>(truth.size());
  const int n = std::min(ne, nt);
  std::vector<int> longer(std::max(ne, nt));
  std::iota(longer.begin(), longer.end(), 0);
  double best_total = 1e300;
  double best_max = 1e300;
  do {
    double total = 0.0, worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double c = ne <= nt ? std::abs(est(i) - truth(longer[i]))
                                : std::abs(est(longer[i]) - truth(i));
      total += c;
      worst = std::max(worst, c);
    }
    if (total < best_total) {
      best_total = total;
      best_max = worst;
    }
  } while (std::next_permutation(longer.begin(), longer.end()));
  return best_max;
}

// max_i min_j |est_i - truth_j|.
inline double one_sided(const CVector& est, const CVector& truth) {
  double worst = 0.0;
  for (int i = 0; i < est.size(); ++i) {
    double best = 1e300;
    for (int j = 0; j < truth.size(); ++j)
      best = std::min(best, std::abs(est(i) - truth(j)));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace oracles
