#include <random>

#include "doctest.h"
#include "pencilspec/spectral.hpp"
#include "support/test_oracles.hpp"

using namespace pencilspec;

namespace {

CMatrix random_diagonalizable(int n, std::mt19937_64& rng, double nonnormality) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  CMatrix p(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<CMatrix> qr(p);
  CMatrix q = qr.householderQ();
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  g *= nonnormality / operator_norm(g);
  CMatrix diag = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) diag(i, i) = Complex(unif(rng), unif(rng));
  const CMatrix pp = q * (CMatrix::Identity(n, n) + g);
  return pp * diag * pp.partialPivLu().inverse();
}

}  // namespace

TEST_CASE("eig_decompose on a diagonal matrix") {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 0.5;
  const SpectralModel m = eig_decompose(a);
  CHECK(m.eigenvalues(0) == Complex(1.0, 0.0));
  CHECK(m.eigenvalues(1) == Complex(0.5, 0.0));
  CHECK(std::abs(std::abs(m.right_vectors(0, 0)) - 1.0) < 1e-14);
  CHECK(m.biorthogonality_residual() < 1e-12);
  CHECK(m.gap == doctest::Approx(0.5));
  // 1.01 margin over the spectral norm
  CHECK(m.alpha_a == doctest::Approx(1.01));
}

TEST_CASE("eig_decompose matches the closed-form 2x2 decomposition") {
  const oracles::UpperTriangular2x2 oracle;
  const SpectralModel m = eig_decompose(oracle.a);
  CHECK(std::abs(m.eigenvalues(0) - oracle.lambda(0)) < 1e-12);
  CHECK(std::abs(m.eigenvalues(1) - oracle.lambda(1)) < 1e-12);
  // Eigenvectors match up to phase.
  for (int i = 0; i < 2; ++i) {
    const Complex overlap =
        (m.right_vectors.col(i).adjoint() * oracle.right.col(i))(0, 0);
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-12);
  }
  // Left vectors are non-orthogonal to each other and kappa_J > 1.
  CHECK(m.kappa_j > 1.0);
  const auto [smax, smin] = oracles::singular_values_2x2(oracle.right);
  CHECK(m.kappa_j == doctest::Approx(smax / smin).epsilon(1e-10));
}

TEST_CASE("eig_decompose rejects a Jordan block") {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(eig_decompose(a), Error);
  try {
    eig_decompose(a);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NearDefective);
  }
}

TEST_CASE("eig_decompose rejects non-square and non-finite input") {
  CMatrix a = CMatrix::Zero(2, 3);
  CHECK_THROWS_AS(eig_decompose(a), Error);
  CMatrix b = CMatrix::Zero(2, 2);
  b(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eig_decompose(b), Error);
}

TEST_CASE("explicit alpha below the spectral norm is rejected") {
  CMatrix a = CMatrix::Identity(2, 2) * 3.0;
  EigOptions opts;
  opts.alpha_a = 1.0;
  CHECK_THROWS_AS(eig_decompose(a, opts), Error);
}

TEST_CASE("model invariants hold on random diagonalizable matrices") {
  std::mt19937_64 rng(421);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 31);
    const CMatrix a = random_diagonalizable(n, rng, 0.3);
    const SpectralModel m = eig_decompose(a);
    CAPTURE(trial);
    CHECK(m.biorthogonality_residual() <= 1e-10);
    CHECK(m.reconstruction_residual(a) <= 1e-8 * std::max(1.0, operator_norm(a)));
    CHECK(m.completeness_residual() <= 1e-8);
    // Deterministic eigenvalue order.
    for (int i = 1; i < n; ++i) {
      CHECK(m.eigenvalues(i - 1).real() >=
            m.eigenvalues(i).real() - 1e-15);
    }
  }
}

TEST_CASE("expand_initial_state on diag(1,-1) with the plus state") {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = -1.0;
  const SpectralModel m = eig_decompose(a);
  CVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const SparseExpansion exp =
      expand_initial_state(InitialState::pure_vector(plus), m, 2, 1e-12);
  REQUIRE(exp.sparsity() == 2);
  CHECK(std::abs(exp.diag_coeffs(0) - Complex(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(exp.diag_coeffs(1) - Complex(0.5, 0.0)) < 1e-12);
  CHECK(exp.c_min == doctest::Approx(0.5));
  CHECK(std::abs(exp.full_diag_sum - Complex(1.0, 0.0)) < 1e-10);
}

TEST_CASE("expansion coefficients against the 2x2 closed form") {
  const oracles::UpperTriangular2x2 oracle;
  const SpectralModel m = eig_decompose(oracle.a);
  CMatrix rho = CMatrix::Zero(2, 2);
  rho(0, 0) = 1.0;  // |0><0|
  const SparseExpansion exp =
      expand_initial_state(InitialState::density_matrix(rho), m, 2, 1e-14);
  // c_1 = <phi_1|0><0|psi_1> = 1, c_2 = <phi_2|0><0|psi_2> = 0.
  REQUIRE(exp.sparsity() >= 1);
  CHECK(std::abs(exp.diag_coeffs(0) - Complex(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(exp.full_diag_sum - Complex(1.0, 0.0)) < 1e-10);
}

TEST_CASE("full expansion sums to the trace on random instances") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 10);
    const CMatrix a = random_diagonalizable(n, rng, 0.4);
    const SpectralModel m = eig_decompose(a);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    const SparseExpansion exp =
        expand_initial_state(InitialState::density_matrix(rho), m, n, 0.0);
    CHECK(std::abs(exp.full_diag_sum - Complex(1.0, 0.0)) <= 1e-10);
  }
}

TEST_CASE("non-Hermitian density payload is rejected") {
  CMatrix rho(2, 2);
  rho << 0.5, Complex(0.1, 0.2), Complex(0.3, -0.1), 0.5;
  CHECK_THROWS_AS(InitialState::density_matrix(rho), Error);
  // A right/left dyad |psi_1><phi_1| of a non-normal matrix is generally
  // non-Hermitian and must be refused as well.
  const oracles::UpperTriangular2x2 oracle;
  CMatrix dyad = oracle.right.col(0) * oracle.left.col(0).adjoint();
  CHECK_THROWS_AS(InitialState::density_matrix(dyad), Error);
}

TEST_CASE("state validation enforces trace, positivity and norm") {
  CMatrix rho = CMatrix::Identity(2, 2);  // trace 2
  CHECK_THROWS_AS(InitialState::density_matrix(rho), Error);
  CMatrix neg(2, 2);
  neg << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(InitialState::density_matrix(neg), Error);
  CVector v(2);
  v << 1.0, 1.0;
  CHECK_THROWS_AS(InitialState::pure_vector(v), Error);
}

TEST_CASE("hermitian_split identities") {
  SUBCASE("Hermitian input maps to (A, 0)") {
    CMatrix h(2, 2);
    h << 1.0, Complex(0.2, 0.3), Complex(0.2, -0.3), -0.5;
    const HermitianSplit s = hermitian_split(h);
    CHECK((s.hermitian - h).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(s.anti_hermitian.cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("i*H maps to (0, H)") {
    CMatrix h(2, 2);
    h << 1.0, Complex(0.2, 0.3), Complex(0.2, -0.3), -0.5;
    const CMatrix a = Complex(0, 1) * h;
    const HermitianSplit s = hermitian_split(a);
    CHECK(s.hermitian.cwiseAbs().maxCoeff() < 1e-15);
    CHECK((s.anti_hermitian - h).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("entrywise arithmetic on the 2x2 example") {
    const oracles::UpperTriangular2x2 oracle;
    const HermitianSplit s = hermitian_split(oracle.a);
    CMatrix expected_h(2, 2);
    expected_h << 1.0, 0.5, 0.5, 0.5;
    CMatrix expected_a(2, 2);
    expected_a << 0.0, Complex(0.0, -0.5), Complex(0.0, 0.5), 0.0;
    CHECK((s.hermitian - expected_h).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((s.anti_hermitian - expected_a).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("round trip is exact") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix a(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
    const HermitianSplit s = hermitian_split(a);
    const CMatrix back = s.hermitian + Complex(0, 1) * s.anti_hermitian;
    CHECK((back - a).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("jordan_condition_estimate") {
  SUBCASE("normal matrices sit at 1") {
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 3.0;
    a(1, 1) = -1.0;
    CHECK(jordan_condition_estimate(eig_decompose(a)) == doctest::Approx(1.0).epsilon(1e-8));
    CMatrix h(3, 3);
    h << 1.0, Complex(0, 0.5), 0.2, Complex(0, -0.5), 0.3, 0.0, 0.2, 0.0, -2.0;
    CHECK(jordan_condition_estimate(eig_decompose(h)) ==
          doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("strong shear pushes the estimate up, matching the SVD oracle") {
    CMatrix a(2, 2);
    a << 1.0, 10.0, 0.0, 0.5;
    const SpectralModel m = eig_decompose(a);
    const double est = jordan_condition_estimate(m);
    CHECK(est > 10.0);
    const auto [smax, smin] = oracles::singular_values_2x2(m.right_vectors);
    CHECK(est == doctest::Approx(smax / smin).epsilon(1e-9));
  }
}
