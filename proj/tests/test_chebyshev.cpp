#include <cmath>

#include "doctest.h"
#include "pencilspec/chebyshev.hpp"
#include "pencilspec/generator.hpp"

using namespace pencilspec;

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

TEST_CASE("chebyshev coefficients of low-degree polynomials") {
  SUBCASE("f(x) = x is T_1") {
    const PolySeries s = chebyshev_coeffs([](Complex x) { return x; }, 4);
    CHECK(std::abs(s.coeffs(0)) < 1e-13);  // rescaled beta_0 = 2*beta_0
    CHECK(std::abs(s.coeffs(1) - Complex(1.0, 0.0)) < 1e-13);
    CHECK(std::abs(s.coeffs(2)) < 1e-13);
    CHECK(std::abs(s.coeffs(3)) < 1e-13);
  }
  SUBCASE("f(x) = 2x^2 - 1 is T_2") {
    const PolySeries s =
        chebyshev_coeffs([](Complex x) { return 2.0 * x * x - 1.0; }, 5);
    CHECK(std::abs(s.coeffs(2) - Complex(1.0, 0.0)) < 1e-13);
    for (const int j : {0, 1, 3, 4}) CHECK(std::abs(s.coeffs(j)) < 1e-13);
  }
  SUBCASE("constant term carries the rescaled convention") {
    const PolySeries s = chebyshev_coeffs([](Complex) { return 3.0; }, 3);
    // f = beta_0 T_0 with beta_0 = 3; stored is 2*beta_0.
    CHECK(std::abs(s.coeffs(0) - Complex(6.0, 0.0)) < 1e-12);
    CHECK(std::abs(eval_series_scalar(s, 0.37) - Complex(3.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("fourier kernel expansion reaches 1e-10 at d = 40") {
  const PolySeries s = chebyshev_coeffs(SignalFamily::Fourier, 1, 40);
  CHECK(kernel_series_residual(s, SignalFamily::Fourier, 1) <= 1e-10);
}

TEST_CASE("clenshaw evaluation matches naive summation and closed forms") {
  SUBCASE("T_3 at 0.5") {
    PolySeries t3;
    t3.basis = PolySeries::Basis::ChebyshevFirstKind;
    t3.coeffs = CVector::Zero(4);
    t3.coeffs(3) = 1.0;
    CHECK(std::abs(eval_series_scalar(t3, 0.5) - Complex(-1.0, 0.0)) < 1e-14);
  }
  SUBCASE("T_2 at 0.5") {
    PolySeries t2;
    t2.basis = PolySeries::Basis::ChebyshevFirstKind;
    t2.coeffs = CVector::Zero(3);
    t2.coeffs(2) = 1.0;
    CHECK(std::abs(eval_series_scalar(t2, 0.5) - Complex(-0.5, 0.0)) < 1e-14);
  }
  SUBCASE("random series vs term-by-term recurrence") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g(0.0, 1.0);
    PolySeries s;
    s.basis = PolySeries::Basis::ChebyshevFirstKind;
    s.coeffs.resize(100);
    for (int j = 0; j < 100; ++j) s.coeffs(j) = Complex(g(rng), g(rng));
    for (const double x : {-1.0, -0.77, -0.2, 0.0, 0.31, 0.9, 1.0}) {
      Complex naive = 0.5 * s.coeffs(0);
      double t_prev = 1.0, t_cur = x;
      for (int j = 1; j < 100; ++j) {
        naive += s.coeffs(j) * t_cur;
        const double t_next = 2.0 * x * t_cur - t_prev;
        t_prev = t_cur;
        t_cur = t_next;
      }
      CHECK(std::abs(eval_series_scalar(s, x) - naive) <= 1e-12 * 100.0);
    }
  }
  SUBCASE("domain violations are rejected") {
    PolySeries s;
    s.coeffs = CVector::Ones(3);
    CHECK_THROWS_AS(eval_series_scalar(s, 1.5), Error);
    PolySeries f;
    f.basis = PolySeries::Basis::FaberUnitDisk;
    f.coeffs = CVector::Ones(3);
    CHECK_THROWS_AS(eval_series_scalar(f, Complex(1.2, 0.3)), Error);
  }
}

TEST_CASE("chebyshev recurrence matches the trigonometric definition") {
  for (int d = 0; d <= 100; d += 7) {
    PolySeries s;
    s.basis = PolySeries::Basis::ChebyshevFirstKind;
    s.coeffs = CVector::Zero(d + 1);
    s.coeffs(d) = 1.0;
    if (d == 0) s.coeffs(0) = 2.0;  // T_0 through the rescaled convention
    for (int k = 0; k <= 20; ++k) {
      const double theta = kPi * k / 20.0;
      const double expected = std::cos(d * theta);
      CHECK(std::abs(eval_series_scalar(s, std::cos(theta)) -
                     Complex(expected, 0.0)) <= 1e-10);
    }
  }
}

TEST_CASE("faber-disk series of the exponential kernel") {
  const PolySeries s = faber_disk_exp_coeffs(2.0, 12);
  double fact = 1.0;
  for (int k = 0; k < 12; ++k) {
    CHECK(std::abs(s.coeffs(k) - Complex(std::pow(2.0, k) / fact, 0.0)) < 1e-12);
    fact *= (k + 1);
  }
  CHECK(std::abs(eval_series_scalar(s, Complex(0.0, 0.0)) - Complex(1.0, 0.0)) <
        1e-15);
}

TEST_CASE("matrix evaluation") {
  SUBCASE("diagonal matrices evaluate entrywise") {
    const PolySeries s = chebyshev_coeffs(SignalFamily::Fourier, 1, 40);
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 0.25;
    a(1, 1) = -0.25;
    const CMatrix f = eval_series_matrix(s, a);
    CHECK(std::abs(f(0, 0) - eval_series_scalar(s, 0.25)) < 1e-12);
    CHECK(std::abs(f(1, 1) - eval_series_scalar(s, -0.25)) < 1e-12);
    CHECK(std::abs(f(0, 1)) < 1e-12);
    // against the exact exponential e^{-2 pi i lambda}
    CHECK(std::abs(f(0, 0) - std::exp(Complex(0, -2.0 * kPi * 0.25))) <= 1e-9);
  }
  SUBCASE("identity polynomial returns the input") {
    PolySeries id;
    id.basis = PolySeries::Basis::ChebyshevFirstKind;
    id.coeffs = CVector::Zero(2);
    id.coeffs(1) = 1.0;
    CMatrix a(2, 2);
    a << 0.3, 0.2, 0.0, -0.4;
    CHECK((eval_series_matrix(id, a) - a).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("non-normal matrix against the eigenbasis route") {
    std::mt19937_64 rng(8);
    InstanceSpec spec;
    spec.n = 6;
    spec.r = 2;
    spec.spectrum = SpectrumKind::Real;
    spec.min_c_min = 0.2;
    spec.fourier_margin = true;
    const Instance inst = generate_instance(spec, rng);
    const CMatrix a_norm = inst.a / inst.model.alpha_a;
    const PolySeries s = chebyshev_coeffs(SignalFamily::Fourier, 2, 60);
    const CMatrix via_series = eval_series_matrix(s, a_norm);
    CVector fvals(inst.model.dim());
    for (int i = 0; i < inst.model.dim(); ++i)
      fvals(i) = std::exp(Complex(0, -2.0 * kPi * 2.0) *
                          (inst.model.eigenvalues(i) / inst.model.alpha_a));
    const CMatrix via_eigen = inst.model.right_vectors * fvals.asDiagonal() *
                              inst.model.left_vectors.adjoint();
    CHECK(operator_norm(via_series - via_eigen) <=
          1e-8 * std::max(1.0, inst.model.kappa_j));
  }
  SUBCASE("spectrum outside the domain is rejected") {
    PolySeries s;
    s.basis = PolySeries::Basis::ChebyshevFirstKind;
    s.coeffs = CVector::Ones(3);
    CMatrix a = CMatrix::Identity(2, 2) * 1.5;
    CHECK_THROWS_AS(eval_series_matrix(s, a), Error);
  }
}

TEST_CASE("truncation order selection is self-validating") {
  SUBCASE("halving eps2 grows d slowly") {
    const int d1 = truncation_order(SignalFamily::Fourier, 2, 1e-6);
    const int d2 = truncation_order(SignalFamily::Fourier, 2, 5e-7);
    CHECK(d2 >= d1);
    CHECK(d2 <= 2 * d1);  // doubling is the coarsest growth
  }
  SUBCASE("t = 0 needs only the log term") {
    const int d = truncation_order(SignalFamily::Fourier, 0, 1e-8);
    CHECK(d <= 64);
    const double resid = kernel_series_residual(
        chebyshev_coeffs(SignalFamily::Fourier, 0, d), SignalFamily::Fourier, 0);
    CHECK(resid <= 1e-8);
  }
  SUBCASE("t = 3 at 1e-8 meets the target on the grid") {
    const int d = truncation_order(SignalFamily::Fourier, 3, 1e-8);
    const double resid = kernel_series_residual(
        chebyshev_coeffs(SignalFamily::Fourier, 3, d), SignalFamily::Fourier, 3);
    CHECK(resid <= 1e-8);
  }
  SUBCASE("exponential kernel on the disk") {
    const int d = truncation_order(SignalFamily::Exponential, 3, 1e-9);
    const double resid = kernel_series_residual(faber_disk_exp_coeffs(3.0, d),
                                                SignalFamily::Exponential, 3);
    CHECK(resid <= 1e-9);
  }
}

TEST_CASE("generating function residuals") {
  CHECK(generating_function_residual(0.3, 0.0, 1) == 0.0);
  CHECK(generating_function_residual(1.0, 0.5, 60) <= 1e-15);
  SUBCASE("geometric decay in d") {
    const double r20 = generating_function_residual(0.6, 0.5, 20);
    const double r30 = generating_function_residual(0.6, 0.5, 30);
    CHECK(r30 / r20 == doctest::Approx(std::pow(0.5, 10)).epsilon(0.3));
  }
  SUBCASE("precondition guards") {
    CHECK_THROWS_AS(generating_function_residual(0.0, 0.7, 5), Error);
    CHECK_THROWS_AS(generating_function_residual(1.5, 0.2, 5), Error);
  }
}
