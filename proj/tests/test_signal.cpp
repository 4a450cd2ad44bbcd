#include <random>

#include "doctest.h"
#include "pencilspec/generator.hpp"
#include "pencilspec/signal.hpp"

using namespace pencilspec;

namespace {

// Minimal hand-built model around prescribed eigenvalues and weights, using
// an orthonormal basis (normal-matrix case) so c equals the given weights.
struct ToyInstance {
  SpectralModel model;
  SparseExpansion exp;
};

ToyInstance toy(const std::vector<Complex>& lambdas,
                const std::vector<double>& weights, double alpha) {
  const int n = static_cast<int>(lambdas.size());
  CMatrix a = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = lambdas[i];
  EigOptions opts;
  opts.alpha_a = alpha;
  ToyInstance t;
  t.model = eig_decompose(a, opts);
  // Locate each requested eigenvalue in the sorted model.
  CVector psi = CVector::Zero(n);
  std::vector<int> idx(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    for (int k = 0; k < n; ++k)
      if (std::abs(t.model.eigenvalues(k) - lambdas[i]) < 1e-12) idx[i] = k;
    psi += std::sqrt(weights[i]) * t.model.right_vectors.col(idx[i]);
  }
  psi /= psi.norm();
  t.exp = expand_initial_state(InitialState::pure_vector(psi), t.model,
                               static_cast<int>(weights.size()), 1e-12);
  return t;
}

}  // namespace

TEST_CASE("power-family signal of a single geometric mode") {
  const ToyInstance t = toy({Complex(0.5, 0.0)}, {1.0}, 1.0);
  FamilySpec fam;
  fam.alpha_a = 1.0;
  const SignalSeries s = ideal_signal(t.model, t.exp, fam, 3);
  REQUIRE(s.length() == 6);
  for (int k = 0; k < 6; ++k)
    CHECK(std::abs(s.values(k) - std::pow(0.5, k)) < 1e-12);
}

TEST_CASE("fourier-family signal reduces to a cosine") {
  const ToyInstance t = toy({Complex(0.25, 0.0), Complex(-0.25, 0.0)},
                            {0.5, 0.5}, 1.0);
  FamilySpec fam;
  fam.tag = SignalFamily::Fourier;
  fam.alpha_a = 1.0;
  const SignalSeries s = ideal_signal(t.model, t.exp, fam, 4);
  // 0.5 e^{-i pi t/2} + 0.5 e^{+i pi t/2} = cos(pi t / 2) = 1, 0, -1, 0, ...
  const double expected[8] = {1, 0, -1, 0, 1, 0, -1, 0};
  for (int k = 0; k < 8; ++k)
    CHECK(std::abs(s.values(k) - expected[k]) < 1e-12);
}

TEST_CASE("exponential family keeps a zero eigenvalue visible at all times") {
  const ToyInstance t = toy({Complex(0.0, 0.0), Complex(-0.8, 0.0)},
                            {0.4, 0.6}, 1.0);
  FamilySpec fam;
  fam.tag = SignalFamily::Exponential;
  fam.alpha_a = 1.0;
  const SignalSeries s = ideal_signal(t.model, t.exp, fam, 4);
  for (int k = 0; k < 8; ++k) {
    const Complex expected = 0.4 + 0.6 * std::exp(-0.8 * k);
    CHECK(std::abs(s.values(k) - expected) < 1e-10);
  }
}

TEST_CASE("family preconditions are enforced") {
  const ToyInstance cplx = toy({Complex(0.2, 0.3), Complex(-0.1, -0.4)},
                               {0.5, 0.5}, 1.0);
  FamilySpec fourier;
  fourier.tag = SignalFamily::Fourier;
  fourier.alpha_a = 1.0;
  CHECK_THROWS_AS(ideal_signal(cplx.model, cplx.exp, fourier, 2), Error);

  const ToyInstance pos = toy({Complex(0.5, 0.0)}, {1.0}, 1.0);
  FamilySpec expf;
  expf.tag = SignalFamily::Exponential;
  expf.alpha_a = 1.0;
  CHECK_THROWS_AS(ideal_signal(pos.model, pos.exp, expf, 2), Error);
}

TEST_CASE("brute-force route: tr(rho A^2) by hand for the 2x2 example") {
  CMatrix a(2, 2);
  a << 1.0, 1.0, 0.0, 0.5;
  CMatrix rho(2, 2);
  rho << 0.5, 0.5, 0.5, 0.5;  // |+><+|
  FamilySpec fam;
  fam.alpha_a = 2.0;  // any valid normalization; power signals ignore it
  const SignalSeries s = ideal_signal_bruteforce(
      a, InitialState::density_matrix(rho), fam, 2);
  // A^2 = [[1, 1.5], [0, 0.25]]; tr(rho A^2) = (1 + 1.5 + 0 + 0.25) / 2.
  CHECK(std::abs(s.values(2) - Complex(1.375, 0.0)) < 1e-12);
  CHECK(std::abs(s.values(0) - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("spectral and brute-force routes agree on exactly sparse states") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    InstanceSpec spec;
    spec.n = 3 + static_cast<int>(rng() % 14);
    spec.r = 1 + static_cast<int>(rng() % std::min(4, spec.n));
    spec.spectrum = trial % 2 ? SpectrumKind::NegReal : SpectrumKind::Complex;
    spec.min_normalized_gap = 0.05;
    spec.min_c_min = std::min(0.1, 0.8 / spec.r);
    const Instance inst = generate_instance(spec, rng);
    FamilySpec fam;
    fam.tag = trial % 2 ? SignalFamily::Exponential : SignalFamily::Power;
    fam.alpha_a = inst.model.alpha_a;
    const int r_probe = spec.r + 1;
    const SignalSeries fast = ideal_signal(inst.model, inst.expansion, fam, r_probe);
    const SignalSeries slow = ideal_signal_bruteforce(inst.a, inst.state, fam, r_probe);
    CAPTURE(trial);
    CHECK((fast.values - slow.values).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("off-support mass shows up only in the brute-force route") {
  // Diagonal (normal) instance: weights are exact, off-support mass 1e-3.
  CMatrix a = CMatrix::Zero(3, 3);
  a(0, 0) = 0.9;
  a(1, 1) = 0.4;
  a(2, 2) = -0.6;
  EigOptions eopts;
  eopts.alpha_a = 1.0;
  const SpectralModel model = eig_decompose(a, eopts);
  const double off = 1e-3;
  CVector psi(3);
  psi << std::sqrt(0.6), std::sqrt(0.4 - off), std::sqrt(off);
  psi /= psi.norm();
  const InitialState state = InitialState::pure_vector(psi);
  // Cap the expansion at the two dominant modes.
  const SparseExpansion exp = expand_initial_state(state, model, 2, 1e-6);
  REQUIRE(exp.sparsity() == 2);
  FamilySpec fam;
  fam.alpha_a = 1.0;
  const int r_probe = 3;
  const SignalSeries sparse_route = ideal_signal(model, exp, fam, r_probe);
  const SignalSeries full_route = ideal_signal_bruteforce(a, state, fam, r_probe);
  double worst = 0.0;
  for (int t = 0; t < sparse_route.length(); ++t) {
    const double dev = std::abs(full_route.values(t) - sparse_route.values(t));
    // the dropped mode contributes at most off * |lambda_3|^t
    CHECK(dev <= off * std::pow(0.6, t) + 1e-12);
    worst = std::max(worst, dev);
  }
  CHECK(worst > 1e-5);  // the contamination is real, not rounding
}

TEST_CASE("power signals start at the retained coefficient sum") {
  std::mt19937_64 rng(99);
  InstanceSpec spec;
  spec.n = 8;
  spec.r = 3;
  spec.min_c_min = 0.1;
  const Instance inst = generate_instance(spec, rng);
  FamilySpec fam;
  fam.alpha_a = inst.model.alpha_a;
  const SignalSeries s = ideal_signal(inst.model, inst.expansion, fam, 3);
  CHECK(std::abs(s.values(0) - inst.expansion.diag_coeffs.sum()) < 1e-10);
  CHECK(std::abs(s.values(0) - Complex(1.0, 0.0)) < 1e-9);
}
