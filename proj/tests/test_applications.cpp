#include <random>
#include <sstream>

#include "doctest.h"
#include "pencilspec/lindblad.hpp"
#include "pencilspec/pencil.hpp"
#include "pencilspec/stability.hpp"
#include "support/test_oracles.hpp"

using namespace pencilspec;

TEST_CASE("pauli word construction") {
  const CMatrix zz = pauli_word_matrix("ZZ");
  CHECK(zz(0, 0) == Complex(1, 0));
  CHECK(zz(3, 3) == Complex(1, 0));
  CHECK(zz(1, 1) == Complex(-1, 0));
  const CMatrix xy = pauli_word_matrix("XY");
  CHECK(xy.rows() == 4);
  CHECK_THROWS_AS(pauli_word_matrix("XQ"), Error);
}

TEST_CASE("empty generator vectorizes to zero") {
  LindbladSpec spec;
  spec.n_qubits = 1;
  const CMatrix gen = vectorize_lindblad(spec);
  CHECK(gen.rows() == 4);
  CHECK(gen.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("damped qubit spectrum {0, -g/2, -g/2, -g}") {
  const double gamma = 0.8;
  const CMatrix gen = vectorize_lindblad(damped_qubit_spec(gamma));
  const SpectralModel m = eig_decompose(gen);
  CVector expected(4);
  expected << Complex(0, 0), Complex(-gamma / 2, 0), Complex(-gamma / 2, 0),
      Complex(-gamma, 0);
  CHECK(oracles::one_sided(m.eigenvalues, expected) < 1e-12);
  CHECK(oracles::one_sided(expected, m.eigenvalues) < 1e-12);
}

TEST_CASE("pure Hamiltonian gives the commutator spectrum {0, 0, +-iw}") {
  const double omega = 1.7;
  LindbladSpec spec;
  spec.n_qubits = 1;
  spec.hamiltonian.push_back({omega / 2.0, "Z"});
  const CMatrix gen = vectorize_lindblad(spec);
  const SpectralModel m = eig_decompose(gen);
  CVector expected(4);
  expected << Complex(0, 0), Complex(0, 0), Complex(0, omega), Complex(0, -omega);
  CHECK(oracles::one_sided(m.eigenvalues, expected) < 1e-12);
}

TEST_CASE("vectorization matches the direct master equation") {
  std::mt19937_64 rng(404);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const char letters[4] = {'I', 'X', 'Y', 'Z'};
  for (int c = 0; c < 100; ++c) {
    LindbladSpec spec;
    spec.n_qubits = 1 + static_cast<int>(rng() % 2);
    const int dim = spec.hilbert_dim();
    auto word = [&]() {
      std::string w;
      for (int q = 0; q < spec.n_qubits; ++q) w.push_back(letters[rng() % 4]);
      return w;
    };
    for (int h = 0; h < 1 + static_cast<int>(rng() % 3); ++h)
      spec.hamiltonian.push_back({2.0 * unif(rng) - 1.0, word()});
    for (int j = 0; j < 1 + static_cast<int>(rng() % 2); ++j) {
      JumpOperator jop;
      for (int k = 0; k < 1 + static_cast<int>(rng() % 2); ++k)
        jop.terms.emplace_back(0.5 * Complex(gauss(rng), gauss(rng)), word());
      spec.jumps.push_back(jop);
    }
    CMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    const CVector lhs = vectorize_lindblad(spec) * vec_row_major(rho);
    const CVector rhs = vec_row_major(apply_lindblad(spec, rho));
    CAPTURE(c);
    CHECK((lhs - rhs).norm() <= 1e-12);
  }
}

TEST_CASE("vectorization is additive over jump lists") {
  LindbladSpec a, b, both;
  a.n_qubits = b.n_qubits = both.n_qubits = 1;
  a.jumps.push_back({{{Complex(0.4, 0.0), "X"}}});
  b.jumps.push_back({{{Complex(0.3, 0.1), "Y"}, {Complex(0.2, 0.0), "Z"}}});
  both.jumps = a.jumps;
  both.jumps.push_back(b.jumps[0]);
  const CMatrix sum = vectorize_lindblad(a) + vectorize_lindblad(b);
  CHECK((vectorize_lindblad(both) - sum).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("identity is a left null vector (trace preservation)") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int c = 0; c < 20; ++c) {
    LindbladSpec spec;
    spec.n_qubits = 1 + static_cast<int>(rng() % 2);
    spec.hamiltonian.push_back({gauss(rng), std::string(spec.n_qubits, 'Z')});
    JumpOperator jop;
    jop.terms.emplace_back(0.5 * Complex(gauss(rng), gauss(rng)),
                           std::string(spec.n_qubits, 'X'));
    spec.jumps.push_back(jop);
    const CMatrix gen = vectorize_lindblad(spec);
    const CVector id_vec = vec_row_major(
        CMatrix::Identity(spec.hilbert_dim(), spec.hilbert_dim()));
    CHECK((id_vec.adjoint() * gen).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("lindblad spec file round trip and diagnostics") {
  const std::string text =
      "# damped qubit with detuning\n"
      "n 1\n"
      "H 0.25 Z\n"
      "L 0.5 X\n"
      "Lgroup\n"
      "  0.5 X\n"
      "  0.5i Y\n"
      "endgroup\n";
  std::istringstream in(text);
  const LindbladSpec spec = parse_lindblad_spec(in, "demo");
  CHECK(spec.n_qubits == 1);
  REQUIRE(spec.hamiltonian.size() == 1);
  CHECK(spec.hamiltonian[0].coeff == 0.25);
  REQUIRE(spec.jumps.size() == 2);
  CHECK(spec.jumps[1].terms.size() == 2);
  CHECK(spec.jumps[1].terms[1].first == Complex(0.0, 0.5));

  std::istringstream back(format_lindblad_spec(spec));
  const LindbladSpec again = parse_lindblad_spec(back, "echo");
  CHECK(again.jumps.size() == spec.jumps.size());
  CHECK((vectorize_lindblad(again) - vectorize_lindblad(spec))
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  SUBCASE("line-precise errors") {
    std::istringstream bad("n 1\nH 0.5 XX\n");
    try {
      parse_lindblad_spec(bad, "bad.lind");
      FAIL("expected failure");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("bad.lind:2") != std::string::npos);
    }
    std::istringstream neg("n 1\nL -0.5 X\n");
    CHECK_THROWS_AS(parse_lindblad_spec(neg, "neg.lind"), Error);
    std::istringstream open_group("n 1\nLgroup\n0.5 X\n");
    CHECK_THROWS_AS(parse_lindblad_spec(open_group, "open.lind"), Error);
  }
}

TEST_CASE("size guard for the dense construction") {
  LindbladSpec spec;
  spec.n_qubits = 7;
  CHECK_THROWS_AS(vectorize_lindblad(spec), Error);
}

TEST_CASE("liouvillian gap extraction") {
  EstimateReport rep;
  rep.family.tag = SignalFamily::Exponential;
  SUBCASE("definition on a clean set") {
    rep.lambda_hat.resize(3);
    rep.lambda_hat << Complex(0.0, 0.0), Complex(-0.3, 0.0), Complex(-0.3, 0.1);
    CHECK(liouvillian_gap(rep, 1e-9) == doctest::Approx(0.3));
  }
  SUBCASE("no steady state") {
    rep.lambda_hat.resize(2);
    rep.lambda_hat << Complex(-0.5, 0.0), Complex(-0.2, 0.0);
    CHECK_THROWS_AS(liouvillian_gap(rep, 1e-6), Error);
  }
  SUBCASE("only the steady state") {
    rep.lambda_hat.resize(1);
    rep.lambda_hat << Complex(1e-12, 0.0);
    CHECK_THROWS_AS(liouvillian_gap(rep, 1e-6), Error);
  }
}

TEST_CASE("spectral abscissa classification") {
  EstimateReport rep;
  SUBCASE("stable") {
    rep.lambda_hat.resize(2);
    rep.lambda_hat << Complex(-1.0, 0.0), Complex(-0.5, 0.0);
    const StabilityVerdict v = spectral_abscissa(rep, 1e-6);
    CHECK(v.classification == StabilityVerdict::Classification::AsymptoticallyStable);
    CHECK(v.abscissa == doctest::Approx(-0.5));
  }
  SUBCASE("unstable") {
    rep.lambda_hat.resize(2);
    rep.lambda_hat << Complex(0.2, 3.0), Complex(-1.0, 0.0);
    CHECK(spectral_abscissa(rep, 1e-6).classification ==
          StabilityVerdict::Classification::Unstable);
  }
  SUBCASE("exponential re-run upgrades to marginal") {
    rep.lambda_hat.resize(1);
    rep.lambda_hat << Complex(-1.0, 0.0);
    EstimateReport rerun;
    rerun.family.tag = SignalFamily::Exponential;
    rerun.lambda_hat.resize(2);
    rerun.lambda_hat << Complex(3e-9, 0.0), Complex(-1.0, 0.0);
    const StabilityVerdict v = spectral_abscissa(rep, 1e-6, rerun);
    CHECK(v.classification == StabilityVerdict::Classification::MarginallyStable);
    CHECK(v.zero_mode_found);
    // a power-family rerun is not a valid zero test
    rerun.family.tag = SignalFamily::Power;
    CHECK_THROWS_AS(spectral_abscissa(rep, 1e-6, rerun), Error);
  }
}

TEST_CASE("damped qubit gap through the full pipeline, exact access") {
  const double gamma = 1.1;
  const CMatrix gen = vectorize_lindblad(damped_qubit_spec(gamma));
  const SpectralModel model = eig_decompose(gen);
  CVector psi = model.right_vectors.col(0) + 0.7 * model.right_vectors.col(1) +
                0.5 * model.right_vectors.col(3);
  psi /= psi.norm();
  const SparseExpansion exp =
      expand_initial_state(InitialState::pure_vector(psi), model, 4, 1e-10);
  FamilySpec fam;
  fam.tag = SignalFamily::Exponential;
  fam.alpha_a = model.alpha_a;
  PipelineOptions opts;
  opts.r_probe = 4;
  const EstimateReport rep =
      run_pipeline(model, exp, fam, AccessModel::exact(3), opts,
                   exp.support_eigenvalues(model));
  CHECK(rep.matched_error.value_or(1.0) <= 1e-8);
  CHECK(liouvillian_gap(rep, 3e-9 * model.alpha_a) ==
        doctest::Approx(gamma / 2).epsilon(1e-8));
}
