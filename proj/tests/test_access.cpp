#include <cmath>

#include "doctest.h"
#include "pencilspec/access.hpp"
#include "pencilspec/generator.hpp"

using namespace pencilspec;

TEST_CASE("hadamard_sample endpoints are deterministic") {
  auto rng = substream(7, {1});
  CHECK(hadamard_sample(1.0, 25, rng) == 1.0);
  CHECK(hadamard_sample(0.0, 25, rng) == -1.0);
  CHECK_THROWS_AS(hadamard_sample(1.2, 10, rng), Error);
}

TEST_CASE("hadamard_sample concentrates like 1/sqrt(m)") {
  auto rng = substream(7, {2});
  const double est = hadamard_sample(0.5, 1000000, rng);
  CHECK(std::abs(est) <= 5e-3);  // 5 sigma of 1/sqrt(1e6)
}

TEST_CASE("hadamard_sample is unbiased across targets") {
  for (const double target : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
    const int reps = 100000;
    const int m = 16;
    double sum = 0.0;
    auto rng = substream(11, {static_cast<std::uint64_t>(target * 1000 + 2000)});
    for (int i = 0; i < reps; ++i)
      sum += hadamard_sample(0.5 * (1.0 + target), m, rng);
    const double mean = sum / reps;
    const double sigma = 1.0 / std::sqrt(double(m) * reps);
    CAPTURE(target);
    CHECK(std::abs(mean - target) <= 5.0 * sigma);
  }
}

TEST_CASE("qae_sample honours its contract") {
  SUBCASE("success interval and clamping") {
    auto rng = substream(3, {1});
    for (int i = 0; i < 2000; ++i) {
      const QaeSample s = qae_sample(0.0, 0.1, 1e-9, rng);
      CHECK(s.p_tilde >= 0.0);
      CHECK(s.p_tilde <= 0.1 + 1e-15);
    }
  }
  SUBCASE("query count formula") {
    auto rng = substream(3, {2});
    const QaeSample a = qae_sample(0.5, 1e-3, 1e-2, rng);
    const QaeSample b = qae_sample(0.5, 1e-2, 1e-2, rng);
    // eps^-1 scaling: tenfold up to the integer ceil
    CHECK(std::abs(double(a.queries) - 10.0 * double(b.queries)) <= 10.0);
    CHECK(b.queries ==
          static_cast<std::int64_t>(std::ceil(100.0 * std::log(100.0))));
  }
  SUBCASE("failure frequency stays near delta") {
    const double delta = 0.05;
    const double eps = 0.01;
    auto rng = substream(3, {3});
    int failures = 0;
    const int reps = 10000;
    for (int i = 0; i < reps; ++i) {
      const QaeSample s = qae_sample(0.5, eps, delta, rng);
      if (std::abs(s.p_tilde - 0.5) > eps) ++failures;
    }
    // Failure branch lands outside the interval with prob ~ 1 - 2 eps.
    const double sigma = std::sqrt(delta * (1.0 - delta) * reps);
    CHECK(failures <= delta * reps + 3.0 * sigma);
    CHECK(failures >= (delta * (1 - 2 * eps)) * reps - 3.0 * sigma);
  }
  SUBCASE("bad accuracy arguments") {
    auto rng = substream(3, {4});
    CHECK_THROWS_AS(qae_sample(0.5, 0.7, 0.1, rng), Error);
    CHECK_THROWS_AS(qae_sample(0.5, 0.01, 1.5, rng), Error);
  }
}

namespace {

Instance fixed_instance(std::uint64_t seed) {
  auto rng = substream(seed, {rngkey::kInstance});
  InstanceSpec spec;
  spec.n = 5;
  spec.r = 2;
  spec.min_normalized_gap = 0.3;
  spec.min_c_min = 0.25;
  spec.nonnormality = 0.2;
  return generate_instance(spec, rng);
}

}  // namespace

TEST_CASE("estimate_signal_entry: exact mode returns the ideal value") {
  const Instance inst = fixed_instance(21);
  FamilySpec fam;
  fam.alpha_a = inst.model.alpha_a;
  const SignalSeries ideal = ideal_signal(inst.model, inst.expansion, fam, 3);
  for (int t = 0; t < 6; ++t) {
    const NoisySignalEstimate e = estimate_signal_entry(
        inst.model, inst.expansion, fam, t, AccessModel::exact(4));
    CHECK(e.value == ideal.values(t));
  }
}

TEST_CASE("power-family scale amplifies noise by alpha^t") {
  const Instance inst = fixed_instance(22);
  FamilySpec fam;
  fam.alpha_a = 2.0;  // pretend normalization for the scale contract
  const NoisySignalEstimate e = estimate_signal_entry(
      inst.model, inst.expansion, fam, 3, AccessModel::exact(4));
  CHECK(e.scale_applied == doctest::Approx(8.0));
  const AccessModel shots = AccessModel::hadamard(100, 5);
  CHECK(shots.entry_noise_std(fam, 3) ==
        doctest::Approx(8.0 * std::sqrt(2.0 / 100.0)));
}

TEST_CASE("large shot budgets pin the estimate near the ideal value") {
  const Instance inst = fixed_instance(23);
  FamilySpec fam;
  fam.alpha_a = inst.model.alpha_a;
  const SignalSeries ideal = ideal_signal(inst.model, inst.expansion, fam, 2);
  const NoisySignalEstimate e = estimate_signal_entry(
      inst.model, inst.expansion, fam, 1, AccessModel::hadamard(10000000, 6));
  CHECK(std::abs(e.value - ideal.values(1)) <=
        3e-3 * std::max(1.0, e.scale_applied));
  CHECK(e.cost == 20000000);
}

TEST_CASE("estimate_signal_entry: amplitude-estimation mode") {
  const Instance inst = fixed_instance(27);
  FamilySpec fam;
  fam.alpha_a = inst.model.alpha_a;
  const SignalSeries ideal = ideal_signal(inst.model, inst.expansion, fam, 2);
  const double eps = 1e-4;
  const NoisySignalEstimate e = estimate_signal_entry(
      inst.model, inst.expansion, fam, 1, AccessModel::qae(eps, 1e-9, 31));
  // success branch: each part within eps on the amplitude, i.e. within
  // 2*eps*scale on the signal part
  CHECK(std::abs(e.value.real() - ideal.values(1).real()) <=
        2.0 * eps * e.scale_applied + 1e-15);
  CHECK(std::abs(e.value.imag() - ideal.values(1).imag()) <=
        2.0 * eps * e.scale_applied + 1e-15);
  CHECK(e.cost == 2 * static_cast<std::int64_t>(
                      std::ceil(1.0 / eps * std::log(1e9))));
}

TEST_CASE("sample_series counts entries once and is seed-deterministic") {
  const Instance inst = fixed_instance(24);
  FamilySpec fam;
  fam.alpha_a = inst.model.alpha_a;
  const AccessModel access = AccessModel::hadamard(500, 77);
  const SampledSeries a = sample_series(inst.model, inst.expansion, fam, 3, access);
  const SampledSeries b = sample_series(inst.model, inst.expansion, fam, 3, access);
  REQUIRE(a.series.length() == 6);
  CHECK(a.cost == 6 * 2 * 500);
  CHECK((a.series.values - b.series.values).cwiseAbs().maxCoeff() == 0.0);

  const SampledSeries c = sample_series(inst.model, inst.expansion, fam, 3,
                                        AccessModel::hadamard(500, 78));
  CHECK((a.series.values - c.series.values).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("exact access reproduces the ideal series") {
  const Instance inst = fixed_instance(25);
  FamilySpec fam;
  fam.alpha_a = inst.model.alpha_a;
  const SignalSeries ideal = ideal_signal(inst.model, inst.expansion, fam, 4);
  const SampledSeries s = sample_series(inst.model, inst.expansion, fam, 4,
                                        AccessModel::exact(1));
  CHECK((s.series.values - ideal.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.series.ideal);
}

TEST_CASE("normalized values outside [-1,1] are flagged") {
  // alpha_A below the spectral norm is rejected upstream; force the failure
  // by shrinking the family's alpha below the top eigenvalue magnitude.
  const Instance inst = fixed_instance(26);
  FamilySpec fam;
  fam.alpha_a = 1e-3;
  CHECK_THROWS_AS(estimate_signal_entry(inst.model, inst.expansion, fam, 3,
                                        AccessModel::hadamard(10, 1)),
                  Error);
}
