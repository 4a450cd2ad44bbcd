#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pencilspec/matrix_io.hpp"
#include "pencilspec/runner.hpp"

using namespace pencilspec;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const ExperimentConfig cfg = ExperimentConfig::from_string(
      "# demo\nseed = 42\nfamily = power\nmin_gap = 0.25\n");
  CHECK(cfg.get_u64("seed", 0) == 42);
  CHECK(cfg.get_string("family", "") == "power");
  CHECK(cfg.get_double("min_gap", 0.0) == 0.25);
  CHECK(cfg.get_int("trials", 7) == 7);

  SUBCASE("unknown keys carry the line number") {
    try {
      ExperimentConfig::from_string("seed = 1\nbogus = 2\n", "conf");
      FAIL("expected ConfigError");
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::Config);
      CHECK(std::string(e.what()).find("conf:2") != std::string::npos);
    }
  }
  SUBCASE("malformed lines are rejected") {
    CHECK_THROWS_AS(ExperimentConfig::from_string("seed 1\n"), Error);
    CHECK_THROWS_AS(ExperimentConfig::from_string("seed =\n"), Error);
  }
  SUBCASE("typed getters validate") {
    const ExperimentConfig c = ExperimentConfig::from_string("shots = abc\n");
    CHECK_THROWS_AS(c.get_int("shots", 0), Error);
  }
}

TEST_CASE("estimate runs are reproducible byte-for-byte") {
  ExperimentConfig cfg = ExperimentConfig::from_string(
      "seed = 7\ntrials = 3\nn = 5\nr = 2\naccess = hadamard\nshots = 2000\n"
      "min_cmin = 0.2\n");
  const Json a = run_estimate(cfg);
  const Json b = run_estimate(cfg);
  CHECK(a.dump() == b.dump());
  CHECK(a["trials"].size() == 3);
  // trials with distinct seeds differ
  cfg.set("seed", "8");
  const Json c = run_estimate(cfg);
  CHECK(a.dump() != c.dump());
}

TEST_CASE("estimate on an exact generated instance recovers the support") {
  const ExperimentConfig cfg = ExperimentConfig::from_string(
      "seed = 3\nn = 6\nr = 2\naccess = exact\nmin_gap = 0.15\nmin_cmin = 0.2\n");
  const Json doc = run_estimate(cfg);
  CHECK(doc["summary"]["max_matched_error"].get<double>() <= 1e-7);
  CHECK(doc["instance"]["sparsity"].get<int>() == 2);
  CHECK(doc["bounds"].size() > 0);
}

TEST_CASE("estimate from matrix files matches the direct oracle") {
  const std::string mpath = temp_path("pencilspec_test_matrix.txt");
  {
    CMatrix a(2, 2);
    a << Complex(-1.0, 0.0), Complex(5.0, 0.0), Complex(0.0, 0.0),
        Complex(-0.5, 0.0);
    write_matrix_file(mpath, a);
  }
  ExperimentConfig cfg = ExperimentConfig::from_string(
      "instance = file\naccess = exact\nR = 2\n");
  cfg.set("matrix_file", mpath);
  const Json doc = run_estimate(cfg);
  CHECK(doc["summary"]["max_matched_error"].get<double>() <= 1e-8);
  std::remove(mpath.c_str());
}

TEST_CASE("missing matrix file leaves no output artifact") {
  const std::string out = temp_path("pencilspec_should_not_exist.json");
  std::remove(out.c_str());
  ExperimentConfig cfg = ExperimentConfig::from_string(
      "instance = file\nmatrix_file = /nonexistent/nowhere.txt\n");
  cfg.set("out", out);
  bool threw = false;
  try {
    const Json doc = run_estimate(cfg);
    write_report(doc, out);
  } catch (const Error& e) {
    threw = true;
    CHECK(e.category() == ErrorCategory::Config);
  }
  CHECK(threw);
  CHECK(!std::filesystem::exists(out));
}

TEST_CASE("liouvillian runner reproduces the damped-qubit gap") {
  const ExperimentConfig cfg = ExperimentConfig::from_string(
      "lindblad_gamma = 1.0\naccess = exact\nseed = 5\n");
  const Json doc = run_liouvillian(cfg);
  CHECK(doc["gap"].get<double>() == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(doc["vec_crosscheck_residual"].get<double>() <= 1e-12);
}

TEST_CASE("abscissa runner classifies a triangular file instance") {
  const std::string mpath = temp_path("pencilspec_tri.txt");
  {
    CMatrix a(2, 2);
    a << Complex(-1.0, 0.0), Complex(5.0, 0.0), Complex(0.0, 0.0),
        Complex(-0.5, 0.0);
    write_matrix_file(mpath, a);
  }
  ExperimentConfig cfg = ExperimentConfig::from_string(
      "instance = file\naccess = exact\nR = 2\nzero_test = 1\nseed = 2\n");
  cfg.set("matrix_file", mpath);
  const Json doc = run_abscissa(cfg);
  CHECK(doc["classification"].get<std::string>() == "asymptotically_stable");
  CHECK(doc["abscissa"].get<double>() == doctest::Approx(-0.5).epsilon(1e-6));
  std::remove(mpath.c_str());
}

TEST_CASE("scaling runner emits a table, slopes and CSV") {
  ExperimentConfig cfg = ExperimentConfig::from_string(
      "seed = 11\nscaling_decades = 2\nscaling_trials = 8\n"
      "hadamard_shots_min = 10000\nqae_eps_max = 0.01\nmin_gap = 0.3\n"
      "min_cmin = 0.25\nn = 5\nr = 2\n");
  const Json doc = run_scaling(cfg);
  CHECK(doc["table"].size() == 2 * 3 + 1);
  CHECK(doc.contains("csv"));
  const double h = doc["slopes"]["hadamard"].get<double>();
  CHECK(h < 0.0);  // decreasing; the tight window is the acceptance suite's job
  const std::string out = temp_path("pencilspec_scaling.json");
  write_report(doc, out);
  CHECK(std::filesystem::exists(out));
  const std::string csv = temp_path("pencilspec_scaling.csv");
  CHECK(std::filesystem::exists(csv));
  CHECK(slurp(csv).rfind("mode,knob,total_cost,median_error", 0) == 0);
  std::remove(out.c_str());
  std::remove(csv.c_str());
}

TEST_CASE("threads do not change results") {
  ExperimentConfig cfg = ExperimentConfig::from_string(
      "seed = 13\ntrials = 6\nn = 5\nr = 2\naccess = hadamard\nshots = 50000\n"
      "min_cmin = 0.2\n");
  cfg.set("threads", "1");
  const Json serial = run_estimate(cfg);
  cfg.set("threads", "4");
  const Json parallel = run_estimate(cfg);
  // The echoed config differs ('threads'), the results must not.
  CHECK(serial["trials"].dump() == parallel["trials"].dump());
  CHECK(serial["summary"].dump() == parallel["summary"].dump());
}

TEST_CASE("bounds runner validates every check on a small budget") {
  const ExperimentConfig cfg = ExperimentConfig::from_string(
      "seed = 17\nbounds_trials = 60\nperturbation_trials = 20\n"
      "bernstein_trials = 200\n");
  const Json doc = run_bounds(cfg);
  CHECK(doc["all_satisfied"].get<bool>());
  CHECK(doc.contains("sweep"));
}
