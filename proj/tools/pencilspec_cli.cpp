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

// Command-line front end. Links the shared library through its C interface
// only; all numerics live behind pencilspec.h.

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "pencilspec/pencilspec.h"

namespace {

struct CommonArgs {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::int64_t trials = 0;
  bool has_trials = false;
  int threads = 0;
  bool has_threads = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* copt = cmd->add_option("--config", args.config, "experiment config file");
  if (config_required) copt->required();
  cmd->add_option("--out", args.out, "report output path (JSON)");
  cmd->add_option("--seed", args.seed, "base RNG seed")
      ->each([&](const std::string&) { args.has_seed = true; });
  cmd->add_option("--trials", args.trials, "number of trials")
      ->each([&](const std::string&) { args.has_trials = true; });
  cmd->add_option("--threads", args.threads,
                  "worker threads (default: config, then PENCILSPEC_THREADS)")
      ->each([&](const std::string&) { args.has_threads = true; });
}

ps_run_options to_options(const CommonArgs& args) {
  ps_run_options opts{};
  opts.seed = args.seed;
  opts.has_seed = args.has_seed ? 1 : 0;
  opts.trials = args.trials;
  opts.has_trials = args.has_trials ? 1 : 0;
  opts.threads = args.threads;
  opts.has_threads = args.has_threads ? 1 : 0;
  opts.out_path = args.out.empty() ? nullptr : args.out.c_str();
  return opts;
}

int finish(ps_status status) {
  if (status != PS_OK) std::fprintf(stderr, "error: %s\n", ps_last_error());
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pencilspec: sparse eigenvalue estimation for non-normal "
               "matrices from emulated quantum signal statistics"};
  app.set_version_flag("--version", std::string(ps_version()));
  app.require_subcommand(1);

  CommonArgs estimate_args, scaling_args, bounds_args, liouv_args, absc_args;

  auto* estimate = app.add_subcommand(
      "estimate", "run the eigenvalue-estimation pipeline from a config");
  add_common(estimate, estimate_args, /*config_required=*/true);

  auto* scaling = app.add_subcommand(
      "scaling", "sweep total cost and fit error scaling slopes");
  add_common(scaling, scaling_args, /*config_required=*/false);

  auto* bounds = app.add_subcommand(
      "bounds", "evaluate and empirically validate the closed-form bounds");
  add_common(bounds, bounds_args, /*config_required=*/false);

  auto* liouvillian = app.add_subcommand(
      "liouvillian", "vectorize a Lindblad generator and estimate its gap");
  add_common(liouvillian, liouv_args, /*config_required=*/false);

  auto* abscissa = app.add_subcommand(
      "abscissa", "classify dynamical stability from the spectral abscissa");
  add_common(abscissa, absc_args, /*config_required=*/false);

  auto* selftest =
      app.add_subcommand("selftest", "run the acceptance suite and print "
                                     "one PASS/FAIL line per criterion");
  std::uint64_t selftest_seed = 2026;
  selftest->add_option("--seed", selftest_seed, "acceptance RNG seed");

  CLI11_PARSE(app, argc, argv);

  if (estimate->parsed()) {
    const ps_run_options o = to_options(estimate_args);
    return finish(ps_run_estimate(estimate_args.config.c_str(), &o));
  }
  if (scaling->parsed()) {
    const ps_run_options o = to_options(scaling_args);
    return finish(ps_run_scaling(
        scaling_args.config.empty() ? nullptr : scaling_args.config.c_str(), &o));
  }
  if (bounds->parsed()) {
    const ps_run_options o = to_options(bounds_args);
    return finish(ps_run_bounds(
        bounds_args.config.empty() ? nullptr : bounds_args.config.c_str(), &o));
  }
  if (liouvillian->parsed()) {
    const ps_run_options o = to_options(liouv_args);
    return finish(ps_run_liouvillian(
        liouv_args.config.empty() ? nullptr : liouv_args.config.c_str(), &o));
  }
  if (abscissa->parsed()) {
    const ps_run_options o = to_options(absc_args);
    return finish(ps_run_abscissa(
        absc_args.config.empty() ? nullptr : absc_args.config.c_str(), &o));
  }
  if (selftest->parsed()) {
    char* report = nullptr;
    const ps_status status = ps_selftest(selftest_seed, &report);
    if (report) {
      std::fputs(report, stdout);
      ps_string_free(report);
    }
    return finish(status);
  }
  return 0;
}
