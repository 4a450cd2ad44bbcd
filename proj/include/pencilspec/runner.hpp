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

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "pencilspec/config.hpp"

namespace pencilspec {

using Json = nlohmann::ordered_json;

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  std::optional<int> threads;
  std::optional<std::string> out;
};

ExperimentConfig apply_overrides(ExperimentConfig cfg, const RunOverrides& ov);

/// Resolved worker count: --threads flag, else config, else the
/// PENCILSPEC_THREADS environment variable, else 1.
int resolve_threads(const ExperimentConfig& cfg);

// Each runner builds the full report in memory and only then touches the
// output path, so failed runs leave no partial files. Reports are JSON;
// sweep runners additionally emit a CSV table next to the JSON file.
Json run_estimate(const ExperimentConfig& cfg);
Json run_scaling(const ExperimentConfig& cfg);
Json run_bounds(const ExperimentConfig& cfg);
Json run_liouvillian(const ExperimentConfig& cfg);
Json run_abscissa(const ExperimentConfig& cfg);

/// Writes the JSON report; when the report carries a "csv" member, the
/// table is additionally written next to the JSON file (extension .csv).
void write_report(const Json& report, const std::string& out_path);

}  // namespace pencilspec
