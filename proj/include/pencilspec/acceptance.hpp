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

#include <iosfwd>
#include <string>
#include <vector>

namespace pencilspec {

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the eight acceptance checks, printing one PASS/FAIL line per
/// criterion to `out`. Returns true iff every criterion passed.
/// Deterministic for a fixed seed.
bool run_acceptance(std::ostream& out, std::uint64_t seed = 2026);

std::vector<CriterionResult> acceptance_results(std::uint64_t seed = 2026);

}  // namespace pencilspec
