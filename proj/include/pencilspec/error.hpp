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

#include <stdexcept>
#include <string>

namespace pencilspec {

/// Failure classes. Coarse groups map onto process exit codes
/// (config -> 2, precondition -> 3, numerical -> 4).
enum class ErrorKind {
  // configuration / input files
  ConfigError,
  ParseError,
  MissingParameter,
  // contract violations detected before any numerics run
  NonSquare,
  DimensionMismatch,
  NearDefective,
  FamilySpectrumMismatch,
  InvalidProbability,
  InvalidAccuracy,
  SeriesTooShort,
  CoincidentNodes,
  PreconditionViolated,
  TooLarge,
  NoSteadyStateDetected,
  OnlySteadyState,
  // failures that surface mid-computation
  NormalizedValueOutOfRange,
  AllSingular,
  SingularPencil,
  ZeroModulus,
  NumericalError,
};

enum class ErrorCategory { Config, Precondition, Numerical };

ErrorCategory category_of(ErrorKind kind);
const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_of(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace pencilspec
