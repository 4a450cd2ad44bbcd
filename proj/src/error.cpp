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

#include "pencilspec/error.hpp"

namespace pencilspec {

ErrorCategory category_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError:
    case ErrorKind::ParseError:
    case ErrorKind::MissingParameter:
      return ErrorCategory::Config;
    case ErrorKind::NonSquare:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::NearDefective:
    case ErrorKind::FamilySpectrumMismatch:
    case ErrorKind::InvalidProbability:
    case ErrorKind::InvalidAccuracy:
    case ErrorKind::SeriesTooShort:
    case ErrorKind::CoincidentNodes:
    case ErrorKind::PreconditionViolated:
    case ErrorKind::TooLarge:
    case ErrorKind::NoSteadyStateDetected:
    case ErrorKind::OnlySteadyState:
      return ErrorCategory::Precondition;
    case ErrorKind::NormalizedValueOutOfRange:
    case ErrorKind::AllSingular:
    case ErrorKind::SingularPencil:
    case ErrorKind::ZeroModulus:
    case ErrorKind::NumericalError:
      return ErrorCategory::Numerical;
  }
  return ErrorCategory::Numerical;
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MissingParameter: return "MissingParameter";
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NearDefective: return "NearDefective";
    case ErrorKind::FamilySpectrumMismatch: return "FamilySpectrumMismatch";
    case ErrorKind::InvalidProbability: return "InvalidProbability";
    case ErrorKind::InvalidAccuracy: return "InvalidAccuracy";
    case ErrorKind::SeriesTooShort: return "SeriesTooShort";
    case ErrorKind::CoincidentNodes: return "CoincidentNodes";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NoSteadyStateDetected: return "NoSteadyStateDetected";
    case ErrorKind::OnlySteadyState: return "OnlySteadyState";
    case ErrorKind::NormalizedValueOutOfRange: return "NormalizedValueOutOfRange";
    case ErrorKind::AllSingular: return "AllSingular";
    case ErrorKind::SingularPencil: return "SingularPencil";
    case ErrorKind::ZeroModulus: return "ZeroModulus";
    case ErrorKind::NumericalError: return "NumericalError";
  }
  return "UnknownError";
}

}  // namespace pencilspec
