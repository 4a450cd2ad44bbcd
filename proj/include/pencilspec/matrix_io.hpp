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

#include "pencilspec/spectral.hpp"

namespace pencilspec {

// Plain-text format. A matrix file starts with a line "N" followed by N rows
// of N whitespace-separated complex entries written as re<sign>imi
// (e.g. 1.0-0.5i); bare reals are accepted. Density-matrix and vector files
// carry a one-line header "density" / "vector" before the dimension line.

Complex parse_complex(const std::string& token);
std::string format_complex(const Complex& z);

CMatrix read_matrix(std::istream& in, const std::string& origin = "<stream>");
CMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const CMatrix& m);
void write_matrix_file(const std::string& path, const CMatrix& m);

/// Reads a "density" or "vector" file.
InitialState read_state(std::istream& in, const std::string& origin = "<stream>");
InitialState read_state_file(const std::string& path);
void write_state(std::ostream& out, const InitialState& state);
void write_state_file(const std::string& path, const InitialState& state);

}  // namespace pencilspec
