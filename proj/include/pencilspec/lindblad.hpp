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
#include <utility>
#include <vector>

#include "pencilspec/spectral.hpp"

namespace pencilspec {

/// Hamiltonian term: real coefficient times an n-qubit Pauli word.
struct PauliTerm {
  double coeff = 0.0;
  std::string word;  // over {I, X, Y, Z}, length n
};

/// One jump operator L_mu = sum_j c_j P_j. Single-P jumps carry a
/// nonnegative real coefficient; multi-term jumps (Lgroup blocks in the
/// file format) may combine Pauli words with complex weights, e.g.
/// sigma_minus = (X + iY)/2.
struct JumpOperator {
  std::vector<std::pair<Complex, std::string>> terms;
};

struct LindbladSpec {
  int n_qubits = 0;
  std::vector<PauliTerm> hamiltonian;
  std::vector<JumpOperator> jumps;

  int hilbert_dim() const { return 1 << n_qubits; }
};

CMatrix pauli_matrix(char p);
CMatrix pauli_word_matrix(const std::string& word);
CMatrix kron(const CMatrix& a, const CMatrix& b);

CMatrix hamiltonian_matrix(const LindbladSpec& spec);
std::vector<CMatrix> jump_matrices(const LindbladSpec& spec);

/// Row-major vectorization |rho>> = sum_jk rho_jk |j>|k>.
CVector vec_row_major(const CMatrix& rho);
CMatrix unvec_row_major(const CVector& v);

/// The vectorized generator acting on |rho>>:
///   -i H (x) I + i I (x) H^T
///   + sum_mu [ L (x) conj(L) - (L^dag L (x) I)/2 - (I (x) (L^dag L)^T)/2 ].
/// Dense; rejects n_qubits > 6.
CMatrix vectorize_lindblad(const LindbladSpec& spec);

/// Direct master-equation route, the cross-check partner of
/// vectorize_lindblad: -i[H,rho] + sum (L rho L^dag - {L^dag L, rho}/2).
CMatrix apply_lindblad(const LindbladSpec& spec, const CMatrix& rho);

// Text format: "n <qubits>", then "H <coeff> <word>" and "L <coeff> <word>"
// lines; a multi-term jump is written as "Lgroup" followed by
// "<coeff> <word>" lines and "endgroup".
LindbladSpec parse_lindblad_spec(std::istream& in,
                                 const std::string& origin = "<stream>");
LindbladSpec read_lindblad_file(const std::string& path);
std::string format_lindblad_spec(const LindbladSpec& spec);

/// Amplitude-damping channel on one qubit: H = 0, L = sqrt(gamma) sigma_minus.
LindbladSpec damped_qubit_spec(double gamma);

}  // namespace pencilspec
