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

#include "pencilspec/lindblad.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pencilspec/matrix_io.hpp"

namespace pencilspec {

CMatrix pauli_matrix(char p) {
  CMatrix m(2, 2);
  switch (p) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default:
      raise(ErrorKind::ParseError,
            std::string("unknown Pauli letter '") + p + "'");
  }
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix pauli_word_matrix(const std::string& word) {
  if (word.empty()) raise(ErrorKind::ParseError, "empty Pauli word");
  CMatrix m = pauli_matrix(word[0]);
  for (std::size_t i = 1; i < word.size(); ++i) m = kron(m, pauli_matrix(word[i]));
  return m;
}

CMatrix hamiltonian_matrix(const LindbladSpec& spec) {
  const int dim = spec.hilbert_dim();
  CMatrix h = CMatrix::Zero(dim, dim);
  for (const auto& term : spec.hamiltonian)
    h += term.coeff * pauli_word_matrix(term.word);
  return h;
}

std::vector<CMatrix> jump_matrices(const LindbladSpec& spec) {
  const int dim = spec.hilbert_dim();
  std::vector<CMatrix> out;
  out.reserve(spec.jumps.size());
  for (const auto& jump : spec.jumps) {
    CMatrix l = CMatrix::Zero(dim, dim);
    for (const auto& [c, word] : jump.terms) l += c * pauli_word_matrix(word);
    out.push_back(std::move(l));
  }
  return out;
}

CVector vec_row_major(const CMatrix& rho) {
  const int n = static_cast<int>(rho.rows());
  CVector v(n * rho.cols());
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < rho.cols(); ++k) v(j * rho.cols() + k) = rho(j, k);
  return v;
}

CMatrix unvec_row_major(const CVector& v) {
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(v.size()))));
  if (n * n != v.size())
    raise(ErrorKind::DimensionMismatch, "unvec_row_major: length is not a square");
  CMatrix rho(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) rho(j, k) = v(j * n + k);
  return rho;
}

CMatrix vectorize_lindblad(const LindbladSpec& spec) {
  if (spec.n_qubits < 1)
    raise(ErrorKind::PreconditionViolated, "vectorize_lindblad: n_qubits < 1");
  if (spec.n_qubits > 6)
    raise(ErrorKind::TooLarge,
          "vectorize_lindblad: dense construction limited to n <= 6 qubits");
  const int dim = spec.hilbert_dim();
  const CMatrix eye = CMatrix::Identity(dim, dim);
  const CMatrix h = hamiltonian_matrix(spec);

  // Row-major vec turns X rho Y into (X (x) Y^T) |rho>>.
  CMatrix gen = Complex(0, -1) * kron(h, eye) + Complex(0, 1) * kron(eye, h.transpose());
  for (const CMatrix& l : jump_matrices(spec)) {
    const CMatrix ldl = l.adjoint() * l;
    gen += kron(l, l.conjugate());
    gen -= 0.5 * kron(ldl, eye);
    gen -= 0.5 * kron(eye, ldl.transpose());
  }
  return gen;
}

CMatrix apply_lindblad(const LindbladSpec& spec, const CMatrix& rho) {
  check_square(rho, "apply_lindblad");
  if (rho.rows() != spec.hilbert_dim())
    raise(ErrorKind::DimensionMismatch, "apply_lindblad: rho dimension mismatch");
  const CMatrix h = hamiltonian_matrix(spec);
  CMatrix out = Complex(0, -1) * (h * rho - rho * h);
  for (const CMatrix& l : jump_matrices(spec)) {
    const CMatrix ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

namespace {

[[noreturn]] void spec_fail(const std::string& origin, int line,
                            const std::string& what) {
  raise(ErrorKind::ParseError, origin + ":" + std::to_string(line) + ": " + what);
}

void check_word(const std::string& word, int n, const std::string& origin, int line) {
  if (static_cast<int>(word.size()) != n)
    spec_fail(origin, line,
              "Pauli word '" + word + "' has length " +
                  std::to_string(word.size()) + ", expected " + std::to_string(n));
  for (char c : word)
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
      spec_fail(origin, line, std::string("bad Pauli letter '") + c + "'");
}

}  // namespace

LindbladSpec parse_lindblad_spec(std::istream& in, const std::string& origin) {
  LindbladSpec spec;
  std::string raw;
  int lineno = 0;
  bool have_n = false;
  bool in_group = false;
  JumpOperator group;

  while (std::getline(in, raw)) {
    ++lineno;
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;
    std::istringstream is(raw);
    std::string head;
    is >> head;

    if (head == "n") {
      int n = 0;
      if (!(is >> n) || n < 1) spec_fail(origin, lineno, "bad qubit count");
      spec.n_qubits = n;
      have_n = true;
      continue;
    }
    if (!have_n) spec_fail(origin, lineno, "'n <qubits>' must come first");

    if (head == "H") {
      std::string coeff, word;
      if (!(is >> coeff >> word)) spec_fail(origin, lineno, "expected 'H <coeff> <word>'");
      Complex c;
      try {
        c = parse_complex(coeff);
      } catch (const Error& e) {
        spec_fail(origin, lineno, e.what());
      }
      if (std::abs(c.imag()) > 0.0)
        spec_fail(origin, lineno, "Hamiltonian coefficients must be real");
      check_word(word, spec.n_qubits, origin, lineno);
      spec.hamiltonian.push_back({c.real(), word});
      continue;
    }
    if (head == "L") {
      std::string coeff, word;
      if (!(is >> coeff >> word)) spec_fail(origin, lineno, "expected 'L <coeff> <word>'");
      Complex c;
      try {
        c = parse_complex(coeff);
      } catch (const Error& e) {
        spec_fail(origin, lineno, e.what());
      }
      if (std::abs(c.imag()) > 0.0 || c.real() < 0.0)
        spec_fail(origin, lineno,
                  "single-term jump coefficients must be real and >= 0; "
                  "use an Lgroup block for complex combinations");
      check_word(word, spec.n_qubits, origin, lineno);
      spec.jumps.push_back({{{c, word}}});
      continue;
    }
    if (head == "Lgroup") {
      if (in_group) spec_fail(origin, lineno, "nested Lgroup");
      in_group = true;
      group.terms.clear();
      continue;
    }
    if (head == "endgroup") {
      if (!in_group) spec_fail(origin, lineno, "endgroup without Lgroup");
      if (group.terms.empty()) spec_fail(origin, lineno, "empty Lgroup");
      spec.jumps.push_back(group);
      in_group = false;
      continue;
    }
    if (in_group) {
      std::string word;
      if (!(is >> word)) spec_fail(origin, lineno, "expected '<coeff> <word>'");
      Complex c;
      try {
        c = parse_complex(head);
      } catch (const Error& e) {
        spec_fail(origin, lineno, e.what());
      }
      check_word(word, spec.n_qubits, origin, lineno);
      group.terms.emplace_back(c, word);
      continue;
    }
    spec_fail(origin, lineno, "unrecognized directive '" + head + "'");
  }
  if (in_group) raise(ErrorKind::ParseError, origin + ": unterminated Lgroup");
  if (!have_n) raise(ErrorKind::ParseError, origin + ": missing 'n <qubits>'");
  return spec;
}

LindbladSpec read_lindblad_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::ConfigError, "cannot open Lindblad file '" + path + "'");
  return parse_lindblad_spec(in, path);
}

std::string format_lindblad_spec(const LindbladSpec& spec) {
  std::ostringstream os;
  os << "n " << spec.n_qubits << "\n";
  for (const auto& term : spec.hamiltonian)
    os << "H " << format_complex(Complex(term.coeff, 0.0)) << " " << term.word << "\n";
  for (const auto& jump : spec.jumps) {
    if (jump.terms.size() == 1 && jump.terms[0].first.imag() == 0.0 &&
        jump.terms[0].first.real() >= 0.0) {
      os << "L " << format_complex(jump.terms[0].first) << " "
         << jump.terms[0].second << "\n";
    } else {
      os << "Lgroup\n";
      for (const auto& [c, word] : jump.terms)
        os << "  " << format_complex(c) << " " << word << "\n";
      os << "endgroup\n";
    }
  }
  return os.str();
}

LindbladSpec damped_qubit_spec(double gamma) {
  if (gamma < 0.0)
    raise(ErrorKind::PreconditionViolated, "damped_qubit_spec: gamma < 0");
  LindbladSpec spec;
  spec.n_qubits = 1;
  // sqrt(gamma) sigma_minus = sqrt(gamma) (X + iY)/2
  const double s = 0.5 * std::sqrt(gamma);
  JumpOperator jump;
  jump.terms.emplace_back(Complex(s, 0.0), "X");
  jump.terms.emplace_back(Complex(0.0, s), "Y");
  spec.jumps.push_back(jump);
  return spec;
}

}  // namespace pencilspec
