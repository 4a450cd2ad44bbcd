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

#include "pencilspec/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace pencilspec {

namespace {

[[noreturn]] void parse_fail(const std::string& origin, int line,
                             const std::string& what) {
  raise(ErrorKind::ParseError, origin + ":" + std::to_string(line) + ": " + what);
}

double to_double(const std::string& s, bool& ok) {
  ok = false;
  if (s.empty()) return 0.0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  ok = end == s.c_str() + s.size();
  return v;
}

// Position of the sign splitting real and imaginary parts, or npos.
// Skips a leading sign and exponent signs.
std::size_t split_position(const std::string& t) {
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const char c = t[i];
    if ((c == '+' || c == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') return i;
  }
  return std::string::npos;
}

}  // namespace

Complex parse_complex(const std::string& token) {
  bool ok = false;
  if (token.empty()) raise(ErrorKind::ParseError, "empty complex literal");
  if (token.back() != 'i' && token.back() != 'I') {
    const double re = to_double(token, ok);
    if (!ok) raise(ErrorKind::ParseError, "bad real literal '" + token + "'");
    return Complex(re, 0.0);
  }
  const std::string body = token.substr(0, token.size() - 1);
  const std::size_t pos = split_position(body);
  if (pos == std::string::npos) {
    // Bare imaginary: "0.5i", "i", "-i".
    std::string im = body;
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    const double v = to_double(im, ok);
    if (!ok) raise(ErrorKind::ParseError, "bad complex literal '" + token + "'");
    return Complex(0.0, v);
  }
  const double re = to_double(body.substr(0, pos), ok);
  if (!ok) raise(ErrorKind::ParseError, "bad complex literal '" + token + "'");
  std::string im = body.substr(pos);
  if (im == "+") im = "1";
  if (im == "-") im = "-1";
  bool ok2 = false;
  const double iv = to_double(im, ok2);
  if (!ok2) raise(ErrorKind::ParseError, "bad complex literal '" + token + "'");
  return Complex(re, iv);
}

std::string format_complex(const Complex& z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+");
  double im = std::abs(z.imag());
  os << im << "i";
  return os.str();
}

namespace {

struct LineReader {
  std::istream& in;
  std::string origin;
  int line = 0;

  // Next non-empty, non-comment line.
  bool next(std::string& out) {
    while (std::getline(in, out)) {
      ++line;
      const auto first = out.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      if (out[first] == '#') continue;
      return true;
    }
    return false;
  }
};

int read_dimension(LineReader& r) {
  std::string ln;
  if (!r.next(ln)) parse_fail(r.origin, r.line, "missing dimension line");
  std::istringstream is(ln);
  long n = 0;
  if (!(is >> n) || n <= 0)
    parse_fail(r.origin, r.line, "expected positive dimension, got '" + ln + "'");
  std::string extra;
  if (is >> extra)
    parse_fail(r.origin, r.line, "trailing tokens after dimension");
  if (n > 4096) parse_fail(r.origin, r.line, "dimension too large");
  return static_cast<int>(n);
}

CMatrix read_rows(LineReader& r, int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    std::string ln;
    if (!r.next(ln))
      parse_fail(r.origin, r.line, "expected matrix row " + std::to_string(i + 1));
    std::istringstream is(ln);
    std::string tok;
    for (int j = 0; j < n; ++j) {
      if (!(is >> tok))
        parse_fail(r.origin, r.line,
                   "row has fewer than " + std::to_string(n) + " entries");
      try {
        m(i, j) = parse_complex(tok);
      } catch (const Error& e) {
        parse_fail(r.origin, r.line, e.what());
      }
    }
    if (is >> tok)
      parse_fail(r.origin, r.line,
                 "row has more than " + std::to_string(n) + " entries");
  }
  return m;
}

}  // namespace

CMatrix read_matrix(std::istream& in, const std::string& origin) {
  LineReader r{in, origin};
  const int n = read_dimension(r);
  return read_rows(r, n);
}

CMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::ConfigError, "cannot open matrix file '" + path + "'");
  return read_matrix(in, path);
}

void write_matrix(std::ostream& out, const CMatrix& m) {
  out << m.rows() << "\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j)
      out << (j ? " " : "") << format_complex(m(i, j));
    out << "\n";
  }
}

void write_matrix_file(const std::string& path, const CMatrix& m) {
  std::ofstream out(path);
  if (!out) raise(ErrorKind::ConfigError, "cannot write matrix file '" + path + "'");
  write_matrix(out, m);
}

InitialState read_state(std::istream& in, const std::string& origin) {
  LineReader r{in, origin};
  std::string header;
  if (!r.next(header)) parse_fail(r.origin, r.line, "empty state file");
  std::istringstream hs(header);
  std::string tag;
  hs >> tag;
  if (tag == "density") {
    const int n = read_dimension(r);
    return InitialState::density_matrix(read_rows(r, n));
  }
  if (tag == "vector") {
    const int n = read_dimension(r);
    CVector v(n);
    int got = 0;
    std::string ln;
    while (got < n && r.next(ln)) {
      std::istringstream is(ln);
      std::string tok;
      while (got < n && (is >> tok)) {
        try {
          v(got++) = parse_complex(tok);
        } catch (const Error& e) {
          parse_fail(r.origin, r.line, e.what());
        }
      }
      if (is >> tok) parse_fail(r.origin, r.line, "too many vector entries");
    }
    if (got < n) parse_fail(r.origin, r.line, "vector file ended early");
    return InitialState::pure_vector(v);
  }
  parse_fail(r.origin, r.line, "expected header 'density' or 'vector', got '" + tag + "'");
}

InitialState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::ConfigError, "cannot open state file '" + path + "'");
  return read_state(in, path);
}

void write_state(std::ostream& out, const InitialState& state) {
  if (state.kind() == InitialState::Kind::PureVector) {
    out << "vector\n" << state.vector().size() << "\n";
    const CVector& v = state.vector();
    for (int i = 0; i < v.size(); ++i)
      out << (i ? " " : "") << format_complex(v(i));
    out << "\n";
  } else {
    out << "density\n";
    write_matrix(out, state.density());
  }
}

void write_state_file(const std::string& path, const InitialState& state) {
  std::ofstream out(path);
  if (!out) raise(ErrorKind::ConfigError, "cannot write state file '" + path + "'");
  write_state(out, state);
}

}  // namespace pencilspec
