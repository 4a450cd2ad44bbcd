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

#include <random>
#include <vector>

#include "pencilspec/signal.hpp"

namespace pencilspec {

enum class SpectrumKind {
  Complex,   // anywhere in the disk of radius `radius`
  Real,      // on the real interval (Fourier-eligible)
  NegReal,   // Re(lambda) <= 0 (Exponential-eligible)
};

SpectrumKind spectrum_kind_from_string(const std::string& name);
const char* to_string(SpectrumKind kind);

/// Random diagonalizable test instance with a controlled support: a matrix
/// A = P Lambda P^-1, a pure initial state spanned by the first r right
/// eigenvectors, and the resulting exactly-r-sparse expansion.
struct InstanceSpec {
  int n = 8;
  int r = 2;
  SpectrumKind spectrum = SpectrumKind::Complex;
  double min_normalized_gap = 0.1;  // Delta' of the support modes
  double min_c_min = 0.1;
  double radius = 0.9;          // support eigenvalues live in this disk
  double background_gap = 0.02; // pairwise separation of off-support modes
  double nonnormality = 0.3;    // strength of the P perturbation off unitary
  bool include_zero = false;    // force lambda = 0 into the spectrum
  bool zero_in_support = true;  // ...and into the state's support
  bool fourier_margin = false;  // alpha_A = 2.01 ||A|| instead of 1.01 ||A||
};

struct Instance {
  CMatrix a;
  SpectralModel model;
  InitialState state;
  SparseExpansion expansion;

  CVector support_eigenvalues() const {
    return expansion.support_eigenvalues(model);
  }
};

Instance generate_instance(const InstanceSpec& spec, std::mt19937_64& rng);

/// Random nodes in the closed unit disk (or on the circle) with all pairwise
/// distances above min_gap.
CVector random_disk_nodes(int r, double min_gap, std::mt19937_64& rng,
                          bool on_circle = false);

}  // namespace pencilspec
