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
#include <initializer_list>
#include <random>

namespace pencilspec {

/// splitmix64 finalizer; used to turn structured keys into engine seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives a deterministic engine for a (seed, key...) tuple. Every sampled
/// quantity in the library gets its own substream, so entries/trials can be
/// evaluated concurrently with results identical to serial execution.
inline std::mt19937_64 substream(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = mix64(seed);
  for (std::uint64_t k : keys) h = mix64(h ^ mix64(k));
  return std::mt19937_64(h);
}

// Fixed key tags so distinct sampling sites never collide.
namespace rngkey {
inline constexpr std::uint64_t kSignalEntry = 0x5349474e414c00ULL;  // per (family,t,part)
inline constexpr std::uint64_t kTrial = 0x545249414c0000ULL;        // per trial index
inline constexpr std::uint64_t kInstance = 0x494e5354414e43ULL;     // instance generation
inline constexpr std::uint64_t kExperiment = 0x45585045520000ULL;   // misc experiments
}  // namespace rngkey

}  // namespace pencilspec
