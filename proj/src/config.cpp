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

#include "pencilspec/config.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "pencilspec/error.hpp"

namespace pencilspec {

namespace {

constexpr std::array kKnownKeys = {
    // shared
    "seed", "trials", "threads", "out", "epsilon", "delta",
    // instance
    "instance", "matrix_file", "state_file", "n", "r", "spectrum", "min_gap",
    "min_cmin", "nonnormality", "radius", "include_zero", "zero_in_support",
    "alpha",
    // pipeline
    "family", "R", "access", "shots", "qae_eps", "qae_delta", "qae_const",
    "tau_rel", "tau_abs",
    // scaling sweeps
    "scaling_decades", "scaling_trials", "hadamard_shots_min", "qae_eps_max",
    // bounds lab
    "bounds_trials", "bounds_r_max", "perturbation_trials", "bernstein_trials",
    "bernstein_m", "bernstein_r", "sweep_r", "sweep_gap_min", "sweep_gap_max",
    "sweep_points",
    // applications
    "lindblad_file", "lindblad_gamma", "excite_modes", "zero_test",
    "zero_state_file",
};

bool known_key(const std::string& key) {
  return std::find(kKnownKeys.begin(), kKnownKeys.end(), key) != kKnownKeys.end();
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

ExperimentConfig parse(std::istream& in, const std::string& origin) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      raise(ErrorKind::ConfigError, origin + ":" + std::to_string(lineno) +
                                        ": expected 'key = value', got '" +
                                        stripped + "'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      raise(ErrorKind::ConfigError,
            origin + ":" + std::to_string(lineno) + ": empty key or value");
    if (!known_key(key))
      raise(ErrorKind::ConfigError, origin + ":" + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
    cfg.set(key, value);
  }
  return cfg;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::ConfigError, "cannot open config file '" + path + "'");
  return parse(in, path);
}

ExperimentConfig ExperimentConfig::from_string(const std::string& text,
                                               const std::string& origin) {
  std::istringstream in(text);
  return parse(in, origin);
}

bool ExperimentConfig::has(const std::string& key) const {
  return values_.count(key) > 0;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

std::string ExperimentConfig::get_string(const std::string& key,
                                         const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string ExperimentConfig::require_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end())
    raise(ErrorKind::ConfigError, "missing required config key '" + key + "'");
  return it->second;
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    raise(ErrorKind::ConfigError,
          "config key '" + key + "': bad number '" + it->second + "'");
  }
}

std::int64_t ExperimentConfig::get_int(const std::string& key,
                                       std::int64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const std::int64_t v = std::stoll(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    raise(ErrorKind::ConfigError,
          "config key '" + key + "': bad integer '" + it->second + "'");
  }
}

std::uint64_t ExperimentConfig::get_u64(const std::string& key,
                                        std::uint64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    raise(ErrorKind::ConfigError,
          "config key '" + key + "': bad unsigned integer '" + it->second + "'");
  }
}

bool ExperimentConfig::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  raise(ErrorKind::ConfigError, "config key '" + key + "': bad boolean '" + v + "'");
}

}  // namespace pencilspec
