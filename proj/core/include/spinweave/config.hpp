// Copyright 2026 The spinweave Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef SPINWEAVE_CONFIG_HPP
#define SPINWEAVE_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinweave/dynamics.hpp"
#include "spinweave/magnetics.hpp"
#include "spinweave/spectral.hpp"
#include "spinweave/system_model.hpp"

namespace spinweave {

struct GridSpec {
  double t_max_ps = 20.0;
  double dt_ps = 0.02;

  void validate() const;
};

/// Symmetric-superposition demo state (entangle command).
struct StateSpec {
  int n_spins = 2;
  double spin = 0.5;
  std::vector<double> coefficients_re;
  std::vector<double> coefficients_im;  // empty means all zero
  double t_ps = 0.0;
  double omega0_rad_per_ps = 0.0;
};

struct RunConfig {
  SystemSpec system;
  PulseSpec pulse;
  std::optional<EnsembleSpec> ensemble;
  GridSpec grid;
  FitOptions analysis;
  MagneticParams magnetics;
  std::optional<StateSpec> state;
  std::string output_dir = ".";
  bool plot = false;

  /// Re-validates every section; throws ConfigError naming the key.
  void validate() const;
};

/// Grammar: one `key = value` per line; `#` starts a comment; blank lines
/// ignored; keys are dotted (system.B_T). Unknown or repeated keys are
/// errors. `source` only labels messages.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Every key with its resolved value, in canonical order; feeding the
/// result back through parse_config reproduces the config.
std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig& cfg);
std::string format_config(const RunConfig& cfg);

std::string to_string(Geometry g);
std::string to_string(DetectionParity d);
std::string to_string(Readout r);

}  // namespace spinweave

#endif  // SPINWEAVE_CONFIG_HPP
