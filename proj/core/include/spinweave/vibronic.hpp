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
#ifndef SPINWEAVE_VIBRONIC_HPP
#define SPINWEAVE_VIBRONIC_HPP

#include <vector>

#include "spinweave/dynamics.hpp"
#include "spinweave/spin_algebra.hpp"
#include "spinweave/system_model.hpp"

namespace spinweave {

/// S_total / (2 (1 + B^2 / B_e^2)); the B_e -> 0 limit (B > 0) is 0.
double huang_rhys_factor(double s_total, double b_tesla, double b_e_tesla);

struct VibronicSpec {
  double huang_rhys = 0.0;
  int n_levels = 40;
  double thermal_occupation = 0.0;  // mean quanta in the ground oscillator

  void validate() const;
};

/// <m| D(sqrt(S)) |n> by the two-term recurrence from exp(-S/2). Throws
/// NumericError when rows below n_levels/2 lose more than 1e-6 of their
/// norm to truncation.
Eigen::MatrixXd franck_condon_matrix(const VibronicSpec& spec);

struct LadderEntry {
  int k;
  double intensity;  // |M[k][0]|^2
  double ratio;      // intensity / intensity(k = 0)
};

std::vector<LadderEntry> raman_overtone_ladder(const VibronicSpec& spec, int k_max);

/// One quantum of the Mn spin-flip ladder (g_Mn mu_B B at 7 T), meV.
inline constexpr double kDefaultVibronicQuantumMeV = 0.81037;

/// Two equal-frequency oscillators displaced by the Franck-Condon overlap,
/// wired as a sector pair so the dynamics protocol applies unchanged.
HamiltonianPair oscillator_pair(const VibronicSpec& spec,
                                double quantum_mev = kDefaultVibronicQuantumMeV,
                                const ResonanceWindow& window = {});

/// Bose populations at the spec's thermal occupation, ground eigenbasis.
ComplexMatrix oscillator_thermal_state(const VibronicSpec& spec);

struct OvertoneAmplitudes {
  std::vector<double> ground;   // k = 1..4
  std::vector<double> excited;  // k = 1..4
};

/// Beat amplitude at k * quantum in each sector after the impulsive pump.
OvertoneAmplitudes impulsive_overtone_amplitudes(const VibronicSpec& spec, double epsilon,
                                                 Readout readout = Readout::resonant,
                                                 double quantum_mev = kDefaultVibronicQuantumMeV);

}  // namespace spinweave

#endif  // SPINWEAVE_VIBRONIC_HPP
