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
#ifndef SPINWEAVE_SYSTEM_MODEL_HPP
#define SPINWEAVE_SYSTEM_MODEL_HPP

#include <optional>
#include <vector>

#include "spinweave/spin_algebra.hpp"

namespace spinweave {

enum class Geometry { voigt, faraday };

/// Physical configuration of one localized exciton and its impurities.
struct SystemSpec {
  int n_donors = 0;
  int n_mn = 1;
  bool include_exciton_electron = false;
  Geometry geometry = Geometry::voigt;
  double b_tesla = 7.0;
  double temperature_k = 1.6;
  double g_mn = 2.0;
  /// Unset means "derive from magnetics::effective_g at b_tesla".
  std::optional<double> g_electron;
  double be_per_ion_tesla = 5.0;
  double be_donor_tesla = 0.0;
  double delta_eh_mev = 0.27;
  double exciton_energy_mev = 1677.0;
  double pump_photon_energy_mev = 1687.0;
  double resonance_linewidth_mev = 6.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  double resolved_g_electron() const;
  std::vector<int> ground_site_dims() const;
  std::vector<int> excited_site_dims() const;
};

/// Lorentzian resonance response, peaked at the pump photon energy.
struct ResonanceWindow {
  double center_mev = 1687.0;
  double linewidth_mev = 6.0;
  double reference_mev = 1677.0;  // bare exciton transition

  double lorentzian(double transition_mev) const;
  /// sqrt(L(transition) / L(reference)); 1 for an unshifted transition.
  double relative_amplitude(double transition_mev) const;
};

/// Ground and exciton-present sectors with their eigensystems. All
/// per-sector operators below are expressed in the sector's eigenbasis.
struct HamiltonianPair {
  SystemSpec spec;
  std::vector<int> ground_dims;
  std::vector<int> excited_dims;
  ComplexMatrix h_ground;   // site basis, meV
  ComplexMatrix h_excited;  // site basis, meV
  Eigensystem eig_ground;
  Eigensystem eig_excited;
  /// Isometry ground eigenbasis -> excited eigenbasis (ground eigenvector
  /// tensored with the pump-created exciton-electron spinor).
  ComplexMatrix overlap_v;
  /// overlap_v weighted entrywise by the resonance amplitude of each
  /// transition energy E_f - E_g; drives both pump and probe.
  ComplexMatrix transition;
  /// Total spin projection along the ground quantization axis.
  RealVector ground_axis_magnetization;
  /// Sum of projections of each site on its own effective-field axis.
  RealVector excited_axis_magnetization;
  ResonanceWindow window;
};

HamiltonianPair build_hamiltonians(const SystemSpec& spec);

/// Assembles a pair from explicit sector Hamiltonians. `injection` maps the
/// ground site basis into the excited site basis (dim_e x dim_g, isometric);
/// the symmetry operators commute with their Hamiltonians and label states
/// for the parity mask.
HamiltonianPair assemble_pair(const ComplexMatrix& h_ground,
                              const ComplexMatrix& h_excited,
                              const ComplexMatrix& injection,
                              const ComplexMatrix& ground_symmetry,
                              const ComplexMatrix& excited_symmetry,
                              const ResonanceWindow& window);

/// exp(-H_ground / k_B T) / Z in the ground site basis.
ComplexMatrix thermal_state(const HamiltonianPair& pair, double temperature_k);

/// Gamma^2 / ((hbar w_C - E_e)^2 + Gamma^2).
double resonance_factor(const SystemSpec& spec);

ResonanceWindow resonance_window(const SystemSpec& spec);

/// Index of the pump-created exciton-electron spinor (S_z = -1/2) in the
/// m = +1/2, -1/2 site basis.
inline constexpr int kExcitonSpinorIndex = 1;

}  // namespace spinweave

#endif  // SPINWEAVE_SYSTEM_MODEL_HPP
