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

#ifndef SPINWEAVE_UNITS_HPP
#define SPINWEAVE_UNITS_HPP

#include <numbers>

// Global unit system: energy meV, time ps, field T, temperature K,
// wavenumber cm^-1.
namespace spinweave::units {

inline constexpr double kBohrMagneton = 0.05788382;     // meV / T
inline constexpr double kBoltzmann = 0.08617333;        // meV / K
inline constexpr double kMeVToWavenumber = 8.065544;    // cm^-1 per meV
inline constexpr double kHbar = 0.6582119;              // meV ps
inline constexpr double kSpeedOfLight = 0.0299792458;   // cm / ps
inline constexpr double kPi = std::numbers::pi;

inline constexpr double mev_to_cm1(double e) { return e * kMeVToWavenumber; }
inline constexpr double cm1_to_mev(double nu) { return nu / kMeVToWavenumber; }

// Angular frequency (rad/ps) of an energy gap.
inline constexpr double mev_to_rad_per_ps(double e) { return e / kHbar; }

// Ordinary frequency (1/ps) to wavenumber.
inline constexpr double per_ps_to_cm1(double f) { return f / kSpeedOfLight; }

inline constexpr double rad_per_ps_to_cm1(double w) {
  return w / (2.0 * kPi * kSpeedOfLight);
}

}  // namespace spinweave::units

#endif  // SPINWEAVE_UNITS_HPP
