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
#ifndef SPINWEAVE_DYNAMICS_HPP
#define SPINWEAVE_DYNAMICS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spinweave/spin_algebra.hpp"
#include "spinweave/system_model.hpp"
#include "spinweave/trace.hpp"

namespace spinweave {

/// odd_only keeps A2-like (odd Delta m) coherences, even_only A1-like ones.
enum class DetectionParity { all, odd_only, even_only };

/// resonant: probe through the same spectrally weighted transition operator
/// as the pump (stimulated emission minus absorption within the resonance
/// window). open_band: spectrally integrated probe, reading the first
/// moment of the transition energy.
enum class Readout { resonant, open_band };

enum class Sector { ground, excited };

struct PulseSpec {
  double epsilon = 0.2;
  DetectionParity detection = DetectionParity::all;
  double parity_leak = 0.1;  // eta
  Readout readout = Readout::resonant;

  void validate() const;
};

/// Post-pump density operator, one block per sector, in site bases.
struct DensityState {
  ComplexMatrix ground;
  ComplexMatrix excited;
};

/// Impulsive pump with effective amplitude eps_eff = epsilon sqrt(resonance):
///   rho_ee = eps_eff^2 P rho0 P^†
///   rho_gg = rho0 - (eps_eff^2 / 2) {P^† P, rho0}
/// with P = pair.transition, total trace renormalized to 1.
DensityState pump(const ComplexMatrix& rho0, const HamiltonianPair& pair,
                  const PulseSpec& pulse, double resonance);

/// Re(amplitude * exp(-i omega t)); omega > 0 in rad/ps.
struct SpectralLine {
  Sector sector;
  double omega;
  Complex amplitude;
  int delta_m;  // |Delta m| of the contributing coherences

  double freq_cm1() const;
  double magnitude() const { return std::abs(amplitude); }
};

/// Exact decomposition of a trace into a constant and discrete lines.
struct LineSpectrum {
  double dc = 0.0;
  std::vector<SpectralLine> lines;  // sorted by (sector, omega)

  double evaluate(double t_ps) const;
  LineSpectrum only(Sector sector) const;
  double max_magnitude() const;
  /// Sum of amplitudes of lines within rel_tol of freq_cm1 (all sectors
  /// unless `sector` is given). Returns |sum|.
  double amplitude_near(double freq_cm1, double rel_tol,
                        std::optional<Sector> sector = {}) const;
};

/// y(t) = Re Tr[rho_ee(t) O_e] - Re Tr[rho_gg(t) O_g] as a line list;
/// oscillating terms with blocked Delta-m parity are scaled by eta.
LineSpectrum signal_lines(const DensityState& state, const HamiltonianPair& pair,
                          const PulseSpec& pulse);

Trace signal_trace(const DensityState& state, const HamiltonianPair& pair,
                   const PulseSpec& pulse, std::span<const double> t_grid);

Trace sample(const LineSpectrum& lines, std::span<const double> t_grid);

/// thermal_state -> pump -> signal, on the grid 0, dt, ..., t_max.
Trace simulate(const SystemSpec& spec, const PulseSpec& pulse, double t_max_ps,
               double dt_ps);

LineSpectrum simulate_lines(const SystemSpec& spec, const PulseSpec& pulse);

struct EnsembleSpec {
  int n_realizations = 1;
  double be_mean_tesla = 5.0;
  double be_sigma_tesla = 0.0;
  /// Poisson mean for ions per exciton; unset keeps the system's n_mn.
  std::optional<double> mn_count_mean;
  int mn_max = 2;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Per-realization spec: B_e ~ Normal(mean, sigma) truncated at 0 and
/// n_mn ~ Poisson(mn_count_mean) clipped to [0, mn_max], drawn from the
/// counter stream (seed, realization).
SystemSpec ensemble_realization(const SystemSpec& spec, const EnsembleSpec& ens,
                                int realization);

/// Mean of per-realization traces, accumulated in realization order.
/// threads <= 0 uses default_thread_count().
Trace ensemble_simulate(const SystemSpec& spec, const PulseSpec& pulse,
                        const EnsembleSpec& ens, double t_max_ps, double dt_ps,
                        int threads = 0);

/// SPINWEAVE_THREADS if set and positive, else hardware concurrency.
int default_thread_count();

}  // namespace spinweave

#endif  // SPINWEAVE_DYNAMICS_HPP
