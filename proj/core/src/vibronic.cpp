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
#include "spinweave/vibronic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spinweave/errors.hpp"
#include "spinweave/units.hpp"

namespace spinweave {

double huang_rhys_factor(double s_total, double b_tesla, double b_e_tesla) {
  if (!(s_total >= 0.0)) throw std::invalid_argument("huang_rhys: S_total must be >= 0");
  if (b_e_tesla < 0.0) throw std::invalid_argument("huang_rhys: B_e must be >= 0");
  if (b_tesla == 0.0) return s_total / 2.0;
  if (b_e_tesla == 0.0) return 0.0;
  const double r = b_tesla / b_e_tesla;
  return s_total / (2.0 * (1.0 + r * r));
}

void VibronicSpec::validate() const {
  if (!(huang_rhys >= 0.0) || !std::isfinite(huang_rhys)) {
    throw std::invalid_argument("huang_rhys: must be finite and >= 0");
  }
  if (n_levels < 2) throw std::invalid_argument("n_levels: must be >= 2");
  if (!(thermal_occupation >= 0.0)) throw std::invalid_argument("thermal_occupation: must be >= 0");
}

Eigen::MatrixXd franck_condon_matrix(const VibronicSpec& spec) {
  spec.validate();
  const int n = spec.n_levels;
  const double lambda = std::sqrt(spec.huang_rhys);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m(0, 0) = std::exp(-spec.huang_rhys / 2.0);
  // First column upward in m, then each row rightward in n.
  for (int i = 0; i + 1 < n; ++i) m(i + 1, 0) = lambda * m(i, 0) / std::sqrt(i + 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j + 1 < n; ++j) {
      const double down = i > 0 ? std::sqrt(static_cast<double>(i)) * m(i - 1, j) : 0.0;
      m(i, j + 1) = (down - lambda * m(i, j)) / std::sqrt(j + 1.0);
    }
  }
  for (int i = 0; i < n / 2; ++i) {
    const double norm = m.row(i).squaredNorm();
    if (norm < 1.0 - 1e-6) {
      std::ostringstream msg;
      msg << "franck_condon_matrix: row " << i << " keeps only " << norm
          << " of its weight; increase n_levels";
      throw NumericError(msg.str());
    }
  }
  return m;
}

std::vector<LadderEntry> raman_overtone_ladder(const VibronicSpec& spec, int k_max) {
  if (k_max < 0 || k_max >= spec.n_levels) {
    throw std::invalid_argument("k_max: must lie in [0, n_levels)");
  }
  const Eigen::MatrixXd m = franck_condon_matrix(spec);
  const double i0 = m(0, 0) * m(0, 0);
  std::vector<LadderEntry> out;
  for (int k = 0; k <= k_max; ++k) {
    const double ik = m(k, 0) * m(k, 0);
    out.push_back({k, ik, ik / i0});
  }
  return out;
}

HamiltonianPair oscillator_pair(const VibronicSpec& spec, double quantum_mev,
                                const ResonanceWindow& window) {
  if (!(quantum_mev > 0.0)) throw std::invalid_argument("quantum: must be > 0");
  const Eigen::MatrixXd fc = franck_condon_matrix(spec);
  const int n = spec.n_levels;
  ComplexMatrix number = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) number(i, i) = static_cast<double>(i);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix h_g = quantum_mev * (number + 0.5 * id);
  const ComplexMatrix h_e = window.reference_mev * id + h_g;
  return assemble_pair(h_g, h_e, fc.cast<Complex>(), number, number, window);
}

ComplexMatrix oscillator_thermal_state(const VibronicSpec& spec) {
  spec.validate();
  const int n = spec.n_levels;
  RealVector p = RealVector::Zero(n);
  if (spec.thermal_occupation == 0.0) {
    p(0) = 1.0;
  } else {
    const double q = spec.thermal_occupation / (1.0 + spec.thermal_occupation);
    double w = 1.0;
    for (int i = 0; i < n; ++i, w *= q) p(i) = w;
    p /= p.sum();
  }
  return p.cast<Complex>().asDiagonal();
}

OvertoneAmplitudes impulsive_overtone_amplitudes(const VibronicSpec& spec, double epsilon,
                                                 Readout readout, double quantum_mev) {
  if (!(epsilon >= 0.0 && epsilon <= 0.5)) {
    throw std::invalid_argument("epsilon: must lie in [0, 0.5]");
  }
  // The oscillator's own eigenbasis is the site basis here.
  const HamiltonianPair pair = oscillator_pair(spec, quantum_mev);
  PulseSpec pulse;
  pulse.epsilon = epsilon;
  pulse.readout = readout;
  const DensityState state = pump(oscillator_thermal_state(spec), pair, pulse, 1.0);
  const LineSpectrum lines = signal_lines(state, pair, pulse);

  OvertoneAmplitudes out;
  const double base_cm1 = units::mev_to_cm1(quantum_mev);
  for (int k = 1; k <= 4; ++k) {
    out.ground.push_back(lines.amplitude_near(k * base_cm1, 1e-6, Sector::ground));
    out.excited.push_back(lines.amplitude_near(k * base_cm1, 1e-6, Sector::excited));
  }
  return out;
}

}  // namespace spinweave
