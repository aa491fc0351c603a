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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "spinweave/dynamics.hpp"
#include "spinweave/errors.hpp"
#include "spinweave/spectral.hpp"
#include "spinweave/system_model.hpp"
#include "spinweave/units.hpp"
#include "support.hpp"

using namespace spinweave;
using spinweave::testing::max_abs;

namespace {

ComplexMatrix in_eigenbasis(const ComplexMatrix& m, const Eigensystem& e) {
  return e.vectors.adjoint() * m * e.vectors;
}

double off_diagonal(const ComplexMatrix& m) {
  ComplexMatrix c = m;
  c.diagonal().setZero();
  return max_abs(c);
}

std::vector<double> gaps_cm1(const RealVector& e) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) out.push_back(units::mev_to_cm1(e(i) - e(j)));
  }
  return out;
}

bool is_gap(double f, const std::vector<double>& gaps, double rel) {
  return std::any_of(gaps.begin(), gaps.end(), [&](double g) { return std::abs(g - f) <= rel * f; });
}

SystemSpec three_donors(double be_donor) {
  SystemSpec s;
  s.n_donors = 3;
  s.n_mn = 0;
  s.include_exciton_electron = true;
  s.be_donor_tesla = be_donor;
  return s;
}

}  // namespace

TEST_CASE("pump with epsilon 0 leaves the ground state alone") {
  const HamiltonianPair pair = build_hamiltonians(SystemSpec{});
  const ComplexMatrix rho0 = thermal_state(pair, 1.6);
  PulseSpec p;
  p.epsilon = 0.0;
  const DensityState s = pump(rho0, pair, p, 1.0);
  CHECK(max_abs(s.ground - rho0) < 1e-15);
  CHECK(max_abs(s.excited) == 0.0);
}

TEST_CASE("flat resonance window: excited population is eps_eff^2") {
  SystemSpec spec;
  spec.resonance_linewidth_mev = 1e9;
  const HamiltonianPair pair = build_hamiltonians(spec);
  const ComplexMatrix rho0 = thermal_state(pair, 1.6);
  PulseSpec p;
  p.epsilon = 0.2;
  const double resonance = 0.5;
  const DensityState s = pump(rho0, pair, p, resonance);
  CHECK(s.excited.trace().real() == doctest::Approx(0.04 * resonance).epsilon(1e-9));
  CHECK(s.excited.trace().real() + s.ground.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("pump output is a valid sector-partitioned density") {
  SystemSpec spec;
  spec.n_mn = 2;
  const HamiltonianPair pair = build_hamiltonians(spec);
  const DensityState s = pump(thermal_state(pair, 1.6), pair, PulseSpec{}, resonance_factor(spec));
  CHECK(s.excited.trace().real() + s.ground.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(hermiticity_deviation(s.excited) < 1e-14);
  CHECK(hermitian_eigen(s.excited).energies(0) > -1e-12);
  CHECK(hermitian_eigen(s.ground).energies(0) > -1e-12);
}

TEST_CASE("pump rejects invalid input") {
  const HamiltonianPair pair = build_hamiltonians(SystemSpec{});
  ComplexMatrix bad = thermal_state(pair, 1.6) * 2.0;
  CHECK_THROWS(pump(bad, pair, PulseSpec{}, 1.0));
  PulseSpec strong;
  strong.epsilon = 0.8;
  CHECK_THROWS(pump(thermal_state(pair, 1.6), pair, strong, 1.0));
}

TEST_CASE("Faraday, no e-h exchange: ground coherences are not created") {
  SystemSpec spec;
  spec.n_mn = 2;
  spec.geometry = Geometry::faraday;
  spec.delta_eh_mev = 0.0;
  const HamiltonianPair pair = build_hamiltonians(spec);
  const DensityState s = pump(thermal_state(pair, 1.6), pair, PulseSpec{}, resonance_factor(spec));
  CHECK(off_diagonal(in_eigenbasis(s.ground, pair.eig_ground)) < 1e-14);
  const LineSpectrum lines = simulate_lines(spec, PulseSpec{});
  CHECK(lines.max_magnitude() < 1e-15);
}

TEST_CASE("stationary ground and empty excited sector give a flat trace") {
  const HamiltonianPair pair = build_hamiltonians(SystemSpec{});
  DensityState s;
  s.ground = thermal_state(pair, 1.6);
  s.excited = ComplexMatrix::Zero(pair.h_excited.rows(), pair.h_excited.cols());
  const auto grid = uniform_grid(5.0, 0.05);
  const Trace tr = signal_trace(s, pair, PulseSpec{}, grid);
  const auto [lo, hi] = std::minmax_element(tr.y.begin(), tr.y.end());
  CHECK(*hi - *lo < 1e-15);
}

TEST_CASE("zero field and no exchange give a flat trace") {
  SystemSpec spec;
  spec.n_mn = 2;
  spec.b_tesla = 0.0;
  spec.be_per_ion_tesla = 0.0;
  spec.delta_eh_mev = 0.0;
  const Trace tr = simulate(spec, PulseSpec{}, 10.0, 0.05);
  const auto [lo, hi] = std::minmax_element(tr.y.begin(), tr.y.end());
  CHECK(*hi - *lo < 1e-15);
}

TEST_CASE("single donor: one excited beat at |g| mu_B sqrt(B^2 + B_d^2)") {
  SystemSpec spec;
  spec.n_donors = 1;
  spec.n_mn = 0;
  spec.g_electron = -1.64;
  spec.be_donor_tesla = 3.0;
  const LineSpectrum lines = simulate_lines(spec, PulseSpec{}).only(Sector::excited);
  const double expected =
      units::mev_to_cm1(1.64 * units::kBohrMagneton * std::hypot(spec.b_tesla, spec.be_donor_tesla));
  REQUIRE(lines.lines.size() == 1);
  CHECK(lines.lines[0].freq_cm1() == doctest::Approx(expected).epsilon(1e-6));

  const Trace tr = simulate(spec, PulseSpec{}, 40.0, 0.02);
  const auto spec_pts = fft_spectrum(tr);
  const auto peak = std::max_element(spec_pts.begin(), spec_pts.end(),
                                     [](const auto& a, const auto& b) { return a.power < b.power; });
  const double bin = 1.0 / (40.0 * units::kSpeedOfLight);
  CHECK(std::abs(peak->freq_cm1 - expected) <= bin);
}

TEST_CASE("odd-only detection scales even-parity lines by eta") {
  SystemSpec spec;
  spec.n_mn = 1;
  PulseSpec all;
  all.parity_leak = 0.1;
  PulseSpec odd = all;
  odd.detection = DetectionParity::odd_only;
  const LineSpectrum a = simulate_lines(spec, all);
  const LineSpectrum b = simulate_lines(spec, odd);
  REQUIRE(a.lines.size() == b.lines.size());
  int even = 0;
  for (std::size_t i = 0; i < a.lines.size(); ++i) {
    const double expect = a.lines[i].delta_m % 2 == 0 ? 0.1 : 1.0;
    if (a.lines[i].delta_m % 2 == 0) ++even;
    CHECK(std::abs(b.lines[i].amplitude - expect * a.lines[i].amplitude) <= 1e-12 * a.max_magnitude());
  }
  CHECK(even > 0);
}

TEST_CASE("eta 0 removes every even-parity frequency") {
  const SystemSpec spec = three_donors(10.0);
  PulseSpec p;
  p.detection = DetectionParity::odd_only;
  p.parity_leak = 0.0;
  const LineSpectrum lines = simulate_lines(spec, p);
  for (const auto& l : lines.lines) {
    if (l.delta_m % 2 == 0) CHECK(l.magnitude() <= 1e-10 * lines.max_magnitude());
  }
}

TEST_CASE("three donors: SF, 2SF and 3SF lines at eigen-gap multiples") {
  // The bound donors see a 2 T exchange field in the excited sector.
  const SystemSpec spec = three_donors(2.0);
  const HamiltonianPair pair = build_hamiltonians(spec);
  const auto& eg = pair.eig_ground.energies;
  const double sf = units::mev_to_cm1(eg(eg.size() - 1) - eg(0)) / 3.0;
  CHECK(sf == doctest::Approx(13.0).epsilon(0.02));
  const LineSpectrum lines = simulate_lines(spec, PulseSpec{}).only(Sector::ground);
  for (int k = 1; k <= 3; ++k) {
    CHECK(lines.amplitude_near(k * sf, 0.005) > 1e-12);
  }
  const std::vector<double> gaps = gaps_cm1(eg);
  for (const auto& l : lines.lines) CHECK(is_gap(l.freq_cm1(), gaps, 1e-6));
}

TEST_CASE("fitted frequencies are eigenvalue gaps") {
  SystemSpec spec;
  spec.n_mn = 2;
  const HamiltonianPair pair = build_hamiltonians(spec);
  std::vector<double> gaps = gaps_cm1(pair.eig_ground.energies);
  const std::vector<double> ge = gaps_cm1(pair.eig_excited.energies);
  gaps.insert(gaps.end(), ge.begin(), ge.end());
  const Trace tr = simulate(spec, PulseSpec{}, 20.0, 0.02);
  FitOptions fit;
  fit.sv_threshold = 1e-8;
  const ModeSet modes = fit_damped_sinusoids(tr.mean_subtracted(), fit);
  REQUIRE(!modes.modes.empty());
  double amax = 0.0;
  for (const auto& m : modes.modes) amax = std::max(amax, m.amplitude);
  for (const auto& m : modes.modes) {
    if (m.amplitude > 1e-3 * amax) CHECK_MESSAGE(is_gap(m.freq_cm1, gaps, 0.005), m.freq_cm1);
  }
}

TEST_CASE("ground PR line at 6.536 cm^-1 is independent of B_e") {
  SystemSpec spec;
  spec.n_mn = 2;
  double amp_prev = -1.0;
  for (double be : {3.0, 5.0, 7.0}) {
    spec.be_per_ion_tesla = be;
    const LineSpectrum lines = simulate_lines(spec, PulseSpec{}).only(Sector::ground);
    const double a = lines.amplitude_near(6.5361, 1e-4);
    CHECK(a > 0.0);
    CHECK(a != amp_prev);
    amp_prev = a;
  }
}

TEST_CASE("line list reproduces the sampled trace") {
  SystemSpec spec;
  spec.n_donors = 1;
  spec.n_mn = 1;
  spec.include_exciton_electron = true;
  const LineSpectrum lines = simulate_lines(spec, PulseSpec{});
  const Trace tr = simulate(spec, PulseSpec{}, 5.0, 0.05);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    CHECK(std::abs(lines.evaluate(tr.t[i]) - tr.y[i]) < 1e-14);
  }
}

TEST_CASE("pump linearity: halving epsilon quarters every line") {
  SystemSpec spec;
  spec.n_mn = 2;
  PulseSpec p;
  p.epsilon = 0.2;
  const LineSpectrum a = simulate_lines(spec, p);
  p.epsilon = 0.1;
  const LineSpectrum b = simulate_lines(spec, p);
  REQUIRE(a.lines.size() == b.lines.size());
  for (std::size_t i = 0; i < a.lines.size(); ++i) {
    if (a.lines[i].magnitude() < 1e-6 * a.max_magnitude()) continue;
    CHECK(b.lines[i].magnitude() / a.lines[i].magnitude() == doctest::Approx(0.25).epsilon(0.01));
  }
}

TEST_CASE("trace is invariant under relabeling identical spins") {
  SystemSpec spec;
  spec.n_donors = 2;
  spec.n_mn = 1;
  spec.include_exciton_electron = true;
  spec.be_donor_tesla = 2.0;
  const HamiltonianPair a = build_hamiltonians(spec);
  // Site-basis injection recovered from the eigenbasis isometry.
  const ComplexMatrix inj = a.eig_excited.vectors * a.overlap_v * a.eig_ground.vectors.adjoint();

  // Swap the two donors (sites 0 and 1) in both sectors.
  auto swap_first_two = [](int dim) {
    const int tail = dim / 4;
    ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        for (int r = 0; r < tail; ++r) s((j * 2 + i) * tail + r, (i * 2 + j) * tail + r) = 1.0;
      }
    }
    return s;
  };
  const ComplexMatrix pg = swap_first_two(static_cast<int>(a.h_ground.rows()));
  const ComplexMatrix pe = swap_first_two(static_cast<int>(a.h_excited.rows()));
  const ComplexMatrix ig = ComplexMatrix::Identity(a.h_ground.rows(), a.h_ground.cols());
  const ComplexMatrix ie = ComplexMatrix::Identity(a.h_excited.rows(), a.h_excited.cols());
  const HamiltonianPair x = assemble_pair(a.h_ground, a.h_excited, inj, ig, ie, a.window);
  const HamiltonianPair y = assemble_pair(pg * a.h_ground * pg.adjoint(), pe * a.h_excited * pe.adjoint(),
                                          pe * inj * pg.adjoint(), ig, ie, a.window);
  const auto grid = uniform_grid(4.0, 0.05);
  auto run = [&](const HamiltonianPair& pair) {
    const DensityState st = pump(thermal_state(pair, spec.temperature_k), pair, PulseSpec{}, 1.0);
    return signal_trace(st, pair, PulseSpec{}, grid);
  };
  const Trace tx = run(x);
  const Trace ty = run(y);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(tx.y[i] - ty.y[i]) < 1e-14);
}

TEST_CASE("ensemble with sigma 0 matches a single simulation") {
  SystemSpec spec;
  spec.n_mn = 1;
  EnsembleSpec ens;
  ens.n_realizations = 4;
  ens.be_mean_tesla = spec.be_per_ion_tesla;
  ens.be_sigma_tesla = 0.0;
  const Trace e = ensemble_simulate(spec, PulseSpec{}, ens, 5.0, 0.05);
  const Trace s = simulate(spec, PulseSpec{}, 5.0, 0.05);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(e.y[i] - s.y[i]) < 1e-15);
}

TEST_CASE("ensemble is deterministic and thread-count independent") {
  SystemSpec spec;
  spec.n_mn = 1;
  EnsembleSpec ens;
  ens.n_realizations = 6;
  ens.be_sigma_tesla = 1.0;
  ens.mn_count_mean = 1.2;
  ens.seed = 17;
  const Trace a = ensemble_simulate(spec, PulseSpec{}, ens, 4.0, 0.05, 1);
  const Trace b = ensemble_simulate(spec, PulseSpec{}, ens, 4.0, 0.05, 3);
  const Trace c = ensemble_simulate(spec, PulseSpec{}, ens, 4.0, 0.05, 1);
  CHECK(a.y == b.y);
  CHECK(a.y == c.y);
}

TEST_CASE("ensemble realizations follow the seeded distributions") {
  SystemSpec spec;
  EnsembleSpec ens;
  ens.n_realizations = 400;
  ens.be_sigma_tesla = 1.0;
  ens.mn_count_mean = 1.5;
  ens.mn_max = 2;
  std::set<int> counts;
  double sum = 0.0;
  for (int i = 0; i < ens.n_realizations; ++i) {
    const SystemSpec r = ensemble_realization(spec, ens, i);
    CHECK(r.be_per_ion_tesla >= 0.0);
    CHECK(r.n_mn >= 0);
    CHECK(r.n_mn <= 2);
    counts.insert(r.n_mn);
    sum += r.be_per_ion_tesla;
  }
  CHECK(counts.size() == 3);
  CHECK(sum / ens.n_realizations == doctest::Approx(5.0).epsilon(0.05));
  CHECK(ensemble_realization(spec, ens, 5).be_per_ion_tesla ==
        ensemble_realization(spec, ens, 5).be_per_ion_tesla);
}

TEST_CASE("ensemble rejects an oversized dense problem") {
  SystemSpec spec;
  spec.n_mn = 1;
  EnsembleSpec ens;
  ens.n_realizations = 2;
  ens.mn_count_mean = 1.0;
  ens.mn_max = 6;
  CHECK_THROWS_AS(ensemble_simulate(spec, PulseSpec{}, ens, 2.0, 0.05), ResourceLimitError);
}

TEST_CASE("pulse and ensemble validation") {
  PulseSpec p;
  p.parity_leak = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  EnsembleSpec e;
  e.n_realizations = 0;
  CHECK_THROWS_AS(e.validate(), std::invalid_argument);
  e.n_realizations = 1;
  e.be_sigma_tesla = -1.0;
  CHECK_THROWS_AS(e.validate(), std::invalid_argument);
}
