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

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spinweave/system_model.hpp"
#include "spinweave/units.hpp"
#include "support.hpp"

using namespace spinweave;
using spinweave::testing::max_abs;

namespace {

SystemSpec mn_only(int n_mn) {
  SystemSpec s;
  s.n_mn = n_mn;
  return s;
}

}  // namespace

TEST_CASE("Voigt single-ion Zeeman ladder") {
  const HamiltonianPair pair = build_hamiltonians(mn_only(1));
  const auto& e = pair.eig_ground.energies;
  REQUIRE(e.size() == 6);
  const double quantum = 2.0 * units::kBohrMagneton * 7.0;
  CHECK(quantum == doctest::Approx(0.81037).epsilon(1e-5));
  for (int k = 0; k < 6; ++k) CHECK(e(k) == doctest::Approx((k - 2.5) * quantum).epsilon(1e-12));
  CHECK(units::mev_to_cm1(e(1) - e(0)) == doctest::Approx(6.5361).epsilon(2e-5));
}

TEST_CASE("zero field and zero exchange") {
  SystemSpec s = mn_only(1);
  s.b_tesla = 0.0;
  s.be_per_ion_tesla = 0.0;
  s.delta_eh_mev = 0.0;
  const HamiltonianPair pair = build_hamiltonians(s);
  CHECK(max_abs(pair.h_ground) == 0.0);
  const int de = static_cast<int>(pair.h_excited.rows());
  CHECK(max_abs(pair.h_excited - s.exciton_energy_mev * ComplexMatrix::Identity(de, de)) < 1e-12);
  const ComplexMatrix vv = pair.overlap_v.adjoint() * pair.overlap_v;
  CHECK(max_abs(vv - ComplexMatrix::Identity(vv.rows(), vv.cols())) < 1e-12);
}

TEST_CASE("Faraday geometry: V^dagger V commutes with H_ground") {
  for (int n : {1, 2}) {
    SystemSpec s = mn_only(n);
    s.geometry = Geometry::faraday;
    s.delta_eh_mev = 0.0;
    const HamiltonianPair pair = build_hamiltonians(s);
    const ComplexMatrix vv = pair.transition.adjoint() * pair.transition;
    const ComplexMatrix hg = pair.eig_ground.energies.cast<Complex>().asDiagonal();
    CHECK(max_abs(hg * vv - vv * hg) < 1e-10);
  }
}

TEST_CASE("overlap_v is an isometry") {
  SystemSpec s;
  s.n_donors = 2;
  s.n_mn = 1;
  s.include_exciton_electron = true;
  const HamiltonianPair pair = build_hamiltonians(s);
  const ComplexMatrix vv = pair.overlap_v.adjoint() * pair.overlap_v;
  CHECK(max_abs(vv - ComplexMatrix::Identity(vv.rows(), vv.cols())) < 1e-12);
  CHECK(pair.excited_dims.size() == pair.ground_dims.size() + 1);
}

TEST_CASE("ground eigenstates carry integer-spaced axis magnetization") {
  SystemSpec s;
  s.n_donors = 2;
  s.n_mn = 1;
  const HamiltonianPair pair = build_hamiltonians(s);
  for (int k = 0; k < pair.eig_ground.dim(); ++k) {
    const double m = pair.ground_axis_magnetization(k);
    CHECK(std::abs(2 * m - std::round(2 * m)) < 1e-9);
  }
}

TEST_CASE("permutation of identical spins leaves spectra invariant") {
  SystemSpec s;
  s.n_donors = 2;
  s.n_mn = 2;
  s.include_exciton_electron = true;
  s.be_donor_tesla = 2.0;
  const HamiltonianPair a = build_hamiltonians(s);
  // Swapping sites 0 and 1 (donors) via the explicit permutation operator.
  const int d = static_cast<int>(a.h_excited.rows());
  const int tail = d / 4;
  ComplexMatrix swap = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int r = 0; r < tail; ++r) swap((j * 2 + i) * tail + r, (i * 2 + j) * tail + r) = 1.0;
    }
  }
  const ComplexMatrix permuted = swap * a.h_excited * swap.adjoint();
  CHECK(max_abs(permuted - a.h_excited) < 1e-12);
  const Eigensystem e = hermitian_eigen(permuted);
  CHECK((e.energies - a.eig_excited.energies).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("excited spectrum approaches the shifted ground ladder at high field") {
  SystemSpec s = mn_only(1);
  s.b_tesla = 500.0;
  s.delta_eh_mev = 0.0;
  const HamiltonianPair pair = build_hamiltonians(s);
  const auto& g = pair.eig_ground.energies;
  const auto& e = pair.eig_excited.energies;
  const double quantum_g = g(1) - g(0);
  const double quantum_e = e(1) - e(0);
  CHECK(quantum_e == doctest::Approx(quantum_g).epsilon(1e-3));
}

TEST_CASE("thermal state") {
  SystemSpec s = mn_only(1);
  const HamiltonianPair pair = build_hamiltonians(s);
  const ComplexMatrix hot = thermal_state(pair, 1e9);
  CHECK(max_abs(hot - ComplexMatrix::Identity(6, 6) / 6.0) < 1e-8);
  CHECK(std::abs(thermal_state(pair, 1.6).trace().real() - 1.0) < 1e-12);
  CHECK_THROWS_AS(thermal_state(pair, 0.0), std::invalid_argument);

  // Single spin-1/2 with a 0.81037 meV splitting.
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 0) = 0.81037;
  const ComplexMatrix sym = ComplexMatrix::Identity(2, 2);
  const HamiltonianPair two = assemble_pair(h, h, ComplexMatrix::Identity(2, 2), sym, sym, ResonanceWindow{});
  const ComplexMatrix rho = thermal_state(two, 1.6);
  CHECK(rho(1, 1).real() / rho(0, 0).real() == doctest::Approx(356.7).epsilon(1e-3));

  const HamiltonianPair zero = assemble_pair(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2),
                                             ComplexMatrix::Identity(2, 2), sym, sym, ResonanceWindow{});
  CHECK(max_abs(thermal_state(zero, 0.01) - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-14);
}

TEST_CASE("resonance factor") {
  SystemSpec s;
  CHECK(resonance_factor(s) == doctest::Approx(36.0 / 136.0).epsilon(1e-12));
  s.pump_photon_energy_mev = s.exciton_energy_mev;
  CHECK(resonance_factor(s) == 1.0);
  s.pump_photon_energy_mev = s.exciton_energy_mev + s.resonance_linewidth_mev;
  CHECK(resonance_factor(s) == doctest::Approx(0.5));
  const ResonanceWindow w = resonance_window(s);
  CHECK(w.relative_amplitude(w.reference_mev) == doctest::Approx(1.0));
}

TEST_CASE("spec validation") {
  SystemSpec empty;
  empty.n_mn = 0;
  CHECK_THROWS_AS(build_hamiltonians(empty), std::invalid_argument);
  SystemSpec cold;
  cold.temperature_k = 0.0;
  CHECK_THROWS_AS(cold.validate(), std::invalid_argument);
  SystemSpec narrow;
  narrow.resonance_linewidth_mev = 0.0;
  CHECK_THROWS_AS(narrow.validate(), std::invalid_argument);
}
