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
#include "spinweave/system_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spinweave/errors.hpp"
#include "spinweave/magnetics.hpp"
#include "spinweave/units.hpp"

namespace spinweave {

namespace {

constexpr int kMaxDenseDim = 5000;

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw std::invalid_argument(field + ": " + what);
}

// Field-direction unit vector in the xz plane, (nx, nz).
struct Direction {
  double x = 0.0;
  double z = 0.0;
};

Direction unit_or(double x, double z, Direction fallback) {
  const double norm = std::hypot(x, z);
  if (norm < 1e-14) return fallback;
  return {x / norm, z / norm};
}

}  // namespace

void SystemSpec::validate() const {
  require(n_donors >= 0, "n_donors", "must be >= 0");
  require(n_mn >= 0, "n_mn", "must be >= 0");
  require(n_donors + n_mn >= 1, "n_donors", "empty spin content (n_donors + n_mn must be >= 1)");
  require(std::isfinite(b_tesla) && b_tesla >= 0.0, "B", "must be >= 0");
  require(std::isfinite(temperature_k) && temperature_k > 0.0, "T", "must be > 0");
  require(std::isfinite(g_mn), "g_mn", "must be finite");
  require(!g_electron || std::isfinite(*g_electron), "g_electron", "must be finite");
  require(std::isfinite(be_per_ion_tesla) && be_per_ion_tesla >= 0.0, "B_e_per_ion", "must be >= 0");
  require(std::isfinite(be_donor_tesla) && be_donor_tesla >= 0.0, "B_e_donor", "must be >= 0");
  require(std::isfinite(delta_eh_mev), "delta_eh", "must be finite");
  require(std::isfinite(exciton_energy_mev), "E_e", "must be finite");
  require(std::isfinite(pump_photon_energy_mev), "pump_photon_energy", "must be finite");
  require(std::isfinite(resonance_linewidth_mev) && resonance_linewidth_mev > 0.0,
          "resonance_linewidth", "must be > 0");
  double dim = std::pow(2.0, n_donors) * std::pow(6.0, n_mn) *
               (include_exciton_electron ? 2.0 : 1.0);
  if (dim > kMaxDenseDim) {
    throw ResourceLimitError("excited-sector dimension " + std::to_string(static_cast<long long>(dim)) +
                             " exceeds the dense limit of " + std::to_string(kMaxDenseDim));
  }
}

double SystemSpec::resolved_g_electron() const {
  if (g_electron) return *g_electron;
  return effective_g(b_tesla, MagneticParams{});
}

std::vector<int> SystemSpec::ground_site_dims() const {
  std::vector<int> dims;
  dims.insert(dims.end(), static_cast<std::size_t>(n_donors), 2);
  dims.insert(dims.end(), static_cast<std::size_t>(n_mn), 6);
  return dims;
}

std::vector<int> SystemSpec::excited_site_dims() const {
  std::vector<int> dims = ground_site_dims();
  if (include_exciton_electron) dims.push_back(2);
  return dims;
}

double ResonanceWindow::lorentzian(double transition_mev) const {
  const double d = center_mev - transition_mev;
  const double g2 = linewidth_mev * linewidth_mev;
  return g2 / (d * d + g2);
}

double ResonanceWindow::relative_amplitude(double transition_mev) const {
  return std::sqrt(lorentzian(transition_mev) / lorentzian(reference_mev));
}

ResonanceWindow resonance_window(const SystemSpec& spec) {
  return {spec.pump_photon_energy_mev, spec.resonance_linewidth_mev,
          spec.exciton_energy_mev};
}

double resonance_factor(const SystemSpec& spec) {
  require(spec.resonance_linewidth_mev > 0.0, "resonance_linewidth", "must be > 0");
  return resonance_window(spec).lorentzian(spec.exciton_energy_mev);
}

HamiltonianPair assemble_pair(const ComplexMatrix& h_ground,
                              const ComplexMatrix& h_excited,
                              const ComplexMatrix& injection,
                              const ComplexMatrix& ground_symmetry,
                              const ComplexMatrix& excited_symmetry,
                              const ResonanceWindow& window) {
  if (injection.rows() != h_excited.rows() || injection.cols() != h_ground.rows()) {
    throw std::invalid_argument("assemble_pair: injection dimension mismatch");
  }
  HamiltonianPair pair;
  pair.h_ground = h_ground;
  pair.h_excited = h_excited;
  pair.window = window;
  pair.eig_ground = hermitian_eigen(h_ground, ground_symmetry, &pair.ground_axis_magnetization);
  pair.eig_excited = hermitian_eigen(h_excited, excited_symmetry, &pair.excited_axis_magnetization);
  pair.overlap_v = pair.eig_excited.vectors.adjoint() * injection * pair.eig_ground.vectors;

  pair.transition = pair.overlap_v;
  const auto& eg = pair.eig_ground.energies;
  const auto& ee = pair.eig_excited.energies;
  for (Eigen::Index f = 0; f < ee.size(); ++f) {
    for (Eigen::Index g = 0; g < eg.size(); ++g) {
      pair.transition(f, g) *= window.relative_amplitude(ee(f) - eg(g));
    }
  }
  return pair;
}

HamiltonianPair build_hamiltonians(const SystemSpec& spec) {
  spec.validate();
  const double g_e = spec.resolved_g_electron();
  const std::vector<int> gdims = spec.ground_site_dims();
  const std::vector<int> edims = spec.excited_site_dims();
  const bool voigt = spec.geometry == Geometry::voigt;
  const Direction axis = voigt ? Direction{1.0, 0.0} : Direction{0.0, 1.0};

  const SpinOperatorSet half = spin_operators(kSpinHalf);
  const SpinOperatorSet five = spin_operators(kSpinFiveHalves);
  const int dim_g = product_dim(gdims);
  const int dim_e = product_dim(edims);
  const double mu = units::kBohrMagneton;

  ComplexMatrix h_g = ComplexMatrix::Zero(dim_g, dim_g);
  ComplexMatrix m_g = ComplexMatrix::Zero(dim_g, dim_g);
  ComplexMatrix h_e = spec.exciton_energy_mev * ComplexMatrix::Identity(dim_e, dim_e);
  ComplexMatrix m_e = ComplexMatrix::Zero(dim_e, dim_e);

  auto along = [](const SpinOperatorSet& ops, Direction d) -> ComplexMatrix {
    return d.x * ops.sx + d.z * ops.sz;
  };

  const std::size_t n_sites = gdims.size();
  for (std::size_t i = 0; i < n_sites; ++i) {
    const bool donor = static_cast<int>(i) < spec.n_donors;
    const SpinOperatorSet& ops = donor ? half : five;
    const double g = donor ? g_e : spec.g_mn;
    const double be = donor ? spec.be_donor_tesla : spec.be_per_ion_tesla;

    const ComplexMatrix s_axis = along(ops, axis);
    h_g += mu * g * spec.b_tesla * embed(s_axis, i, gdims);
    m_g += embed(s_axis, i, gdims);

    // Exciton on: external field plus the hole's exchange field along z.
    const double fx = g * (spec.b_tesla * axis.x);
    const double fz = g * (spec.b_tesla * axis.z + be);
    h_e += mu * embed(fx * ops.sx + fz * ops.sz, i, edims);
    m_e += embed(along(ops, unit_or(fx, fz, axis)), i, edims);
  }

  ComplexMatrix injection;
  if (spec.include_exciton_electron) {
    const std::size_t site = edims.size() - 1;
    const double fx = mu * g_e * spec.b_tesla * axis.x;
    const double fz = mu * g_e * spec.b_tesla * axis.z + spec.delta_eh_mev;
    h_e += embed(fx * half.sx + fz * half.sz, site, edims);
    m_e += embed(along(half, unit_or(fx, fz, axis)), site, edims);

    ComplexMatrix spinor = ComplexMatrix::Zero(2, 1);
    spinor(kExcitonSpinorIndex, 0) = 1.0;
    injection = kron(ComplexMatrix::Identity(dim_g, dim_g), spinor);
  } else {
    injection = ComplexMatrix::Identity(dim_g, dim_g);
  }

  HamiltonianPair pair =
      assemble_pair(h_g, h_e, injection, m_g, m_e, resonance_window(spec));
  pair.spec = spec;
  pair.ground_dims = gdims;
  pair.excited_dims = edims;
  return pair;
}

ComplexMatrix thermal_state(const HamiltonianPair& pair, double temperature_k) {
  if (!(temperature_k > 0.0)) throw std::invalid_argument("thermal_state: T must be > 0");
  const auto& e = pair.eig_ground.energies;
  const double kt = units::kBoltzmann * temperature_k;
  RealVector p(e.size());
  for (Eigen::Index i = 0; i < e.size(); ++i) p(i) = std::exp(-(e(i) - e(0)) / kt);
  p /= p.sum();
  const ComplexMatrix& u = pair.eig_ground.vectors;
  return u * p.cast<Complex>().asDiagonal() * u.adjoint();
}

}  // namespace spinweave
