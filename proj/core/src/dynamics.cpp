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
#include "spinweave/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "spinweave/errors.hpp"
#include "spinweave/rng.hpp"
#include "spinweave/units.hpp"

namespace spinweave {

void PulseSpec::validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 0.5)) {
    throw std::invalid_argument("epsilon: must lie in [0, 0.5]");
  }
  if (!(parity_leak >= 0.0 && parity_leak <= 1.0)) {
    throw std::invalid_argument("parity_leak: must lie in [0, 1]");
  }
}

void EnsembleSpec::validate() const {
  if (n_realizations < 1) throw std::invalid_argument("n_realizations: must be >= 1");
  if (!std::isfinite(be_mean_tesla)) throw std::invalid_argument("be_mean: must be finite");
  if (!(be_sigma_tesla >= 0.0)) throw std::invalid_argument("be_sigma: must be >= 0");
  if (mn_count_mean && !(*mn_count_mean >= 0.0)) {
    throw std::invalid_argument("mn_count_mean: must be >= 0");
  }
  if (mn_max < 0) throw std::invalid_argument("mn_max: must be >= 0");
}

namespace {

void require_density(const ComplexMatrix& rho, int dim) {
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("pump: density matrix dimension mismatch");
  }
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << "pump: input trace " << tr << " is not 1";
    throw std::invalid_argument(msg.str());
  }
  if (hermiticity_deviation(rho) > 1e-10) {
    throw std::invalid_argument("pump: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (rho + rho.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("pump: input is not positive semidefinite");
  }
}

// Probe observables in the sector eigenbases.
struct Observables {
  ComplexMatrix excited;
  ComplexMatrix ground;
};

Observables probe_observables(const HamiltonianPair& pair, Readout readout) {
  if (readout == Readout::resonant) {
    const ComplexMatrix& p = pair.transition;
    return {p * p.adjoint(), p.adjoint() * p};
  }
  const ComplexMatrix& v = pair.overlap_v;
  const ComplexVector de =
      (pair.eig_excited.energies.array() - pair.window.reference_mev).matrix().cast<Complex>();
  const ComplexVector dg = pair.eig_ground.energies.cast<Complex>();
  const ComplexMatrix vvd = v * v.adjoint();
  const ComplexMatrix vdv = v.adjoint() * v;
  Observables obs;
  obs.excited = 0.5 * (de.asDiagonal() * vvd + vvd * de.asDiagonal()) -
                v * dg.asDiagonal() * v.adjoint();
  obs.ground = v.adjoint() * de.asDiagonal() * v -
               0.5 * (dg.asDiagonal() * vdv + vdv * dg.asDiagonal());
  return obs;
}

bool parity_blocked(DetectionParity detection, int delta_m) {
  switch (detection) {
    case DetectionParity::all:
      return false;
    case DetectionParity::odd_only:
      return delta_m % 2 == 0;
    case DetectionParity::even_only:
      return delta_m % 2 != 0;
  }
  return false;
}

struct Term {
  double omega;
  int delta_m;
  Complex amplitude;
};

// Appends lines of sign * Re Tr[rho(t) O] for one sector (both in the
// eigenbasis) and returns the constant part.
double sector_lines(const ComplexMatrix& rho, const ComplexMatrix& obs,
                    const RealVector& energies, const RealVector& magnetization,
                    double sign, Sector sector, const PulseSpec& pulse,
                    std::vector<SpectralLine>& out) {
  const auto n = energies.size();
  const double scale = std::max(1.0, energies.cwiseAbs().maxCoeff());
  const double degenerate_tol = 1e-11 * scale;
  double dc = 0.0;
  std::vector<Term> terms;
  for (Eigen::Index j = 0; j < n; ++j) {
    dc += sign * (rho(j, j) * obs(j, j)).real();
    for (Eigen::Index l = 0; l < n; ++l) {
      if (j == l) continue;
      const double gap = energies(j) - energies(l);
      const Complex c = rho(j, l) * obs(l, j);
      if (std::abs(gap) <= degenerate_tol) {
        dc += sign * c.real();
        continue;
      }
      if (gap < 0.0) continue;  // counted with its (j, l) partner
      if (c == Complex(0.0)) continue;
      const int dm = static_cast<int>(
          std::lround(std::abs(magnetization(j) - magnetization(l))));
      double weight = 2.0 * sign;
      if (parity_blocked(pulse.detection, dm)) weight *= pulse.parity_leak;
      terms.push_back({gap / units::kHbar, dm, weight * c});
    }
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return a.delta_m != b.delta_m ? a.delta_m < b.delta_m : a.omega < b.omega;
  });
  const double omega_tol = 1e-8 / units::kHbar;
  std::vector<SpectralLine> lines;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t k = i;
    Complex sum = 0.0;
    double weighted_omega = 0.0;
    double weight_total = 0.0;
    while (k < terms.size() && terms[k].delta_m == terms[i].delta_m &&
           terms[k].omega - terms[i].omega <= omega_tol) {
      sum += terms[k].amplitude;
      const double w = std::abs(terms[k].amplitude) + 1e-300;
      weighted_omega += w * terms[k].omega;
      weight_total += w;
      ++k;
    }
    lines.push_back({sector, weighted_omega / weight_total, sum, terms[i].delta_m});
    i = k;
  }
  std::sort(lines.begin(), lines.end(),
            [](const SpectralLine& a, const SpectralLine& b) { return a.omega < b.omega; });
  out.insert(out.end(), lines.begin(), lines.end());
  return dc;
}

}  // namespace

DensityState pump(const ComplexMatrix& rho0, const HamiltonianPair& pair,
                  const PulseSpec& pulse, double resonance) {
  pulse.validate();
  if (!(resonance > 0.0 && resonance <= 1.0)) {
    throw std::invalid_argument("pump: resonance factor must lie in (0, 1]");
  }
  const double eps_eff = pulse.epsilon * std::sqrt(resonance);
  if (eps_eff > 0.5) throw std::invalid_argument("pump: effective amplitude exceeds 0.5");
  require_density(rho0, pair.eig_ground.dim());

  const ComplexMatrix& ug = pair.eig_ground.vectors;
  const ComplexMatrix& ue = pair.eig_excited.vectors;
  const ComplexMatrix& p = pair.transition;
  const double e2 = eps_eff * eps_eff;

  const ComplexMatrix rho0_eig = ug.adjoint() * rho0 * ug;
  const ComplexMatrix ptp = p.adjoint() * p;
  ComplexMatrix gg = rho0_eig - 0.5 * e2 * (ptp * rho0_eig + rho0_eig * ptp);
  ComplexMatrix ee = e2 * p * rho0_eig * p.adjoint();
  const double total = gg.trace().real() + ee.trace().real();
  gg /= total;
  ee /= total;
  return {ug * gg * ug.adjoint(), ue * ee * ue.adjoint()};
}

double SpectralLine::freq_cm1() const { return units::rad_per_ps_to_cm1(omega); }

double LineSpectrum::evaluate(double t_ps) const {
  double y = dc;
  for (const auto& line : lines) {
    y += (line.amplitude * std::polar(1.0, -line.omega * t_ps)).real();
  }
  return y;
}

LineSpectrum LineSpectrum::only(Sector sector) const {
  LineSpectrum out;
  for (const auto& line : lines) {
    if (line.sector == sector) out.lines.push_back(line);
  }
  return out;
}

double LineSpectrum::max_magnitude() const {
  double m = 0.0;
  for (const auto& line : lines) m = std::max(m, line.magnitude());
  return m;
}

double LineSpectrum::amplitude_near(double freq_cm1, double rel_tol,
                                    std::optional<Sector> sector) const {
  Complex sum = 0.0;
  for (const auto& line : lines) {
    if (sector && line.sector != *sector) continue;
    if (std::abs(line.freq_cm1() - freq_cm1) <= rel_tol * std::abs(freq_cm1)) {
      sum += line.amplitude;
    }
  }
  return std::abs(sum);
}

LineSpectrum signal_lines(const DensityState& state, const HamiltonianPair& pair,
                          const PulseSpec& pulse) {
  pulse.validate();
  const ComplexMatrix& ug = pair.eig_ground.vectors;
  const ComplexMatrix& ue = pair.eig_excited.vectors;
  if (state.ground.rows() != ug.rows() || state.excited.rows() != ue.rows() ||
      state.ground.cols() != ug.rows() || state.excited.cols() != ue.rows()) {
    throw std::invalid_argument("signal: state dimension mismatch");
  }
  const Observables obs = probe_observables(pair, pulse.readout);
  const ComplexMatrix gg = ug.adjoint() * state.ground * ug;
  const ComplexMatrix ee = ue.adjoint() * state.excited * ue;

  LineSpectrum spectrum;
  spectrum.dc += sector_lines(ee, obs.excited, pair.eig_excited.energies,
                              pair.excited_axis_magnetization, +1.0, Sector::excited,
                              pulse, spectrum.lines);
  spectrum.dc += sector_lines(gg, obs.ground, pair.eig_ground.energies,
                              pair.ground_axis_magnetization, -1.0, Sector::ground,
                              pulse, spectrum.lines);
  return spectrum;
}

Trace sample(const LineSpectrum& lines, std::span<const double> t_grid) {
  if (t_grid.empty()) throw std::invalid_argument("signal: empty time grid");
  require_uniform(t_grid);
  Trace trace;
  trace.t.assign(t_grid.begin(), t_grid.end());
  trace.y.resize(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) trace.y[i] = lines.evaluate(t_grid[i]);
  return trace;
}

Trace signal_trace(const DensityState& state, const HamiltonianPair& pair,
                   const PulseSpec& pulse, std::span<const double> t_grid) {
  return sample(signal_lines(state, pair, pulse), t_grid);
}

LineSpectrum simulate_lines(const SystemSpec& spec, const PulseSpec& pulse) {
  const HamiltonianPair pair = build_hamiltonians(spec);
  const ComplexMatrix rho0 = thermal_state(pair, spec.temperature_k);
  const DensityState state = pump(rho0, pair, pulse, resonance_factor(spec));
  return signal_lines(state, pair, pulse);
}

Trace simulate(const SystemSpec& spec, const PulseSpec& pulse, double t_max_ps,
               double dt_ps) {
  const std::vector<double> grid = uniform_grid(t_max_ps, dt_ps);
  return sample(simulate_lines(spec, pulse), grid);
}

SystemSpec ensemble_realization(const SystemSpec& spec, const EnsembleSpec& ens,
                                int realization) {
  CounterRng rng(ens.seed, static_cast<std::uint64_t>(realization));
  SystemSpec out = spec;
  out.be_per_ion_tesla = rng.truncated_normal_nonneg(ens.be_mean_tesla, ens.be_sigma_tesla);
  if (ens.mn_count_mean) {
    out.n_mn = std::clamp(rng.poisson(*ens.mn_count_mean), 0, ens.mn_max);
  }
  return out;
}

int default_thread_count() {
  if (const char* env = std::getenv("SPINWEAVE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

Trace ensemble_simulate(const SystemSpec& spec, const PulseSpec& pulse,
                        const EnsembleSpec& ens, double t_max_ps, double dt_ps,
                        int threads) {
  ens.validate();
  pulse.validate();
  if (ens.mn_count_mean) {
    SystemSpec largest = spec;
    largest.n_mn = ens.mn_max;
    const double dim = std::pow(2.0, largest.n_donors) * std::pow(6.0, largest.n_mn) *
                       (largest.include_exciton_electron ? 2.0 : 1.0);
    if (dim > 5000.0) {
      throw ResourceLimitError("ensemble: mn_max " + std::to_string(ens.mn_max) +
                               " exceeds the dense dimension limit");
    }
  }
  const std::vector<double> grid = uniform_grid(t_max_ps, dt_ps);
  const auto n = static_cast<std::size_t>(ens.n_realizations);
  std::vector<std::vector<double>> per_realization(n);
  std::vector<std::exception_ptr> errors(n);

  auto run_one = [&](std::size_t i) {
    try {
      const SystemSpec real = ensemble_realization(spec, ens, static_cast<int>(i));
      if (real.n_donors + real.n_mn == 0) {
        per_realization[i].assign(grid.size(), 0.0);
        return;
      }
      per_realization[i] = sample(simulate_lines(real, pulse), grid).y;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const int workers = std::clamp(threads > 0 ? threads : default_thread_count(), 1,
                                 static_cast<int>(n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = static_cast<std::size_t>(w); i < n;
             i += static_cast<std::size_t>(workers)) {
          run_one(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Trace mean;
  mean.t = grid;
  mean.y.assign(grid.size(), 0.0);
  for (const auto& y : per_realization) {
    for (std::size_t k = 0; k < grid.size(); ++k) mean.y[k] += y[k];
  }
  for (double& v : mean.y) v /= static_cast<double>(n);
  return mean;
}

}  // namespace spinweave
