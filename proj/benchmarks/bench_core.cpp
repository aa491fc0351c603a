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

#include <benchmark/benchmark.h>

#include <cmath>

#include "spinweave/dynamics.hpp"
#include "spinweave/entanglement.hpp"
#include "spinweave/spectral.hpp"
#include "spinweave/system_model.hpp"
#include "spinweave/units.hpp"
#include "spinweave/vibronic.hpp"

namespace sw = spinweave;

namespace {

sw::SystemSpec mixed(int n_donors, int n_mn) {
  sw::SystemSpec s;
  s.n_donors = n_donors;
  s.n_mn = n_mn;
  s.include_exciton_electron = n_donors > 0;
  s.be_donor_tesla = 10.0;
  return s;
}

void BM_BuildHamiltonians(benchmark::State& state) {
  const sw::SystemSpec spec = mixed(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(sw::build_hamiltonians(spec));
}
BENCHMARK(BM_BuildHamiltonians)->Args({0, 1})->Args({0, 2})->Args({3, 0})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_SimulateLines(benchmark::State& state) {
  const sw::SystemSpec spec = mixed(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(sw::simulate_lines(spec, sw::PulseSpec{}));
}
BENCHMARK(BM_SimulateLines)->Args({0, 2})->Args({3, 0})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state) {
  const sw::SystemSpec spec = mixed(0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(sw::simulate(spec, sw::PulseSpec{}, 20.0, 0.02));
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

void BM_EnsembleSimulate(benchmark::State& state) {
  sw::SystemSpec spec = mixed(0, 1);
  sw::EnsembleSpec ens;
  ens.n_realizations = static_cast<int>(state.range(0));
  ens.be_sigma_tesla = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(sw::ensemble_simulate(spec, sw::PulseSpec{}, ens, 20.0, 0.02));
}
BENCHMARK(BM_EnsembleSimulate)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_FitDampedSinusoids(benchmark::State& state) {
  sw::Trace tr{sw::uniform_grid(0.05 * static_cast<double>(state.range(0)), 0.05), {}};
  const double k = 2 * sw::units::kPi * sw::units::kSpeedOfLight;
  for (double t : tr.t) {
    tr.y.push_back(std::exp(-t / 2) * std::cos(k * 12 * t + 0.3) + std::exp(-t / 3) * std::cos(k * 13 * t - 0.7));
  }
  for (auto _ : state) benchmark::DoNotOptimize(sw::fit_damped_sinusoids(tr));
}
BENCHMARK(BM_FitDampedSinusoids)->Arg(300)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_FftSpectrum(benchmark::State& state) {
  sw::Trace tr{sw::uniform_grid(20.0, 0.02), {}};
  for (double t : tr.t) tr.y.push_back(std::cos(1.23 * t));
  for (auto _ : state) benchmark::DoNotOptimize(sw::fft_spectrum(tr, sw::Window::hann));
}
BENCHMARK(BM_FftSpectrum);

void BM_FranckCondon(benchmark::State& state) {
  sw::VibronicSpec spec;
  spec.huang_rhys = 1.06;
  spec.n_levels = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sw::franck_condon_matrix(spec));
}
BENCHMARK(BM_FranckCondon)->Arg(40)->Arg(200);

void BM_Negativity(benchmark::State& state) {
  sw::CounterRng rng(1, 0);
  const sw::ComplexMatrix rho = sw::density(sw::haar_random_vector(36, rng));
  const sw::Bipartition part{{6, 6}, {0}};
  for (auto _ : state) benchmark::DoNotOptimize(sw::negativity(rho, part));
}
BENCHMARK(BM_Negativity);

}  // namespace

BENCHMARK_MAIN();
