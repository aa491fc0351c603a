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
#ifndef SPINWEAVE_SPECTRAL_HPP
#define SPINWEAVE_SPECTRAL_HPP

#include <span>
#include <string>
#include <vector>

#include "spinweave/spin_algebra.hpp"
#include "spinweave/trace.hpp"

namespace spinweave {

/// a exp(-t / tau) cos(2 pi c nu t + phi). Undamped modes carry
/// damping_ps = +inf.
struct Mode {
  double freq_cm1 = 0.0;
  double damping_ps = 0.0;
  double amplitude = 0.0;
  double phase_rad = 0.0;
};

struct ModeSet {
  std::vector<Mode> modes;  // ascending freq_cm1
  double residual_rms = 0.0;
  int model_order = 0;
  std::vector<std::string> warnings;
};

enum class Window { none, hann };

struct SpectrumPoint {
  double freq_cm1;
  double power;
};

/// One-sided periodogram of the mean-subtracted trace, DC bin dropped.
std::vector<SpectrumPoint> fft_spectrum(const Trace& trace, Window window = Window::none);

struct FitOptions {
  int max_order = 0;          // <= 0: min(N / 3, 40)
  double sv_threshold = 1e-3;
};

/// Matrix-pencil estimate of the poles z = exp((-1/tau + i w) dt), one
/// per retained singular value. Exposed for diagnostics.
std::vector<Complex> pencil_poles(std::span<const double> y, const FitOptions& options);

/// Fits exactly the samples given (no mean subtraction).
ModeSet fit_damped_sinusoids(const Trace& trace, const FitOptions& options = {});

Trace reconstruct(const ModeSet& modes, std::span<const double> t_grid);

double rms(std::span<const double> y);

}  // namespace spinweave

#endif  // SPINWEAVE_SPECTRAL_HPP
