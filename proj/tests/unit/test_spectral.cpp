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
#include <limits>
#include <stdexcept>
#include <vector>

#include "spinweave/spectral.hpp"
#include "spinweave/units.hpp"

using namespace spinweave;

namespace {

struct Component {
  double freq_cm1, tau_ps, amplitude, phase;
};

Trace synth(const std::vector<Component>& parts, double t_max, double dt) {
  Trace tr{uniform_grid(t_max, dt), {}};
  tr.y.assign(tr.t.size(), 0.0);
  for (const auto& c : parts) {
    const double w = 2 * units::kPi * units::kSpeedOfLight * c.freq_cm1;
    for (std::size_t i = 0; i < tr.size(); ++i) {
      const double env = std::isinf(c.tau_ps) ? 1.0 : std::exp(-tr.t[i] / c.tau_ps);
      tr.y[i] += c.amplitude * env * std::cos(w * tr.t[i] + c.phase);
    }
  }
  return tr;
}

double peak_freq(const std::vector<SpectrumPoint>& s) {
  return std::max_element(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.power < b.power; })
      ->freq_cm1;
}

}  // namespace

TEST_CASE("FFT peak of a pure cosine") {
  const Trace tr = synth({{6.536, std::numeric_limits<double>::infinity(), 1.0, 0.0}}, 20.0, 0.02);
  for (Window w : {Window::none, Window::hann}) {
    const auto s = fft_spectrum(tr, w);
    const double bin = s[1].freq_cm1 - s[0].freq_cm1;
    CHECK(bin == doctest::Approx(1.0 / (tr.size() * tr.dt() * units::kSpeedOfLight)));
    CHECK(std::abs(peak_freq(s) - 6.536) <= bin);
  }
}

TEST_CASE("FFT of a constant has no power") {
  Trace tr{uniform_grid(20.0, 0.02), {}};
  tr.y.assign(tr.t.size(), 3.5);
  for (const auto& p : fft_spectrum(tr)) CHECK(p.power < 1e-20);
}

TEST_CASE("FFT cannot separate 12 and 13 cm^-1 on 20 ps") {
  const double inf = std::numeric_limits<double>::infinity();
  const Trace tr = synth({{12.0, inf, 1.0, 0.0}, {13.0, inf, 1.0, 0.0}}, 20.0, 0.02);
  const auto s = fft_spectrum(tr);
  const double bin = s[1].freq_cm1 - s[0].freq_cm1;
  CHECK(bin > 1.0);
  CHECK(bin == doctest::Approx(1.0 / (20.0 * units::kSpeedOfLight)).epsilon(1e-3));
}

TEST_CASE("FFT needs 16 samples") {
  Trace tr{uniform_grid(0.5, 0.05), {}};
  tr.y.assign(tr.t.size(), 0.0);
  tr.t.resize(12);
  tr.y.resize(12);
  CHECK_THROWS_AS(fft_spectrum(tr), std::invalid_argument);
}

TEST_CASE("single damped cosine recovered to 1e-6") {
  const Trace tr = synth({{10.0, 3.0, 1.0, 0.4}}, 15.0, 0.05);
  const ModeSet m = fit_damped_sinusoids(tr);
  REQUIRE(m.modes.size() == 1);
  CHECK(m.modes[0].freq_cm1 == doctest::Approx(10.0).epsilon(1e-6));
  CHECK(m.modes[0].damping_ps == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(m.modes[0].amplitude == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(m.modes[0].phase_rad == doctest::Approx(0.4).epsilon(1e-6));
}

TEST_CASE("zero signal gives an empty mode set") {
  Trace tr{uniform_grid(10.0, 0.05), {}};
  tr.y.assign(tr.t.size(), 0.0);
  const ModeSet m = fit_damped_sinusoids(tr);
  CHECK(m.modes.empty());
  CHECK(m.residual_rms == 0.0);
}

TEST_CASE("fit argument validation") {
  const Trace tr = synth({{10.0, 3.0, 1.0, 0.0}}, 5.0, 0.05);
  FitOptions too_big;
  too_big.max_order = static_cast<int>(tr.size());
  CHECK_THROWS_AS(fit_damped_sinusoids(tr, too_big), std::invalid_argument);
  FitOptions bad_threshold;
  bad_threshold.sv_threshold = 1.5;
  CHECK_THROWS_AS(fit_damped_sinusoids(tr, bad_threshold), std::invalid_argument);
}

TEST_CASE("round trip with six separated modes") {
  const std::vector<Component> parts = {{3.0, 8.0, 1.0, 0.1},  {6.5, 20.0, 0.5, -0.4}, {9.0, 4.0, 0.8, 1.0},
                                        {13.0, 6.0, 0.3, 2.0}, {18.0, 3.0, 0.6, -1.2}, {25.0, 10.0, 0.2, 0.7}};
  const Trace tr = synth(parts, 20.0, 0.02);
  const ModeSet m = fit_damped_sinusoids(tr);
  CHECK(m.modes.size() == 6);
  const Trace back = reconstruct(m, tr.t);
  std::vector<double> diff(tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) diff[i] = back.y[i] - tr.y[i];
  CHECK(rms(diff) <= 1e-8 * rms(tr.y));
}

TEST_CASE("frequencies are invariant under amplitude rescaling") {
  const Trace tr = synth({{8.0, 5.0, 1.0, 0.0}, {11.0, 9.0, 0.4, 1.0}}, 15.0, 0.05);
  Trace scaled = tr;
  for (double& v : scaled.y) v *= 1e-7;
  const ModeSet a = fit_damped_sinusoids(tr);
  const ModeSet b = fit_damped_sinusoids(scaled);
  REQUIRE(a.modes.size() == b.modes.size());
  for (std::size_t i = 0; i < a.modes.size(); ++i) {
    CHECK(b.modes[i].freq_cm1 == doctest::Approx(a.modes[i].freq_cm1).epsilon(1e-10));
  }
}

TEST_CASE("pencil poles of real data come in conjugate pairs") {
  const Trace tr = synth({{8.0, 5.0, 1.0, 0.0}, {15.0, 2.0, 0.4, 1.0}}, 10.0, 0.05);
  const auto poles = pencil_poles(tr.y, FitOptions{});
  REQUIRE(poles.size() == 4);
  for (const Complex& z : poles) {
    const bool has_conj = std::any_of(poles.begin(), poles.end(),
                                      [&](const Complex& w) { return std::abs(w - std::conj(z)) < 1e-10; });
    CHECK(has_conj);
  }
}

TEST_CASE("doublet below the Rayleigh limit is resolved without noise") {
  const Trace tr = synth({{12.0, 2.0, 1.0, 0.3}, {13.0, 3.0, 1.0, -0.7}}, 15.0, 0.05);
  const ModeSet m = fit_damped_sinusoids(tr);
  REQUIRE(m.modes.size() == 2);
  CHECK(m.modes[0].freq_cm1 == doctest::Approx(12.0).epsilon(1e-8));
  CHECK(m.modes[1].freq_cm1 == doctest::Approx(13.0).epsilon(1e-8));
  CHECK(1.0 / (15.0 * units::kSpeedOfLight) > 1.0);
}

TEST_CASE("undamped modes are recovered as undamped; growing poles are dropped") {
  const double inf = std::numeric_limits<double>::infinity();
  const ModeSet m = fit_damped_sinusoids(synth({{7.0, inf, 1.0, 0.0}}, 10.0, 0.05));
  REQUIRE(m.modes.size() == 1);
  CHECK(m.modes[0].damping_ps > 1e6);

  const ModeSet g = fit_damped_sinusoids(synth({{7.0, -4.0, 1.0, 0.0}}, 10.0, 0.05));
  CHECK(g.modes.empty());
  CHECK(!g.warnings.empty());
}

TEST_CASE("reconstruct basics") {
  const auto grid = uniform_grid(1.0, 0.1);
  const Trace empty = reconstruct(ModeSet{}, grid);
  for (double v : empty.y) CHECK(v == 0.0);
  ModeSet one;
  one.modes.push_back({5.0, 2.0, 1.5, 0.8});
  CHECK(reconstruct(one, grid).y[0] == doctest::Approx(1.5 * std::cos(0.8)));
}
