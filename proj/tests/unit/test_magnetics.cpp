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

#include "spinweave/magnetics.hpp"
#include "spinweave/rng.hpp"
#include "spinweave/units.hpp"

using namespace spinweave;

TEST_CASE("Brillouin function properties") {
  const Spin s = kSpinFiveHalves;
  double prev = -2.0;
  for (double y = -20.0; y <= 20.0; y += 0.25) {
    const double b = brillouin(s, y);
    CHECK(std::abs(b) <= 1.0);
    CHECK(b > prev);
    CHECK(brillouin(s, -y) == doctest::Approx(-b).epsilon(1e-14));
    prev = b;
  }
  for (double y : {1e-4, 3e-5, -7e-5}) {
    const double linear = (2.5 + 1.0) * y / (3.0 * 2.5);
    CHECK(std::abs(brillouin(s, y) - linear) < 1e-8);
  }
  CHECK(brillouin(s, 0.0) == 0.0);
  CHECK(brillouin(kSpinHalf, 0.7) == doctest::Approx(std::tanh(0.7)).epsilon(1e-13));
}

TEST_CASE("line predictions") {
  const MagneticParams p;
  const std::vector<double> grid = {0.0, 7.0};
  const auto rows = predict_lines(grid, p, 5.02);
  CHECK(rows[0].nu_pr == 0.0);
  CHECK(rows[0].nu_pre == doctest::Approx(4.689).epsilon(5e-4));
  CHECK(rows[1].nu_pr == doctest::Approx(6.5361).epsilon(2e-5));
  CHECK(rows[1].nu_sf == doctest::Approx(12.88).epsilon(1e-3));
  CHECK(rows[1].nu_2sf == doctest::Approx(2 * rows[1].nu_sf));
  CHECK(rows[1].nu_3sf == doctest::Approx(3 * rows[1].nu_sf));
}

TEST_CASE("effective g keeps the bare sign and is exchange enhanced") {
  const MagneticParams p;
  CHECK(std::isfinite(effective_g(0.0, p)));
  CHECK(effective_g(1e-9, p) == doctest::Approx(effective_g(0.0, p)).epsilon(1e-6));
  CHECK(effective_g(7.0, p) < p.g_bare);
  CHECK(std::abs(effective_g(3.0, p)) > std::abs(effective_g(7.0, p)));
  MagneticParams none = p;
  none.x_eff = 0.0;
  CHECK(effective_g(7.0, none) == doctest::Approx(p.g_bare));
  CHECK(mean_mn_spin(7.0, p) > 0.0);
  CHECK(mean_mn_spin(7.0, p) < 2.5);
}

TEST_CASE("PR fit on exact data gives g = 2 to 1e-10") {
  const MagneticParams p;
  std::vector<FieldPoint> data;
  for (double b : {1.0, 2.0, 4.0, 7.0}) data.push_back({b, field_model_frequency(FieldModel::pr, b, p, 0.0)});
  const FieldFit fit = fit_field_dependence(data, FieldModel::pr, MagneticParams{.g_mn = 1.5});
  CHECK(fit.converged);
  CHECK(std::abs(fit.params.g_mn - 2.0) < 1e-10);
}

TEST_CASE("SF fit recovers x_eff and T_eff from noisy data") {
  const MagneticParams truth;
  CounterRng rng(5, 0);
  std::vector<FieldPoint> data;
  for (double b = 0.5; b <= 7.01; b += 0.5) {
    const double nu = field_model_frequency(FieldModel::sf, b, truth, 0.0);
    data.push_back({b, nu * (1.0 + 0.005 * rng.normal())});
  }
  MagneticParams init;
  init.x_eff = 0.003;
  init.t_eff_k = 3.0;
  const FieldFit fit = fit_field_dependence(data, FieldModel::sf, init);
  CHECK(fit.params.x_eff == doctest::Approx(0.0017).epsilon(0.05));
  CHECK(fit.params.t_eff_k == doctest::Approx(2.0).epsilon(0.05));
  CHECK(fit.covariance.rows() == 2);
}

TEST_CASE("PRe fit recovers B_e") {
  const MagneticParams p;
  std::vector<FieldPoint> data;
  for (double b : {0.5, 1.5, 3.0, 5.0, 7.0}) data.push_back({b, field_model_frequency(FieldModel::pre, b, p, 5.0)});
  const FieldFit fit = fit_field_dependence(data, FieldModel::pre, p, 3.0);
  CHECK(fit.b_e_tesla == doctest::Approx(5.0).epsilon(0.01));
}

TEST_CASE("field fit rejects degenerate data") {
  const MagneticParams p;
  const std::vector<FieldPoint> two = {{1.0, 1.0}, {2.0, 2.0}};
  CHECK_THROWS_AS(fit_field_dependence(two, FieldModel::pr, p), std::invalid_argument);
  const std::vector<FieldPoint> same = {{1.0, 1.0}, {1.0, 1.1}, {1.0, 0.9}};
  CHECK_THROWS_AS(fit_field_dependence(same, FieldModel::pr, p), std::invalid_argument);
  const std::vector<FieldPoint> zero = {{0.0, 1.0}, {1.0, 1.1}, {2.0, 0.9}};
  CHECK_THROWS_AS(fit_field_dependence(zero, FieldModel::pr, p), std::invalid_argument);
}

TEST_CASE("exchange chain") {
  const MagneticParams p;
  const ExchangeChain c = estimate_exchange_chain(4.689, p, 7.0);
  CHECK(c.b_e_tesla == doctest::Approx(5.02).epsilon(2e-3));
  CHECK(c.psi_sq_peak_cm3 == doctest::Approx(1.94e19).epsilon(0.02));
  CHECK(c.radius_angstrom == doctest::Approx(23.0).epsilon(0.02));
  CHECK(c.length_angstrom == doctest::Approx(2 * c.radius_angstrom));
  CHECK(c.n_ions == doctest::Approx(2.3).epsilon(0.02));
  const ExchangeChain fixed = estimate_exchange_chain(4.689, p, 7.0, 2.5);
  CHECK(fixed.s_total == doctest::Approx(6.25));
  CHECK(fixed.huang_rhys == doctest::Approx(1.061).epsilon(2e-3));
  CHECK_THROWS_AS(estimate_exchange_chain(0.0, p, 7.0), std::invalid_argument);
}
