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
#ifndef SPINWEAVE_MAGNETICS_HPP
#define SPINWEAVE_MAGNETICS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinweave/spin_algebra.hpp"

namespace spinweave {

/// Diluted-magnetic-semiconductor material parameters. x_eff and t_eff_k
/// are effective (fit) values; x_nominal is the sample composition.
struct MagneticParams {
  double g_bare = -1.64;
  double n0_alpha_mev = 220.0;
  double n0_beta_mev = 880.0;
  double x_eff = 0.0017;
  double t_eff_k = 2.0;
  double g_mn = 2.0;
  double n0_cations_cm3 = 1.469e22;
  double x_nominal = 0.003;
  Spin s_mn = kSpinFiveHalves;

  void validate() const;
};

/// B_S(y); odd, bounded by +-1, linear expansion (S+1)y/(3S) for |y| < 1e-6.
double brillouin(Spin s, double y);

/// Thermal mean Mn spin projection <S> = S B_S(g mu_B S B / k_B T_eff).
double mean_mn_spin(double b_tesla, const MagneticParams& params);

/// Exchange-enhanced electron g-factor, returned with the sign of g_bare.
double effective_g(double b_tesla, const MagneticParams& params);

struct LinePrediction {
  double b_tesla;
  double nu_pr;   // cm^-1
  double nu_pre;
  double nu_sf;
  double nu_2sf;
  double nu_3sf;
};

std::vector<LinePrediction> predict_lines(std::span<const double> b_grid,
                                          const MagneticParams& params,
                                          double b_e_tesla);

enum class FieldModel { sf, pr, pre };
enum class FrequencyUnit { cm1, mev };

struct FieldPoint {
  double b_tesla;
  double nu;  // in the chosen FrequencyUnit
};

/// Model frequency for one field value; `b_e_tesla` only enters PRe.
double field_model_frequency(FieldModel model, double b_tesla,
                             const MagneticParams& params, double b_e_tesla,
                             FrequencyUnit unit = FrequencyUnit::cm1);

struct FieldFit {
  FieldModel model;
  MagneticParams params;
  double b_e_tesla = 0.0;
  std::vector<std::string> names;  // fitted parameter names
  std::vector<double> values;
  Eigen::MatrixXd covariance;      // s^2 (J^T J)^-1
  double residual_rms = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Least squares over {x_eff, T_eff} (SF), {g_mn} (PR) or {B_e, g_mn}
/// (PRe). Nonlinear models are seeded from a 10x10 grid and refined by
/// Gauss-Newton with step halving. Throws std::invalid_argument for fewer
/// than 3 points, B <= 0, or all points at one field.
FieldFit fit_field_dependence(std::span<const FieldPoint> data, FieldModel model,
                              const MagneticParams& init, double b_e_init = 5.0,
                              FrequencyUnit unit = FrequencyUnit::cm1);

struct ExchangeChain {
  double b_e_tesla;
  double psi_sq_peak_cm3;
  double radius_angstrom;
  double length_angstrom;  // 2R
  double n_ions;
  double s_total;
  double huang_rhys;
};

/// Zero-field PR(e) line -> effective field -> hole density -> uniform
/// sphere -> ions per hole -> Huang-Rhys factor at field `b_tesla`.
/// `ions_override`, when set, replaces the modeled ion count in S_total.
ExchangeChain estimate_exchange_chain(double pr_e_zero_field_cm1,
                                      const MagneticParams& params,
                                      double b_tesla,
                                      std::optional<double> ions_override = {});

}  // namespace spinweave

#endif  // SPINWEAVE_MAGNETICS_HPP
