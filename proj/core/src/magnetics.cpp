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
#include "spinweave/magnetics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "spinweave/units.hpp"
#include "spinweave/vibronic.hpp"

namespace spinweave {

namespace {

constexpr double kHoleJ = 1.5;

double unit_factor(FrequencyUnit unit) {
  return unit == FrequencyUnit::cm1 ? units::kMeVToWavenumber : 1.0;
}

}  // namespace

void MagneticParams::validate() const {
  if (!(x_eff >= 0.0 && x_eff <= 0.05)) throw std::invalid_argument("x_eff: must lie in [0, 0.05]");
  if (!(t_eff_k >= 0.1)) throw std::invalid_argument("T_eff: must be >= 0.1 K");
  if (!(n0_cations_cm3 > 0.0)) throw std::invalid_argument("n0_cations: must be > 0");
  if (!(n0_beta_mev > 0.0)) throw std::invalid_argument("n0_beta: must be > 0");
  if (!(x_nominal >= 0.0 && x_nominal <= 1.0)) throw std::invalid_argument("x_nominal: must lie in [0, 1]");
  if (!std::isfinite(g_bare) || !std::isfinite(g_mn) || !std::isfinite(n0_alpha_mev)) {
    throw std::invalid_argument("g_bare, g_mn, n0_alpha must be finite");
  }
}

double brillouin(Spin s, double y) {
  const double sv = s.value();
  if (std::abs(y) < 1e-6) return (sv + 1.0) * y / (3.0 * sv);
  const double a = (2.0 * sv + 1.0) / (2.0 * sv);
  const double b = 1.0 / (2.0 * sv);
  return a / std::tanh(a * y) - b / std::tanh(b * y);
}

double mean_mn_spin(double b_tesla, const MagneticParams& params) {
  const double s = params.s_mn.value();
  const double y = params.g_mn * units::kBohrMagneton * s * b_tesla /
                   (units::kBoltzmann * params.t_eff_k);
  return s * brillouin(params.s_mn, y);
}

double effective_g(double b_tesla, const MagneticParams& params) {
  params.validate();
  if (b_tesla < 0.0) throw std::invalid_argument("effective_g: B must be >= 0");
  double exchange;
  if (b_tesla == 0.0) {
    const double s = params.s_mn.value();
    exchange = params.n0_alpha_mev * params.x_eff * s * (s + 1.0) * params.g_mn /
               (3.0 * units::kBoltzmann * params.t_eff_k);
  } else {
    exchange = params.n0_alpha_mev * params.x_eff * mean_mn_spin(b_tesla, params) /
               (units::kBohrMagneton * b_tesla);
  }
  const double magnitude = std::abs(params.g_bare) + exchange;
  return params.g_bare < 0.0 ? -magnitude : magnitude;
}

double field_model_frequency(FieldModel model, double b_tesla,
                             const MagneticParams& params, double b_e_tesla,
                             FrequencyUnit unit) {
  const double mu = units::kBohrMagneton * unit_factor(unit);
  switch (model) {
    case FieldModel::pr:
      return params.g_mn * mu * b_tesla;
    case FieldModel::pre:
      return params.g_mn * mu * std::hypot(b_tesla, b_e_tesla);
    case FieldModel::sf:
      return std::abs(effective_g(b_tesla, params)) * mu * b_tesla;
  }
  return 0.0;
}

std::vector<LinePrediction> predict_lines(std::span<const double> b_grid,
                                          const MagneticParams& params,
                                          double b_e_tesla) {
  std::vector<LinePrediction> rows;
  rows.reserve(b_grid.size());
  for (double b : b_grid) {
    if (b < 0.0) throw std::invalid_argument("predict_lines: negative field");
    LinePrediction row{};
    row.b_tesla = b;
    row.nu_pr = field_model_frequency(FieldModel::pr, b, params, b_e_tesla);
    row.nu_pre = field_model_frequency(FieldModel::pre, b, params, b_e_tesla);
    row.nu_sf = field_model_frequency(FieldModel::sf, b, params, b_e_tesla);
    row.nu_2sf = 2.0 * row.nu_sf;
    row.nu_3sf = 3.0 * row.nu_sf;
    rows.push_back(row);
  }
  return rows;
}

namespace {

struct Problem {
  std::span<const FieldPoint> data;
  FieldModel model;
  MagneticParams base;
  double b_e = 0.0;
  FrequencyUnit unit;

  // Parameter vector layout: SF (x_eff, T_eff), PRe (B_e, g_mn).
  void apply(const Eigen::Vector2d& p, MagneticParams& params, double& b_e_out) const {
    params = base;
    b_e_out = b_e;
    if (model == FieldModel::sf) {
      params.x_eff = p(0);
      params.t_eff_k = p(1);
    } else {
      b_e_out = p(0);
      params.g_mn = p(1);
    }
  }

  Eigen::Vector2d clamp(Eigen::Vector2d p) const {
    if (model == FieldModel::sf) {
      p(0) = std::clamp(p(0), 0.0, 0.05);
      p(1) = std::clamp(p(1), 0.1, 1e4);
    } else {
      p(0) = std::clamp(p(0), 0.0, 1e3);
      p(1) = std::clamp(p(1), 1e-6, 1e2);
    }
    return p;
  }

  Eigen::VectorXd residual(const Eigen::Vector2d& p) const {
    MagneticParams params;
    double b_e = 0.0;
    apply(p, params, b_e);
    Eigen::VectorXd r(static_cast<Eigen::Index>(data.size()));
    for (std::size_t i = 0; i < data.size(); ++i) {
      r(static_cast<Eigen::Index>(i)) =
          field_model_frequency(model, data[i].b_tesla, params, b_e, unit) - data[i].nu;
    }
    return r;
  }

  Eigen::MatrixXd jacobian(const Eigen::Vector2d& p) const {
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(data.size()), 2);
    const std::array<double, 2> floor_scale =
        model == FieldModel::sf ? std::array<double, 2>{1e-4, 0.1}
                                : std::array<double, 2>{0.1, 0.1};
    for (int j = 0; j < 2; ++j) {
      const double h = 1e-6 * std::max(std::abs(p(j)), floor_scale[static_cast<std::size_t>(j)]);
      Eigen::Vector2d hi = p;
      Eigen::Vector2d lo = p;
      hi(j) += h;
      lo(j) -= h;
      // One-sided at a bound.
      if (model == FieldModel::sf && j == 1 && lo(j) < 0.1) lo(j) = p(j);
      if (lo(j) < 0.0) lo(j) = p(j);
      jac.col(j) = (residual(hi) - residual(lo)) / (hi(j) - lo(j));
    }
    return jac;
  }
};

FieldFit fit_linear_pr(std::span<const FieldPoint> data, const MagneticParams& init,
                       FrequencyUnit unit) {
  const double c = units::kBohrMagneton * unit_factor(unit);
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& pt : data) {
    sxy += c * pt.b_tesla * pt.nu;
    sxx += c * pt.b_tesla * c * pt.b_tesla;
  }
  FieldFit fit;
  fit.model = FieldModel::pr;
  fit.params = init;
  fit.params.g_mn = sxy / sxx;
  double ssr = 0.0;
  for (const auto& pt : data) {
    const double r = fit.params.g_mn * c * pt.b_tesla - pt.nu;
    ssr += r * r;
  }
  const auto n = static_cast<double>(data.size());
  fit.names = {"g_mn"};
  fit.values = {fit.params.g_mn};
  fit.covariance = Eigen::MatrixXd::Constant(1, 1, (n > 1 ? ssr / (n - 1.0) : 0.0) / sxx);
  fit.residual_rms = std::sqrt(ssr / n);
  fit.iterations = 1;
  fit.converged = true;
  return fit;
}

}  // namespace

FieldFit fit_field_dependence(std::span<const FieldPoint> data, FieldModel model,
                              const MagneticParams& init, double b_e_init,
                              FrequencyUnit unit) {
  if (data.size() < 3) throw std::invalid_argument("fit_field_dependence: need >= 3 points");
  double b_min = data[0].b_tesla;
  double b_max = data[0].b_tesla;
  for (const auto& pt : data) {
    if (!(pt.b_tesla > 0.0)) throw std::invalid_argument("fit_field_dependence: B must be > 0");
    if (!std::isfinite(pt.nu)) throw std::invalid_argument("fit_field_dependence: non-finite frequency");
    b_min = std::min(b_min, pt.b_tesla);
    b_max = std::max(b_max, pt.b_tesla);
  }
  if (b_max - b_min <= 1e-12 * b_max) {
    throw std::invalid_argument("fit_field_dependence: degenerate data (all points at one field)");
  }
  init.validate();
  if (model == FieldModel::pr) return fit_linear_pr(data, init, unit);

  const Problem problem{data, model, init, b_e_init, unit};

  // Coarse grid seed over documented ranges, plus the caller's guess.
  std::vector<Eigen::Vector2d> seeds;
  seeds.push_back(model == FieldModel::sf ? Eigen::Vector2d(init.x_eff, init.t_eff_k)
                                          : Eigen::Vector2d(b_e_init, init.g_mn));
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      if (model == FieldModel::sf) {
        seeds.emplace_back(1e-4 * std::pow(100.0, i / 9.0), 0.5 + 9.5 * j / 9.0);
      } else {
        seeds.emplace_back(0.5 + 14.5 * i / 9.0, 1.5 + 1.0 * j / 9.0);
      }
    }
  }
  Eigen::Vector2d p = problem.clamp(seeds.front());
  double cost = problem.residual(p).squaredNorm();
  for (const auto& s : seeds) {
    const Eigen::Vector2d cand = problem.clamp(s);
    const double c = problem.residual(cand).squaredNorm();
    if (c < cost) {
      cost = c;
      p = cand;
    }
  }

  double scale = 0.0;
  for (const auto& pt : data) scale += pt.nu * pt.nu;
  const double cost_floor = 1e-30 * std::max(scale, 1e-300);

  FieldFit fit;
  fit.model = model;
  int iter = 0;
  bool converged = false;
  for (; iter < 200; ++iter) {
    if (cost <= cost_floor) {
      converged = true;
      break;
    }
    const Eigen::VectorXd r = problem.residual(p);
    const Eigen::MatrixXd jac = problem.jacobian(p);
    const Eigen::Vector2d step = jac.colPivHouseholderQr().solve(-r);
    double lambda = 1.0;
    bool improved = false;
    Eigen::Vector2d trial = p;
    double trial_cost = cost;
    for (int halving = 0; halving < 40; ++halving) {
      trial = problem.clamp(p + lambda * step);
      trial_cost = problem.residual(trial).squaredNorm();
      if (trial_cost < cost) {
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) {
      // No descent along the Gauss-Newton direction: stationary point.
      converged = true;
      break;
    }
    const double rel_change = (cost - trial_cost) / cost;
    p = trial;
    cost = trial_cost;
    if (rel_change < 1e-10) {
      converged = true;
      ++iter;
      break;
    }
  }

  problem.apply(p, fit.params, fit.b_e_tesla);
  fit.names = model == FieldModel::sf ? std::vector<std::string>{"x_eff", "T_eff"}
                                      : std::vector<std::string>{"B_e", "g_mn"};
  fit.values = {p(0), p(1)};
  const auto n = static_cast<double>(data.size());
  const Eigen::MatrixXd jac = problem.jacobian(p);
  const double s2 = n > 2 ? cost / (n - 2.0) : 0.0;
  const Eigen::Matrix2d jtj = jac.transpose() * jac;
  fit.covariance = s2 * jtj.completeOrthogonalDecomposition().pseudoInverse();
  fit.residual_rms = std::sqrt(cost / n);
  fit.iterations = iter;
  fit.converged = converged;
  return fit;
}

ExchangeChain estimate_exchange_chain(double pr_e_zero_field_cm1,
                                      const MagneticParams& params, double b_tesla,
                                      std::optional<double> ions_override) {
  if (!(pr_e_zero_field_cm1 > 0.0)) {
    throw std::invalid_argument("estimate_exchange_chain: frequency must be > 0");
  }
  params.validate();
  ExchangeChain out{};
  const double nu_mev = units::cm1_to_mev(pr_e_zero_field_cm1);
  out.b_e_tesla = nu_mev / (params.g_mn * units::kBohrMagneton);
  const double beta = params.n0_beta_mev / params.n0_cations_cm3;  // meV cm^3
  out.psi_sq_peak_cm3 =
      3.0 * units::kBohrMagneton * params.g_mn * out.b_e_tesla / (beta * kHoleJ);
  const double radius_cm = std::cbrt(3.0 / (4.0 * units::kPi * out.psi_sq_peak_cm3));
  out.radius_angstrom = radius_cm * 1e8;
  out.length_angstrom = 2.0 * out.radius_angstrom;
  out.n_ions = params.x_nominal * params.n0_cations_cm3 / out.psi_sq_peak_cm3;
  out.s_total = ions_override.value_or(out.n_ions) * params.s_mn.value();
  out.huang_rhys = huang_rhys_factor(out.s_total, b_tesla, out.b_e_tesla);
  return out;
}

}  // namespace spinweave
