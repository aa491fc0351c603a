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
#include "spinweave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "spinweave/errors.hpp"
#include "spinweave/units.hpp"

namespace spinweave {
namespace {

constexpr double kGrowthTolerance = 1e-6;
constexpr double kRealPoleTolerance = 1e-12;
constexpr double kDuplicateCm1 = 1e-9;

void require_samples(std::size_t n, const char* what) {
  if (n < kMinTraceSamples) {
    std::ostringstream msg;
    msg << what << ": need at least " << kMinTraceSamples << " samples, got " << n;
    throw std::invalid_argument(msg.str());
  }
}

int resolve_max_order(const FitOptions& options, std::size_t n) {
  const int third = static_cast<int>(n / 3);
  if (options.max_order <= 0) return std::min(third, 40);
  if (options.max_order > third) {
    std::ostringstream msg;
    msg << "max_order: " << options.max_order << " exceeds len/3 = " << third;
    throw std::invalid_argument(msg.str());
  }
  return options.max_order;
}

struct Pole {
  Complex z;
  Mode mode;  // frequency and damping filled in from z
};

}  // namespace

double rms(std::span<const double> y) {
  if (y.empty()) return 0.0;
  double s = 0.0;
  for (double v : y) s += v * v;
  return std::sqrt(s / static_cast<double>(y.size()));
}

std::vector<SpectrumPoint> fft_spectrum(const Trace& trace, Window window) {
  require_samples(trace.size(), "fft_spectrum");
  trace.validate();
  const std::size_t n = trace.size();
  const Trace centered = trace.mean_subtracted();
  std::vector<double> x(centered.y);
  if (window == Window::hann) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] *= 0.5 * (1.0 - std::cos(2.0 * units::kPi * static_cast<double>(i) /
                                    static_cast<double>(n - 1)));
    }
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, x);
  const double dt = trace.dt();
  std::vector<SpectrumPoint> out;
  out.reserve(n / 2);
  for (std::size_t k = 1; k <= n / 2; ++k) {
    const double f = static_cast<double>(k) / (static_cast<double>(n) * dt);  // 1/ps
    out.push_back({f / units::kSpeedOfLight, std::norm(spectrum[k]) / static_cast<double>(n)});
  }
  return out;
}

std::vector<Complex> pencil_poles(std::span<const double> y, const FitOptions& options) {
  require_samples(y.size(), "fit_damped_sinusoids");
  if (!(options.sv_threshold > 0.0 && options.sv_threshold < 1.0)) {
    throw std::invalid_argument("sv_threshold: must lie in (0, 1)");
  }
  const int max_order = resolve_max_order(options, y.size());
  const auto n = static_cast<Eigen::Index>(y.size());
  const Eigen::Index l = n / 3;
  Eigen::MatrixXd hankel(n - l, l + 1);
  for (Eigen::Index i = 0; i < n - l; ++i) {
    for (Eigen::Index j = 0; j <= l; ++j) hankel(i, j) = y[static_cast<std::size_t>(i + j)];
  }
  if (!hankel.allFinite()) throw NumericError("fit_damped_sinusoids: non-finite samples");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(hankel, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return {};
  Eigen::Index order = 0;
  while (order < sv.size() && sv(order) > options.sv_threshold * sv(0)) ++order;
  order = std::min<Eigen::Index>(order, max_order);

  const Eigen::MatrixXd v = svd.matrixV().leftCols(order);
  const Eigen::MatrixXd v1 = v.topRows(l);
  const Eigen::MatrixXd v2 = v.bottomRows(l);
  const Eigen::MatrixXd pencil = v1.completeOrthogonalDecomposition().solve(v2);
  Eigen::EigenSolver<Eigen::MatrixXd> eig(pencil, false);
  if (eig.info() != Eigen::Success) throw NumericError("fit_damped_sinusoids: pencil eigensolver failed");
  std::vector<Complex> poles(eig.eigenvalues().data(),
                             eig.eigenvalues().data() + eig.eigenvalues().size());
  return poles;
}

ModeSet fit_damped_sinusoids(const Trace& trace, const FitOptions& options) {
  require_samples(trace.size(), "fit_damped_sinusoids");
  trace.validate();
  ModeSet result;
  if (std::all_of(trace.y.begin(), trace.y.end(), [](double v) { return v == 0.0; })) {
    (void)resolve_max_order(options, trace.size());
    return result;
  }
  const std::vector<Complex> raw = pencil_poles(trace.y, options);
  result.model_order = static_cast<int>(raw.size());
  const double dt = trace.dt();

  // Keep one pole per real mode: the upper half plane plus the real axis.
  std::vector<Pole> poles;
  int discarded = 0;
  for (const Complex& z : raw) {
    const double mag = std::abs(z);
    if (mag > 1.0 + kGrowthTolerance) {
      ++discarded;
      continue;
    }
    if (z.imag() < -kRealPoleTolerance * std::max(1.0, mag)) continue;
    if (mag == 0.0) continue;
    Pole p;
    p.z = std::abs(z.imag()) <= kRealPoleTolerance * std::max(1.0, mag) ? Complex(z.real(), 0.0) : z;
    const double arg = std::arg(p.z);
    p.mode.freq_cm1 = arg / (2.0 * units::kPi * dt * units::kSpeedOfLight);
    p.mode.damping_ps =
        mag >= 1.0 ? std::numeric_limits<double>::infinity() : -dt / std::log(mag);
    poles.push_back(p);
  }
  if (discarded > 0) {
    result.warnings.push_back("discarded " + std::to_string(discarded) + " growing pole(s)");
  }

  std::sort(poles.begin(), poles.end(),
            [](const Pole& a, const Pole& b) { return a.mode.freq_cm1 < b.mode.freq_cm1; });
  std::vector<Pole> unique;
  for (const Pole& p : poles) {
    if (!unique.empty() && p.mode.freq_cm1 - unique.back().mode.freq_cm1 <= kDuplicateCm1) {
      if (std::abs(1.0 - std::abs(p.z)) < std::abs(1.0 - std::abs(unique.back().z))) {
        unique.back() = p;
      }
      continue;
    }
    unique.push_back(p);
  }
  if (unique.empty()) {
    result.residual_rms = rms(trace.y);
    return result;
  }

  // Real least squares on absolute time: cos and sin columns per
  // oscillating pole, a single column for real poles.
  const auto n = static_cast<Eigen::Index>(trace.size());
  std::vector<Eigen::Index> first_col;
  Eigen::Index cols = 0;
  for (const Pole& p : unique) {
    first_col.push_back(cols);
    cols += p.z.imag() == 0.0 ? 1 : 2;
  }
  Eigen::MatrixXd design(n, cols);
  for (std::size_t k = 0; k < unique.size(); ++k) {
    const Pole& p = unique[k];
    const double decay = std::isinf(p.mode.damping_ps) ? 0.0 : 1.0 / p.mode.damping_ps;
    const double omega = std::arg(p.z) / dt;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double t = trace.t[static_cast<std::size_t>(i)];
      const double env = std::exp(-decay * t);
      design(i, first_col[k]) = env * std::cos(omega * t);
      if (p.z.imag() != 0.0) design(i, first_col[k] + 1) = env * std::sin(omega * t);
    }
  }
  const Eigen::Map<const Eigen::VectorXd> y(trace.y.data(), n);
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(y);
  if (!coef.allFinite()) throw NumericError("fit_damped_sinusoids: least squares failed");

  for (std::size_t k = 0; k < unique.size(); ++k) {
    Mode m = unique[k].mode;
    const double c = coef(first_col[k]);
    const double s = unique[k].z.imag() != 0.0 ? coef(first_col[k] + 1) : 0.0;
    m.amplitude = std::hypot(c, s);
    m.phase_rad = std::atan2(-s, c);
    if (m.phase_rad <= -units::kPi) m.phase_rad = units::kPi;
    result.modes.push_back(m);
  }
  const Eigen::VectorXd resid = y - design * coef;
  result.residual_rms = std::sqrt(resid.squaredNorm() / static_cast<double>(n));
  return result;
}

Trace reconstruct(const ModeSet& modes, std::span<const double> t_grid) {
  Trace out;
  out.t.assign(t_grid.begin(), t_grid.end());
  out.y.assign(t_grid.size(), 0.0);
  for (const Mode& m : modes.modes) {
    const double decay = std::isinf(m.damping_ps) ? 0.0 : 1.0 / m.damping_ps;
    const double omega = 2.0 * units::kPi * units::kSpeedOfLight * m.freq_cm1;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      const double t = t_grid[i];
      out.y[i] += m.amplitude * std::exp(-decay * t) * std::cos(omega * t + m.phase_rad);
    }
  }
  return out;
}

}  // namespace spinweave
