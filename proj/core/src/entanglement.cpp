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
#include "spinweave/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace spinweave {
namespace {

constexpr double kParticipantPurity = 1.0 - 1e-6;

// Per-site strides and, for a subset of sites, the offsets of every
// configuration of that subset (in its own row-major order).
std::vector<long> strides_of(const std::vector<int>& dims) {
  std::vector<long> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

std::vector<long> offsets(const std::vector<int>& dims, const std::vector<long>& strides,
                          const std::vector<std::size_t>& sites) {
  std::vector<long> out{0};
  for (std::size_t site : sites) {
    std::vector<long> next;
    next.reserve(out.size() * static_cast<std::size_t>(dims[site]));
    for (long base : out) {
      for (int d = 0; d < dims[site]; ++d) next.push_back(base + d * strides[site]);
    }
    out = std::move(next);
  }
  return out;
}

struct Split {
  std::vector<long> kept;
  std::vector<long> rest;
};

Split split(const ComplexMatrix& rho, const Bipartition& part) {
  part.validate();
  if (rho.rows() != part.dim() || rho.cols() != part.dim()) {
    std::ostringstream msg;
    msg << "bipartition: operator dimension " << rho.rows() << " != product of site dims "
        << part.dim();
    throw std::invalid_argument(msg.str());
  }
  std::vector<std::size_t> keep = part.keep;
  std::sort(keep.begin(), keep.end());
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < part.site_dims.size(); ++i) {
    if (!std::binary_search(keep.begin(), keep.end(), i)) rest.push_back(i);
  }
  const auto strides = strides_of(part.site_dims);
  return {offsets(part.site_dims, strides, keep), offsets(part.site_dims, strides, rest)};
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

std::string label(std::size_t site, std::size_t n_sites) {
  std::ostringstream out;
  out << site << '|';
  bool first = true;
  for (std::size_t j = 0; j < n_sites; ++j) {
    if (j == site) continue;
    if (!first) out << ',';
    out << j;
    first = false;
  }
  return out.str();
}

EntanglementReport report_impl(const ComplexMatrix& rho, const std::vector<int>& dims,
                               bool pure) {
  if (dims.size() < 2) throw std::invalid_argument("entanglement_report: need >= 2 sites");
  EntanglementReport report;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const Bipartition part{dims, {i}};
    const ComplexMatrix reduced = partial_trace(rho, part);
    EntanglementEntry e;
    e.bipartition = label(i, dims.size());
    e.negativity = negativity(rho, part);
    e.purity = purity(reduced);
    if (pure) e.entropy_bits = vn_entropy(reduced);
    report.min_purity = std::min(report.min_purity, e.purity);
    if (e.purity < kParticipantPurity) ++report.participant_count;
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace

void Bipartition::validate() const {
  if (site_dims.empty()) throw std::invalid_argument("bipartition: no sites");
  for (int d : site_dims) {
    if (d < 1) throw std::invalid_argument("bipartition: site dimension must be >= 1");
  }
  if (keep.empty() || keep.size() >= site_dims.size()) {
    throw std::invalid_argument("bipartition: keep must be a nonempty proper subset");
  }
  std::vector<std::size_t> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("bipartition: duplicate site in keep");
  }
  if (sorted.back() >= site_dims.size()) {
    throw std::out_of_range("bipartition: site index out of range");
  }
}

int Bipartition::dim() const { return product_dim(site_dims); }

ComplexMatrix partial_trace(const ComplexMatrix& rho, const Bipartition& part) {
  const Split s = split(rho, part);
  const auto nk = static_cast<Eigen::Index>(s.kept.size());
  ComplexMatrix out = ComplexMatrix::Zero(nk, nk);
  for (Eigen::Index a = 0; a < nk; ++a) {
    for (Eigen::Index b = 0; b < nk; ++b) {
      Complex sum = 0.0;
      for (long c : s.rest) sum += rho(s.kept[a] + c, s.kept[b] + c);
      out(a, b) = sum;
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const Bipartition& part) {
  const Split s = split(rho, part);
  ComplexMatrix out(rho.rows(), rho.cols());
  for (long ka : s.rest) {
    for (long kb : s.rest) {
      for (long ta : s.kept) {
        for (long tb : s.kept) out(ka + tb, kb + ta) = rho(ka + ta, kb + tb);
      }
    }
  }
  return out;
}

double vn_entropy(const ComplexMatrix& rho) {
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << "vn_entropy: trace " << tr << " deviates from 1";
    throw std::invalid_argument(msg.str());
  }
  const RealVector ev = hermitian_eigenvalues(rho);
  double h = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > 1e-14) h -= ev(i) * std::log2(ev(i));
  }
  return std::max(h, 0.0);
}

double purity(const ComplexMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.cwiseAbs2().sum();
}

double negativity(const ComplexMatrix& rho, const Bipartition& part) {
  const RealVector ev = hermitian_eigenvalues(partial_transpose(rho, part));
  double neg = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < 0.0) neg -= ev(i);
  }
  return neg;
}

ComplexMatrix density(const ComplexVector& psi) { return psi * psi.adjoint(); }

ComplexVector dicke_state(int n_spins, Spin spin_s, int k) {
  if (n_spins < 1) throw std::invalid_argument("dicke_state: n_spins must be >= 1");
  const int two_s_total = n_spins * spin_s.twice();
  if (k < 0 || k > two_s_total) {
    std::ostringstream msg;
    msg << "dicke_state: k = " << k << " outside [0, " << two_s_total << "]";
    throw std::out_of_range(msg.str());
  }
  const std::vector<int> dims(static_cast<std::size_t>(n_spins), spin_s.dim());
  const int dim = product_dim(dims);
  ComplexVector psi = ComplexVector::Zero(dim);
  psi(0) = 1.0;  // every site at m = s
  if (k == 0) return psi;
  const SpinOperatorSet ops = spin_operators(spin_s);
  ComplexMatrix lower = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < n_spins; ++i) lower += embed(ops.sminus, static_cast<std::size_t>(i), dims);
  for (int step = 0; step < k; ++step) {
    psi = lower * psi;
    psi.normalize();
  }
  return psi;
}

void SymmetricSuperposition::validate() const {
  if (n_spins < 2) throw std::invalid_argument("n_spins: must be >= 2");
  const Eigen::Index expected = n_spins * spin_s.twice() + 1;
  if (coefficients.size() != expected) {
    std::ostringstream msg;
    msg << "coefficients: expected " << expected << " entries, got " << coefficients.size();
    throw std::invalid_argument(msg.str());
  }
  if (std::abs(coefficients.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("coefficients: must have unit norm");
  }
}

ComplexVector superposition_state(const SymmetricSuperposition& sup, double t_ps,
                                  double omega0_rad_per_ps) {
  sup.validate();
  ComplexVector psi;
  for (Eigen::Index k = 0; k < sup.coefficients.size(); ++k) {
    const Complex c = sup.coefficients(k) *
                      std::polar(1.0, static_cast<double>(k) * omega0_rad_per_ps * t_ps);
    if (c == Complex(0.0)) continue;
    const ComplexVector d = dicke_state(sup.n_spins, sup.spin_s, static_cast<int>(k));
    if (psi.size() == 0) psi = ComplexVector::Zero(d.size());
    psi += c * d;
  }
  if (psi.size() == 0) throw std::invalid_argument("coefficients: all zero");
  psi.normalize();
  return psi;
}

ComplexVector haar_random_vector(int dim, CounterRng& rng) {
  if (dim < 1) throw std::invalid_argument("haar_random_vector: dim must be >= 1");
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = rng.normal();
    v(i) = Complex(re, rng.normal());
  }
  v.normalize();
  return v;
}

EntanglementReport entanglement_report(const ComplexMatrix& rho,
                                       const std::vector<int>& site_dims) {
  const bool pure = std::abs(purity(rho) - 1.0) < 1e-10;
  return report_impl(rho, site_dims, pure);
}

EntanglementReport entanglement_report(const ComplexVector& psi,
                                       const std::vector<int>& site_dims) {
  return report_impl(density(psi.normalized()), site_dims, true);
}

}  // namespace spinweave
