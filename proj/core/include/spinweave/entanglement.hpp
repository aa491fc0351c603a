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
#ifndef SPINWEAVE_ENTANGLEMENT_HPP
#define SPINWEAVE_ENTANGLEMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "spinweave/rng.hpp"
#include "spinweave/spin_algebra.hpp"

namespace spinweave {

/// Sites are ordered as in the Kronecker product (site 0 most significant).
struct Bipartition {
  std::vector<int> site_dims;
  std::vector<std::size_t> keep;  // nonempty proper subset

  void validate() const;
  int dim() const;
};

/// Reduced operator on the kept sites, in ascending site order.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const Bipartition& part);

/// Transposes the kept sites of the bipartition.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const Bipartition& part);

/// Bits; eigenvalues below 1e-14 are skipped.
double vn_entropy(const ComplexMatrix& rho);

double purity(const ComplexMatrix& rho);

/// (||rho^{T_keep}||_1 - 1) / 2.
double negativity(const ComplexMatrix& rho, const Bipartition& part);

ComplexMatrix density(const ComplexVector& psi);

/// |S - k> of n spins-s with S = n s, from repeated lowering of |s ... s>.
ComplexVector dicke_state(int n_spins, Spin spin_s, int k);

struct SymmetricSuperposition {
  int n_spins = 2;
  Spin spin_s = kSpinHalf;
  ComplexVector coefficients;  // length 2 n s + 1, unit norm

  void validate() const;
};

/// sum_k C_k exp(i k omega0 t) |S - k>, normalized.
ComplexVector superposition_state(const SymmetricSuperposition& sup, double t_ps,
                                  double omega0_rad_per_ps);

/// Normalized complex Gaussian vector.
ComplexVector haar_random_vector(int dim, CounterRng& rng);

struct EntanglementEntry {
  std::string bipartition;  // e.g. "0|1,2"
  double negativity = 0.0;
  std::optional<double> entropy_bits;  // pure inputs only
  double purity = 1.0;                 // of the single kept site
};

struct EntanglementReport {
  std::vector<EntanglementEntry> entries;
  double min_purity = 1.0;
  int participant_count = 0;  // sites with purity < 1 - 1e-6
};

EntanglementReport entanglement_report(const ComplexMatrix& rho, const std::vector<int>& site_dims);
EntanglementReport entanglement_report(const ComplexVector& psi, const std::vector<int>& site_dims);

}  // namespace spinweave

#endif  // SPINWEAVE_ENTANGLEMENT_HPP
