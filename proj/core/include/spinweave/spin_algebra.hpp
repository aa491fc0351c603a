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
#ifndef SPINWEAVE_SPIN_ALGEBRA_HPP
#define SPINWEAVE_SPIN_ALGEBRA_HPP

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace spinweave {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Half-integer spin quantum number, stored as 2s.
class Spin {
 public:
  /// Throws std::invalid_argument unless 2s is a positive integer.
  static Spin from_double(double s);
  static Spin from_twice(int two_s);

  int twice() const noexcept { return two_s_; }
  double value() const noexcept { return 0.5 * two_s_; }
  int dim() const noexcept { return two_s_ + 1; }

  friend bool operator==(Spin, Spin) = default;

 private:
  explicit Spin(int two_s) : two_s_(two_s) {}
  int two_s_;
};

inline const Spin kSpinHalf = Spin::from_twice(1);
inline const Spin kSpinFiveHalves = Spin::from_twice(5);

/// Angular-momentum matrices in the S_z basis ordered m = s, s-1, ..., -s.
struct SpinOperatorSet {
  Spin spin;
  ComplexMatrix sx, sy, sz, splus, sminus;
};

SpinOperatorSet spin_operators(Spin s);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// identity ⊗ ... ⊗ op ⊗ ... ⊗ identity, site 0 being the most significant
/// factor. Throws std::out_of_range / std::invalid_argument.
ComplexMatrix embed(const ComplexMatrix& op, std::size_t site_index,
                    std::span<const int> site_dims);

int product_dim(std::span<const int> site_dims);

/// max |M - M^†| over all entries.
double hermiticity_deviation(const ComplexMatrix& m);

struct Eigensystem {
  RealVector energies;    // ascending, meV
  ComplexMatrix vectors;  // columns are eigenvectors

  int dim() const { return static_cast<int>(energies.size()); }
};

/// Dense Hermitian eigendecomposition. Throws std::invalid_argument (with
/// the observed deviation) when h is not Hermitian to 1e-12 relative to its
/// largest entry.
Eigensystem hermitian_eigen(const ComplexMatrix& h);

/// As above, but degenerate eigenspaces of h are rotated so that the
/// columns also diagonalize `symmetry`, which must commute with h. Within
/// a degenerate cluster columns are ordered by ascending symmetry
/// eigenvalue. Returns the symmetry eigenvalue of each column in
/// `symmetry_values` when non-null.
Eigensystem hermitian_eigen(const ComplexMatrix& h,
                            const ComplexMatrix& symmetry,
                            RealVector* symmetry_values);

ComplexMatrix reconstruct(const Eigensystem& eig);

/// U rho U^† with U = exp(-i H t / hbar); t in ps.
ComplexMatrix evolve(const ComplexMatrix& rho, const Eigensystem& eig,
                     double t_ps);

}  // namespace spinweave

#endif  // SPINWEAVE_SPIN_ALGEBRA_HPP
