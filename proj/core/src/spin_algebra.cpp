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
#include "spinweave/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spinweave/units.hpp"

namespace spinweave {

Spin Spin::from_double(double s) {
  const double twice = 2.0 * s;
  const double rounded = std::round(twice);
  if (!(s > 0.0) || std::abs(twice - rounded) > 1e-9) {
    std::ostringstream msg;
    msg << "spin must be a positive half-integer, got " << s;
    throw std::invalid_argument(msg.str());
  }
  return Spin(static_cast<int>(rounded));
}

Spin Spin::from_twice(int two_s) {
  if (two_s < 1) {
    throw std::invalid_argument("spin must be a positive half-integer");
  }
  return Spin(two_s);
}

SpinOperatorSet spin_operators(Spin s) {
  const int d = s.dim();
  const double sv = s.value();
  SpinOperatorSet ops{s, ComplexMatrix::Zero(d, d), ComplexMatrix::Zero(d, d),
                      ComplexMatrix::Zero(d, d), ComplexMatrix::Zero(d, d),
                      ComplexMatrix::Zero(d, d)};
  for (int i = 0; i < d; ++i) {
    const double m = sv - i;
    ops.sz(i, i) = m;
    // <m+1|S+|m> sits at row i-1, column i.
    if (i > 0) {
      ops.splus(i - 1, i) = std::sqrt(sv * (sv + 1.0) - m * (m + 1.0));
    }
  }
  ops.sminus = ops.splus.adjoint();
  ops.sx = 0.5 * (ops.splus + ops.sminus);
  ops.sy = Complex(0.0, -0.5) * (ops.splus - ops.sminus);
  return ops;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

int product_dim(std::span<const int> site_dims) {
  int d = 1;
  for (int s : site_dims) {
    if (s < 1) throw std::invalid_argument("site dimensions must be positive");
    d *= s;
  }
  return d;
}

ComplexMatrix embed(const ComplexMatrix& op, std::size_t site_index,
                    std::span<const int> site_dims) {
  if (site_index >= site_dims.size()) {
    throw std::out_of_range("embed: site index out of range");
  }
  if (op.rows() != site_dims[site_index] || op.cols() != op.rows()) {
    throw std::invalid_argument("embed: operator dimension does not match site");
  }
  const int left = product_dim(site_dims.subspan(0, site_index));
  const int right = product_dim(site_dims.subspan(site_index + 1));
  // I_left ⊗ op ⊗ I_right without forming the identities.
  const int d = static_cast<int>(op.rows());
  const int total = left * d * right;
  ComplexMatrix out = ComplexMatrix::Zero(total, total);
  for (int l = 0; l < left; ++l) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const Complex v = op(i, j);
        if (v == Complex(0.0)) continue;
        const int row0 = (l * d + i) * right;
        const int col0 = (l * d + j) * right;
        for (int r = 0; r < right; ++r) out(row0 + r, col0 + r) = v;
      }
    }
  }
  return out;
}

double hermiticity_deviation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

void require_hermitian(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw std::invalid_argument("hermitian_eigen: matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double dev = hermiticity_deviation(h);
  if (dev > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "hermitian_eigen: matrix is not Hermitian (max |M - M^†| = " << dev
        << ")";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

Eigensystem hermitian_eigen(const ComplexMatrix& h) {
  require_hermitian(h);
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigen: eigensolver failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigensystem hermitian_eigen(const ComplexMatrix& h,
                            const ComplexMatrix& symmetry,
                            RealVector* symmetry_values) {
  Eigensystem eig = hermitian_eigen(h);
  if (symmetry.rows() != h.rows() || symmetry.cols() != h.cols()) {
    throw std::invalid_argument("hermitian_eigen: symmetry dimension mismatch");
  }
  const int n = eig.dim();
  const double scale = std::max(1.0, eig.energies.cwiseAbs().maxCoeff());
  const double tol = 1e-11 * scale;
  RealVector values(n);
  const ComplexMatrix sym = 0.5 * (symmetry + symmetry.adjoint());

  int begin = 0;
  while (begin < n) {
    int end = begin + 1;
    while (end < n && eig.energies(end) - eig.energies(end - 1) <= tol) ++end;
    const int size = end - begin;
    const ComplexMatrix q = eig.vectors.middleCols(begin, size);
    const ComplexMatrix projected = q.adjoint() * sym * q;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> inner(
        0.5 * (projected + projected.adjoint()));
    eig.vectors.middleCols(begin, size) = q * inner.eigenvectors();
    values.segment(begin, size) = inner.eigenvalues();
    // Degenerate energies are replaced by their cluster mean.
    const double mean = eig.energies.segment(begin, size).mean();
    eig.energies.segment(begin, size).setConstant(mean);
    begin = end;
  }
  if (symmetry_values != nullptr) *symmetry_values = values;
  return eig;
}

ComplexMatrix reconstruct(const Eigensystem& eig) {
  return eig.vectors * eig.energies.cast<Complex>().asDiagonal() *
         eig.vectors.adjoint();
}

ComplexMatrix evolve(const ComplexMatrix& rho, const Eigensystem& eig,
                     double t_ps) {
  if (rho.rows() != eig.dim() || rho.cols() != eig.dim()) {
    throw std::invalid_argument("evolve: density matrix dimension mismatch");
  }
  if (t_ps < 0.0) throw std::invalid_argument("evolve: negative time");
  const int n = eig.dim();
  ComplexVector phases(n);
  for (int i = 0; i < n; ++i) {
    phases(i) = std::polar(1.0, -eig.energies(i) * t_ps / units::kHbar);
  }
  const ComplexMatrix u =
      eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
  return u * rho * u.adjoint();
}

}  // namespace spinweave
