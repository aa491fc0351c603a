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
// Helpers shared by the unit tests.

#ifndef SPINWEAVE_TESTS_UNIT_SUPPORT_HPP
#define SPINWEAVE_TESTS_UNIT_SUPPORT_HPP

#include <cstdint>

#include "spinweave/rng.hpp"
#include "spinweave/spin_algebra.hpp"

namespace spinweave::testing {

inline ComplexMatrix random_hermitian(int dim, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
  }
  return (m + m.adjoint()) / 2.0;
}

inline ComplexMatrix random_density(int dim, std::uint64_t seed) {
  const ComplexMatrix a = random_hermitian(dim, seed);
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace spinweave::testing

#endif  // SPINWEAVE_TESTS_UNIT_SUPPORT_HPP
