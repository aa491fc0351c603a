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
#ifndef SPINWEAVE_RNG_HPP
#define SPINWEAVE_RNG_HPP

#include <cstdint>

namespace spinweave {

/// Counter-based generator: output n of stream (seed, stream) is
/// splitmix64(key(seed, stream) + n * golden). Every stream is
/// reproducible independently of how many other streams were consumed.
/// Distributions are implemented here (not via <random>) so draws are
/// bit-identical across standard libraries.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform in (0, 1).
  double uniform();
  double normal();
  double normal(double mean, double sigma);
  /// Normal(mean, sigma) conditioned on being >= 0 (rejection).
  double truncated_normal_nonneg(double mean, double sigma);
  int poisson(double mean);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace spinweave

#endif  // SPINWEAVE_RNG_HPP
