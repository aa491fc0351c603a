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
#ifndef SPINWEAVE_TRACE_HPP
#define SPINWEAVE_TRACE_HPP

#include <span>
#include <string>
#include <vector>

namespace spinweave {

inline constexpr std::size_t kMinTraceSamples = 16;

/// Uniformly sampled differential-reflectivity proxy.
struct Trace {
  std::vector<double> t;  // ps
  std::vector<double> y;

  std::size_t size() const noexcept { return t.size(); }
  /// Mean spacing over the whole grid.
  double dt() const {
    return t.size() > 1 ? (t.back() - t.front()) / static_cast<double>(t.size() - 1) : 0.0;
  }
  double mean() const;
  Trace mean_subtracted() const;

  /// Throws std::invalid_argument unless len(t) == len(y) >= 16 and the
  /// grid is uniform to 1e-12 relative to dt.
  void validate() const;
};

/// t_n = n dt for n = 0 .. floor(t_max / dt).
std::vector<double> uniform_grid(double t_max_ps, double dt_ps);

/// Throws std::invalid_argument naming the first offending sample.
void require_uniform(std::span<const double> t);

}  // namespace spinweave

#endif  // SPINWEAVE_TRACE_HPP
