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
#include "spinweave/trace.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace spinweave {

double Trace::mean() const {
  if (y.empty()) return 0.0;
  return std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
}

Trace Trace::mean_subtracted() const {
  Trace out = *this;
  const double m = mean();
  for (double& v : out.y) v -= m;
  return out;
}

void require_uniform(std::span<const double> t) {
  if (t.size() < 2) throw std::invalid_argument("time grid needs at least two samples");
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  if (!(dt > 0.0)) throw std::invalid_argument("time grid must be increasing");
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double expected = t.front() + static_cast<double>(i) * dt;
    if (!(std::abs(t[i] - expected) <= 1e-9 * dt)) {
      std::ostringstream msg;
      msg << "time grid is not uniform at sample " << i;
      throw std::invalid_argument(msg.str());
    }
  }
}

void Trace::validate() const {
  if (t.size() != y.size()) throw std::invalid_argument("trace: t and y lengths differ");
  if (t.size() < kMinTraceSamples) {
    throw std::invalid_argument("trace: fewer than 16 samples");
  }
  require_uniform(t);
}

std::vector<double> uniform_grid(double t_max_ps, double dt_ps) {
  if (!(dt_ps > 0.0) || !(dt_ps < t_max_ps)) {
    throw std::invalid_argument("grid: need 0 < dt < t_max");
  }
  const auto n = static_cast<std::size_t>(std::floor(t_max_ps / dt_ps + 1e-9)) + 1;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i) * dt_ps;
  return grid;
}

}  // namespace spinweave
