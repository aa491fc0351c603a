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

#ifndef SPINWEAVE_ERRORS_HPP
#define SPINWEAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spinweave {

// Numerical failure: non-convergence, rank collapse, broken invariants.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problem too large for the dense machinery.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration value; carries the offending key (the message
// is expected to name it too).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinweave

#endif  // SPINWEAVE_ERRORS_HPP
