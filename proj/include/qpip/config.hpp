// Copyright 2026 The qpip-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qpip {

/// Numerical tolerance used by every norm/unitarity/probability check.
inline constexpr double kTol = 1e-9;

/// Largest joint Hilbert-space dimension the dense simulator will allocate.
inline constexpr std::size_t kMaxStateDim = std::size_t{1} << 22;

/// Largest codeword enumeration (q^d) allowed for the polynomial code.
inline constexpr std::size_t kMaxCodewordEnum = 1000000;

/// Bad user-supplied configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A desk-scale resource guard was exceeded (CLI exit code 3).
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An internal consistency invariant failed (CLI exit code 4).
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qpip
