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

#include <cstdint>
#include <vector>

namespace qpip {

bool is_prime(std::uint64_t n);

/// Arithmetic context for the prime field F_q. Elements are canonical
/// residues in [0, q); -1 is stored as q-1 so equality tests are exact.
class PrimeField {
 public:
  /// Throws ConfigError if q is not prime.
  explicit PrimeField(std::uint32_t q);

  std::uint32_t q() const { return q_; }

  std::uint32_t reduce(std::int64_t v) const;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  /// Throws InvariantError on a == 0.
  std::uint32_t inv(std::uint32_t a) const;

 private:
  std::uint32_t q_;
};

/// A field element tagged with its modulus, matching the representation used
/// throughout the polynomial-code layer.
struct FieldElement {
  std::uint32_t value;
  std::uint32_t modulus;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

}  // namespace qpip
