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

#include "qpip/field.hpp"

#include <string>

#include "qpip/config.hpp"

namespace qpip {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
  if (!is_prime(q)) {
    throw ConfigError("field modulus " + std::to_string(q) + " is not prime");
  }
}

std::uint32_t PrimeField::reduce(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(q_);
  if (r < 0) r += q_;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t PrimeField::add(std::uint32_t a, std::uint32_t b) const {
  std::uint64_t s = std::uint64_t{a} + b;
  if (s >= q_) s -= q_;
  return static_cast<std::uint32_t>(s);
}

std::uint32_t PrimeField::sub(std::uint32_t a, std::uint32_t b) const {
  return add(a, neg(b));
}

std::uint32_t PrimeField::mul(std::uint32_t a, std::uint32_t b) const {
  return static_cast<std::uint32_t>((std::uint64_t{a} * b) % q_);
}

std::uint32_t PrimeField::neg(std::uint32_t a) const {
  return a == 0 ? 0 : q_ - a;
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint64_t base = a % q_;
  std::uint64_t acc = 1;
  while (e > 0) {
    if (e & 1) acc = (acc * base) % q_;
    base = (base * base) % q_;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(acc);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % q_ == 0) throw InvariantError("inverse of zero in F_q");
  return pow(a, q_ - 2);
}

}  // namespace qpip
