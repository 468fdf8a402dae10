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
#include <optional>
#include <vector>

#include "qpip/field.hpp"
#include "qpip/rng.hpp"

namespace qpip {

/// Parameters of the (signed) polynomial code over F_q: polynomials of
/// degree <= d evaluated at the fixed points 1..m. The default m = 2d+1
/// detects every pattern of up to d altered coordinates.
struct CodeParams {
  std::uint32_t q;
  std::uint32_t d;
  std::uint32_t m;
  /// Set when the caller picked m != 2d+1; still valid as long as m >= d+1.
  bool nonstandard_m = false;

  /// Validates q prime, q > m, m >= d+1. Throws ConfigError otherwise.
  static CodeParams make(std::uint32_t q, std::uint32_t d, std::uint32_t m);

  PrimeField field() const { return PrimeField(q); }

  /// Evaluation points, fixed to 1..m.
  std::vector<std::uint32_t> eval_points() const;

  /// Lagrange coefficients L_j with f(0) = sum_j L_j f(j) for every
  /// polynomial f of degree < m. These drive the transversal Fourier gate.
  std::vector<std::uint32_t> lagrange_at_zero() const;
};

/// Sign key epsilon in {+1,-1}^m, with -1 stored as q-1.
struct SignKey {
  std::vector<std::uint32_t> epsilon;

  static SignKey trivial(const CodeParams& params);
  static SignKey random(const CodeParams& params, RandomStream& rng);
  /// All 2^m sign keys, for exhaustive key averaging.
  static std::vector<SignKey> all(const CodeParams& params);
};

/// Length-m string of field values; a codeword when it matches some
/// degree-<=d polynomial after the sign key is stripped.
using PolyCodeword = std::vector<std::uint32_t>;

/// Horner evaluation of sum_i coeffs[i] x^i at `point`, mod q.
std::uint32_t poly_eval(const std::vector<std::uint32_t>& coeffs,
                        std::uint32_t point, const PrimeField& field);

/// Lagrange interpolation: the unique polynomial of degree < points.size()
/// through the given (x, y) pairs. Throws ConfigError on duplicate x.
std::vector<std::uint32_t> interpolate(
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& points,
    const PrimeField& field);

struct CodewordCheck {
  bool in_code;
  /// f(0) of the interpolated polynomial; meaningful only when in_code.
  std::uint32_t logical;
};

/// Membership test for the signed code: strips epsilon, interpolates all m
/// points and checks the degree bound.
CodewordCheck is_codeword(const PolyCodeword& word, const CodeParams& params,
                          const SignKey& key);

/// All q^d codewords of the signed code with f(0) = logical.
/// Throws ResourceError when q^d exceeds the desk-scale guard.
std::vector<PolyCodeword> enumerate_codewords(const CodeParams& params,
                                              const SignKey& key,
                                              std::uint32_t logical);

}  // namespace qpip
