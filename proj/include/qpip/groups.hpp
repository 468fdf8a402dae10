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

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "qpip/rng.hpp"

namespace qpip {

enum class Pauli1 : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Single-qubit Pauli matrix. Note the sigma_y sign convention here is
/// [[0, i], [-i, 0]]; all derived identities use it consistently.
Eigen::Matrix2cd pauli_matrix(Pauli1 p);

/// Two-qubit Pauli label; `first` acts on the most significant qubit.
struct PauliPair {
  Pauli1 first;
  Pauli1 second;

  bool is_identity() const {
    return first == Pauli1::I && second == Pauli1::I;
  }
  std::string name() const;
  static PauliPair from_name(const std::string& name);
  /// All 16 pairs, identity first.
  static std::array<PauliPair, 16> all();
  /// The 15 non-identity pairs.
  static std::array<PauliPair, 15> non_identity();
};

Eigen::Matrix4cd pauli_pair_matrix(const PauliPair& p);

/// Generalized qudit Pauli X_q^l Z_q^n with X_q|x> = |x+1 mod q> and
/// Z_q|x> = e^{2 pi i x / q}|x>.
Eigen::MatrixXcd gen_pauli_matrix(std::uint32_t q, std::uint32_t l,
                                  std::uint32_t n);

/// q-dimensional Fourier matrix F|a> = q^{-1/2} sum_b e^{2 pi i a b / q}|b>.
Eigen::MatrixXcd fourier_matrix(std::uint32_t q);

/// Fourier with a scaled phase, |x> -> q^{-1/2} sum_y w^{gamma x y}|y>.
/// gamma = 1 recovers the plain Fourier matrix.
Eigen::MatrixXcd scaled_fourier_matrix(std::uint32_t q, std::uint32_t gamma);

/// Verifies Z_q F = F X_q and X_q^{-1} F = F Z_q to tolerance.
bool fourier_conjugation_check(std::uint32_t q);

struct CliffordElement {
  Eigen::Matrix4cd matrix;
  std::size_t index = 0;
};

/// The full two-qubit Clifford group modulo global phase, enumerated by BFS
/// closure from {H x I, I x H, S x I, I x S, CNOT}. The table doubles as the
/// brute-force oracle for detection-probability claims.
class CliffordTable {
 public:
  /// Built on first use, then shared read-only.
  static const CliffordTable& instance();

  std::size_t size() const { return elements_.size(); }
  const CliffordElement& at(std::size_t i) const { return elements_[i]; }
  const CliffordElement& sample(RandomStream& rng) const;

  /// True when the matrix equals a table element up to global phase.
  bool contains(const Eigen::Matrix4cd& m) const;

  /// Spot-checks closure under products modulo phase on random pairs.
  bool closure_spot_check(std::size_t pairs, RandomStream& rng) const;

  double build_seconds() const { return build_seconds_; }

 private:
  CliffordTable();
  std::vector<CliffordElement> elements_;
  // canonical key -> index
  std::unordered_map<std::string, std::size_t> lookup_;
  double build_seconds_ = 0.0;
};

struct ConjugationResult {
  PauliPair pauli;
  std::complex<double> phase;
};

/// CPC^{-1} = phase * P'. Throws InvariantError when the result is not
/// proportional to a Pauli pair.
ConjugationResult conjugate(const Eigen::Matrix4cd& clifford,
                            const PauliPair& p);

/// Haar-random 4x4 unitary (QR of a Ginibre matrix); comparison mode only.
Eigen::Matrix4cd sample_haar4(RandomStream& rng);

}  // namespace qpip
