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
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qpip/rng.hpp"

namespace qpip {

using Complex = std::complex<double>;

/// Ordered list of subsystems with per-site dimension (2 for qubits, q for
/// qudits) and opaque labels. Site 0 is the most significant digit of the
/// basis index.
struct SubsystemLayout {
  std::vector<std::uint32_t> dims;
  std::vector<std::string> labels;

  std::size_t total_dim() const;
  friend bool operator==(const SubsystemLayout&, const SubsystemLayout&);
};

/// Dense unit-norm state vector over a SubsystemLayout.
class QuditState {
 public:
  QuditState() = default;

  /// Computational basis state |digits>.
  static QuditState basis(SubsystemLayout layout,
                          const std::vector<std::uint32_t>& digits);
  /// Arbitrary amplitudes; normalized input required (within kTol).
  static QuditState from_amplitudes(SubsystemLayout layout,
                                    Eigen::VectorXcd amplitudes);

  const SubsystemLayout& layout() const { return layout_; }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  double norm() const { return amp_.norm(); }

  /// Basis index of a digit string under this layout.
  std::size_t index_of(const std::vector<std::uint32_t>& digits) const;

  /// JSON array of [basis_index, re, im] for amplitudes above 1e-12.
  std::string dump_json() const;

 private:
  SubsystemLayout layout_;
  Eigen::VectorXcd amp_;
};

/// Operator on a subset of sites; `matrix` is indexed with the first listed
/// site as the most significant digit.
struct LocalOperator {
  std::vector<std::size_t> sites;
  Eigen::MatrixXcd matrix;
  bool unitary_flag = true;
};

/// Projector onto the span of orthonormal vectors over a subset of sites.
struct Projector {
  std::vector<std::size_t> sites;
  std::vector<Eigen::VectorXcd> basis;
};

/// Applies op embedded in the full tensor product. Checks unitarity when
/// unitary_flag is set; throws InvariantError when the result loses norm.
QuditState apply(const QuditState& state, const LocalOperator& op);

/// Applies an arbitrary linear contraction and renormalizes; returns the
/// kept squared weight alongside the state.
std::pair<QuditState, double> apply_contraction(const QuditState& state,
                                                const LocalOperator& op);

struct MeasureResult {
  bool outcome;
  QuditState post_state;
  /// ||P psi||^2, reported exactly regardless of outcome.
  double probability;
};

MeasureResult measure_projector(const QuditState& state, const Projector& p,
                                RandomStream& rng);

/// ||P psi||^2 without sampling.
double projection_weight(const QuditState& state, const Projector& p);

/// Computational-basis measurement of one site.
std::pair<std::uint32_t, QuditState> measure_site(const QuditState& state,
                                                  std::size_t site,
                                                  RandomStream& rng);

/// Removes a site that is in the definite basis state |value> (e.g. right
/// after measurement). Throws InvariantError if residual weight remains on
/// other values.
QuditState drop_site(const QuditState& state, std::size_t site,
                     std::uint32_t value);

double fidelity(const QuditState& a, const QuditState& b);
Complex inner(const QuditState& a, const QuditState& b);

/// Tensor product of states, layouts concatenated in order.
QuditState embed_product(const std::vector<QuditState>& states);

}  // namespace qpip
