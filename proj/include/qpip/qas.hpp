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
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qpip/groups.hpp"
#include "qpip/polycode.hpp"
#include "qpip/qsim.hpp"
#include "qpip/rng.hpp"

namespace qpip {

// ---------------------------------------------------------------------------
// Clifford scheme: append a |0> check qubit, apply a random two-qubit
// Clifford. Keys are recorded per block and never transmitted.
// ---------------------------------------------------------------------------

struct CliffordAuthKey {
  Eigen::Matrix4cd unitary;
  /// Index in the canonical table; -1 for Haar comparison-mode keys.
  long table_index = -1;

  static CliffordAuthKey identity();
  static CliffordAuthKey sample(RandomStream& rng);
  static CliffordAuthKey sample_haar(RandomStream& rng);
};

/// U_R (|data> x |0>); site 0 is the data qubit, site 1 the check qubit.
QuditState clifford_encode(const QuditState& data_qubit,
                           const CliffordAuthKey& key);

struct CliffordVerifyResult {
  bool accept;
  QuditState data_qubit;
  /// Exact probability of measuring the check qubit in |0>.
  double accept_probability;
};

/// Applies U_R^{-1}, measures the check qubit; accept iff it reads 0.
CliffordVerifyResult clifford_decode_verify(const QuditState& block,
                                            const CliffordAuthKey& key,
                                            RandomStream& rng);

/// Exact rejection probability of an attack inserted between encode and
/// decode, averaged over all Clifford keys by enumeration (the brute-force
/// oracle, not Monte Carlo). Non-unitary contractions are handled by
/// conditioning on the kept weight.
double clifford_detection_probability(
    const Eigen::Matrix4cd& attack,
    const Eigen::Vector2cd& data = Eigen::Vector2cd(1.0, 0.0));

/// Exact key-averaged acceptance when the prover fabricates `fabricated`
/// instead of returning the block (the no-memory strategy's per-check value).
double clifford_fabricated_accept_probability(const Eigen::Vector4cd& fabricated);

/// Exact key-averaged acceptance when the prover measures the block in the
/// computational basis and resends the collapsed state.
double clifford_measure_resend_accept_probability(
    const Eigen::Vector2cd& data = Eigen::Vector2cd(1.0, 0.0));

/// Exact average over all Clifford keys of the encoded single-block density
/// matrix (key-secrecy oracle).
Eigen::Matrix4cd clifford_key_average_density(const Eigen::Vector2cd& data);

// ---------------------------------------------------------------------------
// Signed-polynomial scheme.
// ---------------------------------------------------------------------------

/// Secret of the polynomial scheme: the sign key (shared across the
/// computation) and a per-block Pauli key (x, z) in (F_q^m)^2.
struct PolyAuthKey {
  SignKey sign;
  std::vector<std::uint32_t> x;
  std::vector<std::uint32_t> z;

  static PolyAuthKey trivial(const CodeParams& params);
  static PolyAuthKey random(const CodeParams& params, RandomStream& rng);
  static PolyAuthKey random_with_sign(const CodeParams& params, SignKey sign,
                                      RandomStream& rng);
};

/// The normalized code state |S_a|eps> (no Pauli key); m qudit sites.
QuditState poly_code_state(std::uint32_t logical, const CodeParams& params,
                           const SignKey& sign);

/// |S_a|eps,x,z>: uniform superposition over the signed codewords with the
/// per-site Pauli key applied. Normalization factor q^{-d/2} is explicit.
QuditState poly_encode(std::uint32_t logical, const CodeParams& params,
                       const PolyAuthKey& key);

struct PolyVerifyResult {
  double accept_probability;
  /// Conditional distribution over decoded logical values given acceptance.
  std::map<std::uint32_t, double> logical_distribution;
};

/// Removes the Pauli key and projects onto the q-dimensional code space
/// spanned by the encoded logical states {|S_b|eps>}.
PolyVerifyResult poly_verify(const QuditState& block, const CodeParams& params,
                             const PolyAuthKey& key);

/// Logical X_q gate: purely classical key update x_i <- x_i - eps_i.
PolyAuthKey gate_xq(const CodeParams& params, const PolyAuthKey& key);

/// Classical half of the logical Fourier gate: per coordinate,
/// (x_i, z_i) <- (-z_i / gamma_i, gamma_i x_i) where gamma_i is the
/// Lagrange-at-zero coefficient. Reduces to (x, z) -> (-z, x) when all
/// gamma_i = 1.
PolyAuthKey fourier_key_update(const CodeParams& params,
                               const PolyAuthKey& key);

/// The prover's transversal action for the logical Fourier: the scaled
/// Fourier with public coefficient gamma_i on coordinate i. Key-independent.
std::vector<Eigen::MatrixXcd> transversal_fourier_ops(const CodeParams& params);

/// Applies the transversal Fourier to an m-qudit block and returns the
/// updated key; the pair encodes the logical Fourier of the original block.
std::pair<QuditState, PolyAuthKey> gate_fourier(const QuditState& block,
                                                const CodeParams& params,
                                                const PolyAuthKey& key);

// ---------------------------------------------------------------------------
// Twirl diagnostics.
// ---------------------------------------------------------------------------

enum class SchemeTag { Clifford, Polynomial };

/// Monte Carlo estimate over random keys of the induced distribution of
/// effective Pauli errors after decoding, labelled "IX", "ZY", ... for the
/// Clifford scheme and "X^l Z^n @site" style labels for the polynomial
/// scheme. Weights come from the Pauli-basis expansion of the conjugated
/// attack.
std::map<std::string, double> effective_attack_twirl(
    const Eigen::MatrixXcd& attack, SchemeTag scheme, const CodeParams& params,
    std::size_t attacked_site, std::size_t trials, RandomStream& rng);

}  // namespace qpip
