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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qpip/qas.hpp"
#include "qpip/qsim.hpp"
#include "qpip/rng.hpp"
#include "qpip/stats.hpp"

namespace qpip {

// ---------------------------------------------------------------------------
// Messages, ownership, transcripts.
// ---------------------------------------------------------------------------

enum class Owner : std::uint8_t { Verifier, Prover, Output, Dropped };

std::string owner_name(Owner o);

struct Message {
  std::size_t step;
  /// "quantum" for register transfers, "classical" otherwise.
  std::string kind;
  std::string sender;
  std::string receiver;
  std::string payload;
};

struct Transcript {
  std::vector<Message> messages;

  /// One JSON object per line: step, kind, sender, receiver, payload digest.
  std::string to_json_lines() const;
};

/// Thrown on protocol violations (memory bound, malformed message flow);
/// converted by the runners into the Aborted outcome.
struct AbortSignal {
  std::string reason;
};

/// The joint quantum state of all parties plus a register ownership ledger.
/// "Sending" a register only flips its owner; entanglement across parties is
/// preserved exactly because there is a single global state.
class World {
 public:
  /// Appends one fresh site in basis state |value>; returns its handle.
  std::size_t add_site(std::uint32_t dim, std::uint32_t value, Owner owner,
                       const std::string& label);
  /// Tensors a multi-site state in; returns one handle per site.
  std::vector<std::size_t> add_block(const QuditState& block, Owner owner);

  void apply_op(const std::vector<std::size_t>& handles,
                const Eigen::MatrixXcd& matrix, bool unitary = true);
  std::uint32_t measure(std::size_t handle, RandomStream& rng);
  /// Projective measurement onto the span of `basis` over the handles.
  MeasureResult measure_span(const std::vector<std::size_t>& handles,
                             const std::vector<Eigen::VectorXcd>& basis,
                             RandomStream& rng);
  /// Removes a measured site; it must sit in the definite state |value>.
  void drop(std::size_t handle, std::uint32_t value);

  Owner owner(std::size_t handle) const;
  void set_owner(std::size_t handle, Owner owner);
  /// Number of live sites currently owned by `o`.
  std::size_t owned_count(Owner o) const;

  const QuditState& state() const { return state_; }
  std::size_t site_index(std::size_t handle) const;

  /// ||<target|psi>||^2 over the listed handles (engine-side ground truth,
  /// never visible to the verifier).
  double overlap_weight(const std::vector<std::size_t>& handles,
                        const Eigen::VectorXcd& target) const;

 private:
  QuditState state_;
  std::vector<std::optional<std::size_t>> site_of_handle_;
  std::vector<std::size_t> handle_at_site_;
  std::vector<Owner> owner_of_handle_;
};

// ---------------------------------------------------------------------------
// Circuits and prover strategies.
// ---------------------------------------------------------------------------

struct GateSpec {
  /// Named gates: HxI, IxH, SxI, IxS, CNOT, CZ, SWAP (Clifford scheme, two
  /// wires); Xq, F (polynomial scheme, one wire); or "raw" with `matrix`.
  std::string name;
  std::vector<std::size_t> wires;
  Eigen::MatrixXcd matrix;
};

struct Circuit {
  std::size_t wires = 1;
  std::vector<GateSpec> gates;
};

/// Resolves a named two-qubit gate to its 4x4 matrix.
Eigen::Matrix4cd named_two_qubit_gate(const std::string& name);

enum class StrategyKind : std::uint8_t {
  Honest,
  FixedPauli,
  RandomUnitary,
  NoMemory,
  MeasureResend,
};

struct ProverStrategy {
  StrategyKind kind = StrategyKind::Honest;
  /// FixedPauli / RandomUnitary fire on this block-return event (0-based
  /// among all block returns in the run).
  std::size_t attack_step = 0;
  /// Clifford-scheme Pauli attack label.
  PauliPair pauli{Pauli1::I, Pauli1::I};
  /// Polynomial-scheme attack X^l Z^n on one coordinate of the block.
  std::uint32_t gen_x_exp = 0;
  std::uint32_t gen_z_exp = 0;
  std::size_t attack_site = 0;
  /// RandomUnitary strength: applies exp(i theta P) for a fresh uniformly
  /// random non-identity Pauli P each trial.
  double theta = 0.0;

  static ProverStrategy honest() { return {}; }
};

struct VerifierConfig {
  SchemeTag scheme = SchemeTag::Clifford;
  /// Maximum number of register sites the verifier may own at once.
  std::size_t memory_bound = 4;
  CodeParams params = CodeParams::make(5, 1, 3);
  bool log_keys = false;
  bool dump_state = false;
};

enum class Outcome : std::uint8_t { Accepted, Rejected, Aborted };

struct TrialResult {
  Outcome outcome;
  /// Engine-side fidelity of the released output against the ideal circuit
  /// output; 0 when rejected or aborted before release.
  double logical_fidelity = 0.0;
  Transcript transcript;
  /// Amplitude dump of the final joint state when dump_state is set.
  std::string state_dump;

  bool accepted() const { return outcome == Outcome::Accepted; }
};

// ---------------------------------------------------------------------------
// Protocol runners.
// ---------------------------------------------------------------------------

/// Store-and-gate protocol where the verifier applies every gate itself:
/// inputs are authenticated and parked with the prover; per gate the two
/// operand blocks are recalled, checked, transformed, re-keyed and returned.
TrialResult run_clifford_protocol(const Circuit& circuit,
                                  const std::vector<std::uint32_t>& input,
                                  const ProverStrategy& strategy,
                                  const VerifierConfig& config,
                                  RandomStream& rng);

/// Classical-interaction protocol: blocks are sent once; gates are key
/// updates (Xq) or transversal instructions (F); blocks come back only for
/// final verification.
TrialResult run_poly_protocol(const Circuit& circuit,
                              const std::vector<std::uint32_t>& input,
                              const ProverStrategy& strategy,
                              const VerifierConfig& config, RandomStream& rng);

// ---------------------------------------------------------------------------
// Monte Carlo estimation.
// ---------------------------------------------------------------------------

struct EstimateSummary {
  std::size_t trials = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t aborted = 0;
  /// Aborts count as rejections here; they are still reported separately.
  double acceptance_rate = 0.0;
  double mean_fidelity_given_accept = 0.0;
  WilsonInterval interval{0.0, 0.0};
};

/// Runs `trials` independent trials, each on its own substream of the master
/// seed. The aggregate is identical for every parallelism degree.
EstimateSummary estimate(
    const std::function<TrialResult(RandomStream&)>& trial_fn,
    std::uint64_t master_seed, std::size_t trials, std::size_t parallelism);

// ---------------------------------------------------------------------------
// Exact strategy oracles (enumeration, no sampling).
// ---------------------------------------------------------------------------

/// Number of check events in a run: one per block return.
std::size_t clifford_check_events(const Circuit& circuit);

/// Exact key-averaged acceptance probability of the strategy on the given
/// run, by enumeration over the Clifford table or the polynomial keys.
/// Polynomial-scheme oracles are implemented for gate-free circuits.
double exact_acceptance_oracle(const Circuit& circuit,
                               const ProverStrategy& strategy,
                               const VerifierConfig& config);

/// Exact sign-and-shift-key average of accepting a fabricated |0...0> block.
double poly_fabricated_accept_average(const CodeParams& params);
/// Exact sign-key average of accepting a block measured in the computational
/// basis and resent.
double poly_measure_resend_accept_average(const CodeParams& params);
/// Exact sign-key average of accepting a block hit by X^l Z^n on one site.
double poly_fixed_pauli_accept_average(const CodeParams& params,
                                       std::uint32_t l, std::uint32_t n);

}  // namespace qpip
