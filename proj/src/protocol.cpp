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

#include "qpip/protocol.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qpip/config.hpp"
#include "qpip/field.hpp"

namespace qpip {
namespace {

using nlohmann::json;

/// Internal signal: a check failed, unwind to the runner with Rejected.
struct RejectSignal {};

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

std::string owner_name(Owner o) {
  switch (o) {
    case Owner::Verifier: return "verifier";
    case Owner::Prover: return "prover";
    case Owner::Output: return "output";
    case Owner::Dropped: return "dropped";
  }
  return "?";
}

std::string Transcript::to_json_lines() const {
  std::ostringstream out;
  for (const auto& m : messages) {
    std::ostringstream digest;
    digest << std::hex << std::hash<std::string>{}(m.payload);
    json line = {{"step", m.step},
                 {"kind", m.kind},
                 {"sender", m.sender},
                 {"receiver", m.receiver},
                 {"digest", digest.str()},
                 {"payload", m.payload}};
    out << line.dump() << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// World
// ---------------------------------------------------------------------------

std::size_t World::add_site(std::uint32_t dim, std::uint32_t value,
                            Owner owner, const std::string& label) {
  const QuditState site = QuditState::basis({{dim}, {label}}, {value});
  return add_block(site, owner)[0];
}

std::vector<std::size_t> World::add_block(const QuditState& block,
                                          Owner owner) {
  if (state_.layout().dims.empty()) {
    state_ = block;
  } else {
    state_ = embed_product({state_, block});
  }
  std::vector<std::size_t> handles;
  for (std::size_t s = 0; s < block.layout().dims.size(); ++s) {
    const std::size_t handle = site_of_handle_.size();
    site_of_handle_.push_back(handle_at_site_.size());
    handle_at_site_.push_back(handle);
    owner_of_handle_.push_back(owner);
    handles.push_back(handle);
  }
  return handles;
}

std::size_t World::site_index(std::size_t handle) const {
  if (handle >= site_of_handle_.size() || !site_of_handle_[handle]) {
    throw InvariantError("handle does not refer to a live site");
  }
  return *site_of_handle_[handle];
}

void World::apply_op(const std::vector<std::size_t>& handles,
                     const Eigen::MatrixXcd& matrix, bool unitary) {
  std::vector<std::size_t> sites;
  sites.reserve(handles.size());
  for (const std::size_t h : handles) sites.push_back(site_index(h));
  if (unitary) {
    state_ = apply(state_, LocalOperator{sites, matrix, true});
  } else {
    state_ = apply_contraction(state_, LocalOperator{sites, matrix, false})
                 .first;
  }
}

std::uint32_t World::measure(std::size_t handle, RandomStream& rng) {
  auto [outcome, post] = measure_site(state_, site_index(handle), rng);
  state_ = std::move(post);
  return outcome;
}

MeasureResult World::measure_span(const std::vector<std::size_t>& handles,
                                  const std::vector<Eigen::VectorXcd>& basis,
                                  RandomStream& rng) {
  std::vector<std::size_t> sites;
  for (const std::size_t h : handles) sites.push_back(site_index(h));
  MeasureResult r = measure_projector(state_, Projector{sites, basis}, rng);
  state_ = r.post_state;
  return r;
}

void World::drop(std::size_t handle, std::uint32_t value) {
  const std::size_t site = site_index(handle);
  state_ = drop_site(state_, site, value);
  owner_of_handle_[handle] = Owner::Dropped;
  site_of_handle_[handle] = std::nullopt;
  handle_at_site_.erase(handle_at_site_.begin() +
                        static_cast<std::ptrdiff_t>(site));
  for (std::size_t s = site; s < handle_at_site_.size(); ++s) {
    site_of_handle_[handle_at_site_[s]] = s;
  }
}

Owner World::owner(std::size_t handle) const {
  if (handle >= owner_of_handle_.size()) {
    throw InvariantError("unknown register handle");
  }
  return owner_of_handle_[handle];
}

void World::set_owner(std::size_t handle, Owner owner) {
  site_index(handle);  // must be live
  owner_of_handle_[handle] = owner;
}

std::size_t World::owned_count(Owner o) const {
  std::size_t count = 0;
  for (std::size_t h = 0; h < owner_of_handle_.size(); ++h) {
    if (site_of_handle_[h] && owner_of_handle_[h] == o) ++count;
  }
  return count;
}

double World::overlap_weight(const std::vector<std::size_t>& handles,
                             const Eigen::VectorXcd& target) const {
  std::vector<std::size_t> sites;
  for (const std::size_t h : handles) sites.push_back(site_index(h));
  return projection_weight(state_, Projector{sites, {target}});
}

// ---------------------------------------------------------------------------
// Gates
// ---------------------------------------------------------------------------

Eigen::Matrix4cd named_two_qubit_gate(const std::string& name) {
  using std::complex_literals::operator""i;
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Eigen::Matrix2cd s;
  s << 1, 0, 0, 1i;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  if (name == "HxI") return kron2(h, id);
  if (name == "IxH") return kron2(id, h);
  if (name == "SxI") return kron2(s, id);
  if (name == "IxS") return kron2(id, s);
  if (name == "CNOT") {
    Eigen::Matrix4cd m;
    m << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
    return m;
  }
  if (name == "CZ") {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
    m(3, 3) = -1;
    return m;
  }
  if (name == "SWAP") {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = m(3, 3) = m(1, 2) = m(2, 1) = 1;
    return m;
  }
  throw ConfigError("unknown two-qubit gate name: " + name);
}

namespace {

Eigen::Matrix4cd resolve_clifford_gate(const GateSpec& gate) {
  if (gate.name == "raw") {
    if (gate.matrix.rows() != 4 || gate.matrix.cols() != 4) {
      throw ConfigError("raw gate must be a 4x4 matrix");
    }
    return gate.matrix;
  }
  return named_two_qubit_gate(gate.name);
}

void validate_clifford_circuit(const Circuit& circuit) {
  for (const auto& g : circuit.gates) {
    if (g.wires.size() != 2 || g.wires[0] == g.wires[1] ||
        g.wires[0] >= circuit.wires || g.wires[1] >= circuit.wires) {
      throw ConfigError("two-qubit gates need two distinct in-range wires");
    }
    resolve_clifford_gate(g);
  }
}

void validate_poly_circuit(const Circuit& circuit) {
  for (const auto& g : circuit.gates) {
    if (g.name != "Xq" && g.name != "F") {
      throw ConfigError("polynomial-scheme circuits support only Xq and F");
    }
    if (g.wires.size() != 1 || g.wires[0] >= circuit.wires) {
      throw ConfigError("Xq and F act on one in-range wire");
    }
  }
}

/// Reference output of the circuit on unprotected qubits.
Eigen::VectorXcd ideal_clifford_output(const Circuit& circuit,
                                       const std::vector<std::uint32_t>& in) {
  SubsystemLayout layout;
  layout.dims.assign(circuit.wires, 2);
  for (std::size_t i = 0; i < circuit.wires; ++i) {
    layout.labels.push_back("w" + std::to_string(i));
  }
  QuditState state = QuditState::basis(layout, in);
  for (const auto& g : circuit.gates) {
    state = apply(state, LocalOperator{{g.wires[0], g.wires[1]},
                                       resolve_clifford_gate(g), true});
  }
  return state.amplitudes();
}

/// Reference per-wire logical vectors; Xq and F act on single wires so the
/// logical state stays a product over wires.
std::vector<Eigen::VectorXcd> ideal_poly_logicals(
    const Circuit& circuit, const std::vector<std::uint32_t>& in,
    const CodeParams& params) {
  std::vector<Eigen::VectorXcd> wires;
  for (std::size_t i = 0; i < circuit.wires; ++i) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(params.q);
    v[in[i]] = 1.0;
    wires.push_back(std::move(v));
  }
  const Eigen::MatrixXcd xq = gen_pauli_matrix(params.q, 1, 0);
  const Eigen::MatrixXcd f = fourier_matrix(params.q);
  for (const auto& g : circuit.gates) {
    wires[g.wires[0]] = (g.name == "Xq" ? xq : f) * wires[g.wires[0]];
  }
  return wires;
}

// ---------------------------------------------------------------------------
// Clifford-scheme runner
// ---------------------------------------------------------------------------

class CliffordRun {
 public:
  CliffordRun(const Circuit& circuit, const std::vector<std::uint32_t>& input,
              const ProverStrategy& strategy, const VerifierConfig& config,
              RandomStream& rng)
      : circuit_(circuit),
        input_(input),
        strategy_(strategy),
        config_(config),
        rng_(rng),
        data_(circuit.wires),
        check_(circuit.wires),
        keys_(circuit.wires) {
    if (input.size() != circuit.wires) {
      throw ConfigError("input length must match circuit width");
    }
    for (const std::uint32_t b : input) {
      if (b > 1) throw ConfigError("qubit inputs must be 0 or 1");
    }
    if (config.memory_bound < 3) {
      throw ConfigError("the Clifford scheme needs a memory bound of >= 3");
    }
    validate_clifford_circuit(circuit);
  }

  TrialResult run() {
    TrialResult result{Outcome::Accepted, 0.0, {}, {}};
    try {
      for (std::size_t i = 0; i < circuit_.wires; ++i) {
        bound_check(1);
        data_[i] = world_.add_site(2, input_[i], Owner::Verifier,
                                   "d" + std::to_string(i));
        encode_and_send(i);
      }
      for (const auto& g : circuit_.gates) {
        const std::size_t a = g.wires[0];
        const std::size_t b = g.wires[1];
        if (config_.memory_bound >= 4) {
          recall(a);
          recall(b);
          decode_and_check(a);
          decode_and_check(b);
        } else {
          // Sequenced variant: one block on the verifier side at a time.
          recall(a);
          decode_and_check(a);
          recall(b);
          decode_and_check(b);
        }
        world_.apply_op({data_[a], data_[b]}, resolve_clifford_gate(g));
        encode_and_send(a);
        encode_and_send(b);
      }
      std::vector<std::size_t> outputs;
      for (std::size_t i = 0; i < circuit_.wires; ++i) {
        recall(i);
        decode_and_check(i);
        world_.set_owner(data_[i], Owner::Output);
        outputs.push_back(data_[i]);
      }
      result.logical_fidelity =
          world_.overlap_weight(outputs, ideal_clifford_output(circuit_, input_));
    } catch (const RejectSignal&) {
      result.outcome = Outcome::Rejected;
      result.logical_fidelity = 0.0;
    } catch (const AbortSignal& a) {
      result.outcome = Outcome::Aborted;
      result.logical_fidelity = 0.0;
      msg("classical", "engine", "engine", "abort " + a.reason);
    }
    result.transcript = std::move(transcript_);
    if (config_.dump_state) result.state_dump = world_.state().dump_json();
    return result;
  }

 private:
  void msg(const std::string& kind, const std::string& from,
           const std::string& to, const std::string& payload) {
    transcript_.messages.push_back({step_++, kind, from, to, payload});
  }

  void bound_check(std::size_t incoming) {
    if (world_.owned_count(Owner::Verifier) + incoming >
        config_.memory_bound) {
      throw AbortSignal{"verifier memory bound exceeded"};
    }
  }

  void encode_and_send(std::size_t wire) {
    bound_check(1);
    check_[wire] = world_.add_site(2, 0, Owner::Verifier,
                                   "c" + std::to_string(wire));
    keys_[wire] = CliffordAuthKey::sample(rng_);
    world_.apply_op({data_[wire], check_[wire]}, keys_[wire].unitary);
    std::string payload = "block wire=" + std::to_string(wire);
    if (config_.log_keys) {
      payload += " key_index=" + std::to_string(keys_[wire].table_index);
    }
    world_.set_owner(data_[wire], Owner::Prover);
    world_.set_owner(check_[wire], Owner::Prover);
    msg("quantum", "verifier", "prover", payload);
    prover_receives(wire);
  }

  void prover_receives(std::size_t wire) {
    switch (strategy_.kind) {
      case StrategyKind::NoMemory:
        // Discarded registers decohere; their sites are removed since they
        // can never influence a check again.
        world_.measure(data_[wire], rng_);
        world_.measure(check_[wire], rng_);
        drop_measured(data_[wire]);
        drop_measured(check_[wire]);
        break;
      case StrategyKind::MeasureResend:
        world_.measure(data_[wire], rng_);
        world_.measure(check_[wire], rng_);
        break;
      default:
        break;
    }
  }

  void drop_measured(std::size_t handle) {
    // A just-measured qubit sits in a definite basis state; re-measuring is
    // deterministic and yields the value needed to drop the site.
    const std::uint32_t v = world_.measure(handle, rng_);
    world_.drop(handle, v);
  }

  void recall(std::size_t wire) {
    msg("classical", "verifier", "prover",
        "recall wire=" + std::to_string(wire));
    const std::size_t event = return_events_++;
    switch (strategy_.kind) {
      case StrategyKind::FixedPauli:
        if (event == strategy_.attack_step && !strategy_.pauli.is_identity()) {
          world_.apply_op({data_[wire], check_[wire]},
                          pauli_pair_matrix(strategy_.pauli));
        }
        break;
      case StrategyKind::RandomUnitary:
        if (event == strategy_.attack_step) {
          const auto paulis = PauliPair::non_identity();
          const PauliPair p = paulis[rng_.uniform_index(paulis.size())];
          const Eigen::Matrix4cd u =
              std::cos(strategy_.theta) * Eigen::Matrix4cd::Identity() +
              std::complex<double>(0, std::sin(strategy_.theta)) *
                  pauli_pair_matrix(p);
          world_.apply_op({data_[wire], check_[wire]}, u);
        }
        break;
      case StrategyKind::NoMemory:
        data_[wire] = world_.add_site(2, 0, Owner::Prover,
                                      "fab_d" + std::to_string(event));
        check_[wire] = world_.add_site(2, 0, Owner::Prover,
                                       "fab_c" + std::to_string(event));
        break;
      default:
        break;
    }
    bound_check(2);
    world_.set_owner(data_[wire], Owner::Verifier);
    world_.set_owner(check_[wire], Owner::Verifier);
    msg("quantum", "prover", "verifier",
        "block wire=" + std::to_string(wire));
  }

  void decode_and_check(std::size_t wire) {
    world_.apply_op({data_[wire], check_[wire]},
                    Eigen::Matrix4cd(keys_[wire].unitary.adjoint()));
    const std::uint32_t outcome = world_.measure(check_[wire], rng_);
    msg("classical", "verifier", "verifier",
        "check wire=" + std::to_string(wire) +
            " outcome=" + std::to_string(outcome));
    world_.drop(check_[wire], outcome);
    if (outcome != 0) throw RejectSignal{};
  }

  const Circuit& circuit_;
  const std::vector<std::uint32_t>& input_;
  const ProverStrategy& strategy_;
  const VerifierConfig& config_;
  RandomStream& rng_;

  World world_;
  Transcript transcript_;
  std::size_t step_ = 0;
  std::size_t return_events_ = 0;
  std::vector<std::size_t> data_;
  std::vector<std::size_t> check_;
  std::vector<CliffordAuthKey> keys_;
};

// ---------------------------------------------------------------------------
// Polynomial-scheme runner
// ---------------------------------------------------------------------------

class PolyRun {
 public:
  PolyRun(const Circuit& circuit, const std::vector<std::uint32_t>& input,
          const ProverStrategy& strategy, const VerifierConfig& config,
          RandomStream& rng)
      : circuit_(circuit),
        input_(input),
        strategy_(strategy),
        config_(config),
        rng_(rng),
        blocks_(circuit.wires) {
    if (input.size() != circuit.wires) {
      throw ConfigError("input length must match circuit width");
    }
    for (const std::uint32_t v : input) {
      if (v >= config.params.q) throw ConfigError("input out of field range");
    }
    if (config.memory_bound < config.params.m) {
      throw ConfigError("memory bound below the block length m");
    }
    if (strategy.kind == StrategyKind::RandomUnitary) {
      throw ConfigError(
          "the random-unitary strategy is defined for the Clifford scheme");
    }
    validate_poly_circuit(circuit);
  }

  TrialResult run() {
    TrialResult result{Outcome::Accepted, 0.0, {}, {}};
    try {
      const SignKey sign = SignKey::random(config_.params, rng_);
      for (std::size_t i = 0; i < circuit_.wires; ++i) {
        keys_.push_back(
            PolyAuthKey::random_with_sign(config_.params, sign, rng_));
        bound_check(config_.params.m);
        const QuditState enc = poly_encode(input_[i], config_.params, keys_[i]);
        blocks_[i] = world_.add_block(enc, Owner::Verifier);
        send_block(i);
      }
      for (const auto& g : circuit_.gates) {
        const std::size_t wire = g.wires[0];
        if (g.name == "Xq") {
          // Purely classical: the prover's registers are untouched.
          keys_[wire] = gate_xq(config_.params, keys_[wire]);
          msg("classical", "verifier", "prover",
              "gate Xq wire=" + std::to_string(wire));
        } else {
          msg("classical", "verifier", "prover",
              "gate F wire=" + std::to_string(wire));
          prover_applies_fourier(wire);
          keys_[wire] = fourier_key_update(config_.params, keys_[wire]);
        }
      }
      std::vector<std::size_t> all_sites;
      for (std::size_t i = 0; i < circuit_.wires; ++i) {
        recall_block(i);
        verify_block(i);
        for (const std::size_t h : blocks_[i]) {
          world_.set_owner(h, Owner::Output);
          all_sites.push_back(h);
        }
      }
      result.logical_fidelity = world_.overlap_weight(all_sites, ideal_encoded());
    } catch (const RejectSignal&) {
      result.outcome = Outcome::Rejected;
      result.logical_fidelity = 0.0;
    } catch (const AbortSignal& a) {
      result.outcome = Outcome::Aborted;
      result.logical_fidelity = 0.0;
      msg("classical", "engine", "engine", "abort " + a.reason);
    }
    result.transcript = std::move(transcript_);
    if (config_.dump_state) result.state_dump = world_.state().dump_json();
    return result;
  }

 private:
  void msg(const std::string& kind, const std::string& from,
           const std::string& to, const std::string& payload) {
    transcript_.messages.push_back({step_++, kind, from, to, payload});
  }

  void bound_check(std::size_t incoming) {
    if (world_.owned_count(Owner::Verifier) + incoming >
        config_.memory_bound) {
      throw AbortSignal{"verifier memory bound exceeded"};
    }
  }

  void send_block(std::size_t wire) {
    std::string payload = "block wire=" + std::to_string(wire);
    if (config_.log_keys) {
      json key_dump = {{"epsilon", keys_[wire].sign.epsilon},
                       {"x", keys_[wire].x},
                       {"z", keys_[wire].z}};
      payload += " key=" + key_dump.dump();
    }
    for (const std::size_t h : blocks_[wire]) {
      world_.set_owner(h, Owner::Prover);
    }
    msg("quantum", "verifier", "prover", payload);
    if (strategy_.kind == StrategyKind::NoMemory) {
      for (const std::size_t h : blocks_[wire]) {
        const std::uint32_t v = world_.measure(h, rng_);
        world_.drop(h, v);
      }
    } else if (strategy_.kind == StrategyKind::MeasureResend) {
      for (const std::size_t h : blocks_[wire]) world_.measure(h, rng_);
    }
  }

  void prover_applies_fourier(std::size_t wire) {
    if (strategy_.kind == StrategyKind::NoMemory) return;  // nothing held
    const auto ops = transversal_fourier_ops(config_.params);
    for (std::uint32_t j = 0; j < config_.params.m; ++j) {
      world_.apply_op({blocks_[wire][j]}, ops[j]);
    }
  }

  void recall_block(std::size_t wire) {
    msg("classical", "verifier", "prover",
        "recall wire=" + std::to_string(wire));
    const std::size_t event = return_events_++;
    if (strategy_.kind == StrategyKind::FixedPauli &&
        event == strategy_.attack_step &&
        (strategy_.gen_x_exp != 0 || strategy_.gen_z_exp != 0)) {
      if (strategy_.attack_site >= config_.params.m) {
        throw ConfigError("attack site outside the block");
      }
      world_.apply_op({blocks_[wire][strategy_.attack_site]},
                      gen_pauli_matrix(config_.params.q, strategy_.gen_x_exp,
                                       strategy_.gen_z_exp));
    } else if (strategy_.kind == StrategyKind::NoMemory) {
      QuditState fab = QuditState::basis(
          {std::vector<std::uint32_t>(config_.params.m, config_.params.q),
           std::vector<std::string>(config_.params.m, "fab")},
          std::vector<std::uint32_t>(config_.params.m, 0));
      blocks_[wire] = world_.add_block(fab, Owner::Prover);
    }
    bound_check(config_.params.m);
    for (const std::size_t h : blocks_[wire]) {
      world_.set_owner(h, Owner::Verifier);
    }
    msg("quantum", "prover", "verifier",
        "block wire=" + std::to_string(wire));
  }

  void verify_block(std::size_t wire) {
    std::vector<Eigen::VectorXcd> basis;
    basis.reserve(config_.params.q);
    for (std::uint32_t b = 0; b < config_.params.q; ++b) {
      basis.push_back(
          poly_encode(b, config_.params, keys_[wire]).amplitudes());
    }
    const MeasureResult r = world_.measure_span(blocks_[wire], basis, rng_);
    msg("classical", "verifier", "verifier",
        "check block=" + std::to_string(wire) +
            " outcome=" + std::to_string(r.outcome ? 0 : 1));
    if (!r.outcome) throw RejectSignal{};
  }

  Eigen::VectorXcd ideal_encoded() const {
    const auto logicals = ideal_poly_logicals(circuit_, input_, config_.params);
    std::vector<QuditState> encoded;
    for (std::size_t i = 0; i < circuit_.wires; ++i) {
      Eigen::Index block_dim = 1;
      for (std::uint32_t j = 0; j < config_.params.m; ++j) {
        block_dim *= config_.params.q;
      }
      Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(block_dim);
      for (std::uint32_t a = 0; a < config_.params.q; ++a) {
        if (std::abs(logicals[i][a]) < 1e-15) continue;
        amp += logicals[i][a] *
               poly_encode(a, config_.params, keys_[i]).amplitudes();
      }
      SubsystemLayout layout;
      layout.dims.assign(config_.params.m, config_.params.q);
      layout.labels.assign(config_.params.m, "ideal");
      encoded.push_back(
          QuditState::from_amplitudes(std::move(layout), std::move(amp)));
    }
    return embed_product(encoded).amplitudes();
  }

  const Circuit& circuit_;
  const std::vector<std::uint32_t>& input_;
  const ProverStrategy& strategy_;
  const VerifierConfig& config_;
  RandomStream& rng_;

  World world_;
  Transcript transcript_;
  std::size_t step_ = 0;
  std::size_t return_events_ = 0;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<PolyAuthKey> keys_;
};

}  // namespace

TrialResult run_clifford_protocol(const Circuit& circuit,
                                  const std::vector<std::uint32_t>& input,
                                  const ProverStrategy& strategy,
                                  const VerifierConfig& config,
                                  RandomStream& rng) {
  if (config.scheme != SchemeTag::Clifford) {
    throw ConfigError("run_clifford_protocol needs scheme=Clifford");
  }
  return CliffordRun(circuit, input, strategy, config, rng).run();
}

TrialResult run_poly_protocol(const Circuit& circuit,
                              const std::vector<std::uint32_t>& input,
                              const ProverStrategy& strategy,
                              const VerifierConfig& config, RandomStream& rng) {
  if (config.scheme != SchemeTag::Polynomial) {
    throw ConfigError("run_poly_protocol needs scheme=Polynomial");
  }
  return PolyRun(circuit, input, strategy, config, rng).run();
}

// ---------------------------------------------------------------------------
// Estimation
// ---------------------------------------------------------------------------

EstimateSummary estimate(
    const std::function<TrialResult(RandomStream&)>& trial_fn,
    std::uint64_t master_seed, std::size_t trials, std::size_t parallelism) {
  if (trials < 1) throw ConfigError("estimate needs trials >= 1");
  if (parallelism < 1) parallelism = 1;

  std::vector<Outcome> outcomes(trials, Outcome::Aborted);
  std::vector<double> fidelities(trials, 0.0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= trials) return;
      try {
        RandomStream stream = RandomStream::substream(master_seed, t);
        const TrialResult r = trial_fn(stream);
        outcomes[t] = r.outcome;
        fidelities[t] = r.logical_fidelity;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  if (parallelism == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < parallelism; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  EstimateSummary s;
  s.trials = trials;
  double fid_sum = 0.0;
  // Sequential aggregation in trial order keeps the result independent of
  // how threads interleaved.
  for (std::size_t t = 0; t < trials; ++t) {
    switch (outcomes[t]) {
      case Outcome::Accepted:
        ++s.accepted;
        fid_sum += fidelities[t];
        break;
      case Outcome::Rejected:
        ++s.rejected;
        break;
      case Outcome::Aborted:
        ++s.aborted;
        break;
    }
  }
  s.acceptance_rate = double(s.accepted) / double(trials);
  s.mean_fidelity_given_accept =
      s.accepted ? fid_sum / double(s.accepted) : 0.0;
  s.interval = wilson_interval(s.accepted, trials);
  return s;
}

// ---------------------------------------------------------------------------
// Exact oracles
// ---------------------------------------------------------------------------

std::size_t clifford_check_events(const Circuit& circuit) {
  return 2 * circuit.gates.size() + circuit.wires;
}

double poly_fabricated_accept_average(const CodeParams& params) {
  // Acceptance of |0...0> under the key (eps, x, z): removing the key maps it
  // to a basis state at -x (the z half only adds a global phase), so the
  // block accepts iff that string is a signed codeword, with weight q^{-d}.
  PrimeField f(params.q);
  double total = 0.0;
  std::size_t count = 0;
  const double hit = 1.0 / std::pow(double(params.q), double(params.d));
  for (const SignKey& sign : SignKey::all(params)) {
    std::set<PolyCodeword> words;
    for (std::uint32_t a = 0; a < params.q; ++a) {
      for (const auto& w : enumerate_codewords(params, sign, a)) {
        words.insert(w);
      }
    }
    std::vector<std::uint32_t> x(params.m, 0);
    for (;;) {
      PolyCodeword shifted(params.m);
      for (std::uint32_t j = 0; j < params.m; ++j) shifted[j] = f.neg(x[j]);
      total += words.count(shifted) ? hit : 0.0;
      ++count;
      std::size_t j = 0;
      while (j < params.m && ++x[j] == params.q) x[j++] = 0;
      if (j == params.m) break;
    }
  }
  return total / double(count);
}

double poly_measure_resend_accept_average(const CodeParams& params) {
  // The Pauli key shifts the measured string and the verification basis by
  // the same amount, so the trivial key is representative.
  double total = 0.0;
  std::size_t count = 0;
  for (const SignKey& sign : SignKey::all(params)) {
    const QuditState enc = poly_code_state(0, params, sign);
    std::vector<Eigen::VectorXcd> code;
    for (std::uint32_t b = 0; b < params.q; ++b) {
      code.push_back(poly_code_state(b, params, sign).amplitudes());
    }
    const Eigen::VectorXcd& amp = enc.amplitudes();
    double accept = 0.0;
    for (Eigen::Index w = 0; w < amp.size(); ++w) {
      const double pw = std::norm(amp[w]);
      if (pw == 0.0) continue;
      double aw = 0.0;
      for (const auto& c : code) aw += std::norm(c[w]);
      accept += pw * aw;
    }
    total += accept;
    ++count;
  }
  return total / double(count);
}

double poly_fixed_pauli_accept_average(const CodeParams& params,
                                       std::uint32_t l, std::uint32_t n) {
  // The Pauli key conjugates the attack to a global phase times itself and
  // the value is the same at every site, so site 0 with the trivial key is
  // representative; the average runs over all sign keys and logicals.
  double total = 0.0;
  std::size_t count = 0;
  const Eigen::MatrixXcd attack = gen_pauli_matrix(params.q, l, n);
  for (const SignKey& sign : SignKey::all(params)) {
    for (std::uint32_t a = 0; a < params.q; ++a) {
      QuditState state = poly_code_state(a, params, sign);
      state = apply(state, LocalOperator{{0}, attack, true});
      double accept = 0.0;
      for (std::uint32_t b = 0; b < params.q; ++b) {
        accept += std::norm(inner(poly_code_state(b, params, sign), state));
      }
      total += accept;
      ++count;
    }
  }
  return total / double(count);
}

double exact_acceptance_oracle(const Circuit& circuit,
                               const ProverStrategy& strategy,
                               const VerifierConfig& config) {
  if (config.scheme == SchemeTag::Clifford) {
    const std::size_t k = clifford_check_events(circuit);
    switch (strategy.kind) {
      case StrategyKind::Honest:
        return 1.0;
      case StrategyKind::FixedPauli: {
        if (strategy.pauli.is_identity() || strategy.attack_step >= k) {
          return 1.0;
        }
        return 1.0 - clifford_detection_probability(
                         pauli_pair_matrix(strategy.pauli));
      }
      case StrategyKind::RandomUnitary: {
        if (strategy.attack_step >= k) return 1.0;
        double reject = 0.0;
        for (const auto& p : PauliPair::non_identity()) {
          reject += clifford_detection_probability(pauli_pair_matrix(p));
        }
        reject /= 15.0;
        const double s = std::sin(strategy.theta);
        return 1.0 - s * s * reject;
      }
      case StrategyKind::NoMemory:
        return std::pow(
            clifford_fabricated_accept_probability(Eigen::Vector4cd::Unit(0)),
            double(k));
      case StrategyKind::MeasureResend:
        return std::pow(clifford_measure_resend_accept_probability(),
                        double(k));
    }
    throw InvariantError("unhandled strategy");
  }

  // Polynomial scheme: oracles cover gate-free (store and retrieve) runs.
  if (!circuit.gates.empty() && strategy.kind != StrategyKind::Honest) {
    throw ConfigError(
        "polynomial-scheme strategy oracles cover gate-free circuits only");
  }
  const double w = double(circuit.wires);
  switch (strategy.kind) {
    case StrategyKind::Honest:
      return 1.0;
    case StrategyKind::FixedPauli:
      if ((strategy.gen_x_exp == 0 && strategy.gen_z_exp == 0) ||
          strategy.attack_step >= circuit.wires) {
        return 1.0;
      }
      return poly_fixed_pauli_accept_average(config.params,
                                             strategy.gen_x_exp,
                                             strategy.gen_z_exp);
    case StrategyKind::NoMemory:
      return std::pow(poly_fabricated_accept_average(config.params), w);
    case StrategyKind::MeasureResend:
      return std::pow(poly_measure_resend_accept_average(config.params), w);
    case StrategyKind::RandomUnitary:
      throw ConfigError(
          "the random-unitary strategy is defined for the Clifford scheme");
  }
  throw InvariantError("unhandled strategy");
}

}  // namespace qpip
