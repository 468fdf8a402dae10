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

#include "qpip/qas.hpp"

#include <cmath>

#include "qpip/config.hpp"

namespace qpip {
namespace {

SubsystemLayout qubit_pair_layout() {
  return SubsystemLayout{{2, 2}, {"data", "check"}};
}

SubsystemLayout block_layout(const CodeParams& params) {
  SubsystemLayout layout;
  layout.dims.assign(params.m, params.q);
  for (std::uint32_t j = 0; j < params.m; ++j) {
    layout.labels.push_back("c" + std::to_string(j + 1));
  }
  return layout;
}

// check qubit = least significant of the two; |data,check> index = 2*d + c
double check_zero_weight(const Eigen::Vector4cd& v) {
  return std::norm(v[0]) + std::norm(v[2]);
}
double check_one_weight(const Eigen::Vector4cd& v) {
  return std::norm(v[1]) + std::norm(v[3]);
}

}  // namespace

CliffordAuthKey CliffordAuthKey::identity() {
  return {Eigen::Matrix4cd::Identity(), 0};
}

CliffordAuthKey CliffordAuthKey::sample(RandomStream& rng) {
  const auto& e = CliffordTable::instance().sample(rng);
  return {e.matrix, static_cast<long>(e.index)};
}

CliffordAuthKey CliffordAuthKey::sample_haar(RandomStream& rng) {
  return {sample_haar4(rng), -1};
}

QuditState clifford_encode(const QuditState& data_qubit,
                           const CliffordAuthKey& key) {
  if (data_qubit.layout().dims != std::vector<std::uint32_t>{2}) {
    throw ConfigError("clifford_encode expects a single qubit");
  }
  const QuditState check =
      QuditState::basis(SubsystemLayout{{2}, {"check"}}, {0});
  QuditState block = embed_product({data_qubit, check});
  return apply(block, LocalOperator{{0, 1}, key.unitary, true});
}

CliffordVerifyResult clifford_decode_verify(const QuditState& block,
                                            const CliffordAuthKey& key,
                                            RandomStream& rng) {
  if (block.layout().dims != std::vector<std::uint32_t>{2, 2}) {
    throw ConfigError("clifford_decode_verify expects two qubits");
  }
  const QuditState decoded =
      apply(block, LocalOperator{{0, 1}, key.unitary.adjoint(), true});
  const Eigen::Vector4cd v = decoded.amplitudes();
  const double p0 = check_zero_weight(v);
  auto [outcome, post] = measure_site(decoded, 1, rng);
  const QuditState data = drop_site(post, 1, outcome);
  return {outcome == 0, data, p0};
}

double clifford_detection_probability(const Eigen::Matrix4cd& attack,
                                      const Eigen::Vector2cd& data) {
  const auto& table = CliffordTable::instance();
  Eigen::Vector4cd psi;
  psi << data[0], 0.0, data[1], 0.0;  // |data> x |0>
  double reject = 0.0;
  double kept = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Eigen::Matrix4cd& c = table.at(i).matrix;
    const Eigen::Vector4cd v = c.adjoint() * (attack * (c * psi));
    reject += check_one_weight(v);
    kept += v.squaredNorm();
  }
  if (kept < kTol) {
    throw InvariantError("attack annihilates the encoded state");
  }
  return reject / kept;
}

double clifford_fabricated_accept_probability(
    const Eigen::Vector4cd& fabricated) {
  const auto& table = CliffordTable::instance();
  double accept = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Eigen::Vector4cd v = table.at(i).matrix.adjoint() * fabricated;
    accept += check_zero_weight(v);
  }
  return accept / double(table.size());
}

double clifford_measure_resend_accept_probability(
    const Eigen::Vector2cd& data) {
  const auto& table = CliffordTable::instance();
  Eigen::Vector4cd psi;
  psi << data[0], 0.0, data[1], 0.0;
  double accept = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Eigen::Matrix4cd& c = table.at(i).matrix;
    const Eigen::Vector4cd s = c * psi;
    for (int b = 0; b < 4; ++b) {
      const double pb = std::norm(s[b]);
      if (pb == 0.0) continue;
      const Eigen::Vector4cd d = c.adjoint() * Eigen::Vector4cd::Unit(b);
      accept += pb * check_zero_weight(d);
    }
  }
  return accept / double(table.size());
}

Eigen::Matrix4cd clifford_key_average_density(const Eigen::Vector2cd& data) {
  const auto& table = CliffordTable::instance();
  Eigen::Vector4cd psi;
  psi << data[0], 0.0, data[1], 0.0;
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Eigen::Vector4cd v = table.at(i).matrix * psi;
    rho += v * v.adjoint();
  }
  return rho / double(table.size());
}

PolyAuthKey PolyAuthKey::trivial(const CodeParams& params) {
  return {SignKey::trivial(params), std::vector<std::uint32_t>(params.m, 0),
          std::vector<std::uint32_t>(params.m, 0)};
}

PolyAuthKey PolyAuthKey::random(const CodeParams& params, RandomStream& rng) {
  return random_with_sign(params, SignKey::random(params, rng), rng);
}

PolyAuthKey PolyAuthKey::random_with_sign(const CodeParams& params,
                                          SignKey sign, RandomStream& rng) {
  PolyAuthKey key;
  key.sign = std::move(sign);
  key.x.resize(params.m);
  key.z.resize(params.m);
  for (std::uint32_t j = 0; j < params.m; ++j) {
    key.x[j] = static_cast<std::uint32_t>(rng.uniform_index(params.q));
    key.z[j] = static_cast<std::uint32_t>(rng.uniform_index(params.q));
  }
  return key;
}

QuditState poly_code_state(std::uint32_t logical, const CodeParams& params,
                           const SignKey& sign) {
  const auto words = enumerate_codewords(params, sign, logical);
  SubsystemLayout layout = block_layout(params);
  Eigen::VectorXcd amp =
      Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  const double a = 1.0 / std::sqrt(double(words.size()));
  const QuditState zero = QuditState::basis(layout, PolyCodeword(params.m, 0));
  for (const auto& w : words) {
    amp[static_cast<Eigen::Index>(zero.index_of(w))] = a;
  }
  return QuditState::from_amplitudes(std::move(layout), std::move(amp));
}

QuditState poly_encode(std::uint32_t logical, const CodeParams& params,
                       const PolyAuthKey& key) {
  QuditState state = poly_code_state(logical, params, key.sign);
  for (std::uint32_t j = 0; j < params.m; ++j) {
    if (key.x[j] == 0 && key.z[j] == 0) continue;
    state = apply(state, LocalOperator{{j},
                                       gen_pauli_matrix(params.q, key.x[j],
                                                        key.z[j]),
                                       true});
  }
  return state;
}

PolyVerifyResult poly_verify(const QuditState& block, const CodeParams& params,
                             const PolyAuthKey& key) {
  if (block.layout().dims !=
      std::vector<std::uint32_t>(params.m, params.q)) {
    throw ConfigError("poly_verify expects an m-qudit block");
  }
  QuditState state = block;
  for (std::uint32_t j = 0; j < params.m; ++j) {
    if (key.x[j] == 0 && key.z[j] == 0) continue;
    state = apply(
        state,
        LocalOperator{
            {j}, gen_pauli_matrix(params.q, key.x[j], key.z[j]).adjoint(),
            true});
  }
  PolyVerifyResult result{0.0, {}};
  for (std::uint32_t b = 0; b < params.q; ++b) {
    const QuditState code = poly_code_state(b, params, key.sign);
    const double w = std::norm(inner(code, state));
    result.accept_probability += w;
    if (w > 0.0) result.logical_distribution[b] = w;
  }
  if (result.accept_probability > 0.0) {
    for (auto& [b, w] : result.logical_distribution) {
      w /= result.accept_probability;
    }
  }
  return result;
}

PolyAuthKey gate_xq(const CodeParams& params, const PolyAuthKey& key) {
  PrimeField f(params.q);
  PolyAuthKey out = key;
  for (std::uint32_t j = 0; j < params.m; ++j) {
    out.x[j] = f.sub(key.x[j], key.sign.epsilon[j]);
  }
  return out;
}

PolyAuthKey fourier_key_update(const CodeParams& params,
                               const PolyAuthKey& key) {
  PrimeField f(params.q);
  const auto gamma = params.lagrange_at_zero();
  PolyAuthKey out = key;
  for (std::uint32_t j = 0; j < params.m; ++j) {
    out.x[j] = f.neg(f.mul(key.z[j], f.inv(gamma[j])));
    out.z[j] = f.mul(gamma[j], key.x[j]);
  }
  return out;
}

std::vector<Eigen::MatrixXcd> transversal_fourier_ops(
    const CodeParams& params) {
  const auto gamma = params.lagrange_at_zero();
  std::vector<Eigen::MatrixXcd> ops;
  ops.reserve(params.m);
  for (std::uint32_t j = 0; j < params.m; ++j) {
    ops.push_back(scaled_fourier_matrix(params.q, gamma[j]));
  }
  return ops;
}

std::pair<QuditState, PolyAuthKey> gate_fourier(const QuditState& block,
                                                const CodeParams& params,
                                                const PolyAuthKey& key) {
  const auto ops = transversal_fourier_ops(params);
  QuditState state = block;
  for (std::uint32_t j = 0; j < params.m; ++j) {
    state = apply(state, LocalOperator{{j}, ops[j], true});
  }
  return {std::move(state), fourier_key_update(params, key)};
}

std::map<std::string, double> effective_attack_twirl(
    const Eigen::MatrixXcd& attack, SchemeTag scheme, const CodeParams& params,
    std::size_t attacked_site, std::size_t trials, RandomStream& rng) {
  if (trials < 1) throw ConfigError("twirl needs at least one trial");
  std::map<std::string, double> counts;

  auto sample_label =
      [&](const std::vector<std::pair<std::string, double>>& weights) {
        double total = 0.0;
        for (const auto& [label, w] : weights) total += w;
        double r = rng.uniform_real() * total;
        for (const auto& [label, w] : weights) {
          if (r < w) return label;
          r -= w;
        }
        return weights.back().first;
      };

  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<std::pair<std::string, double>> weights;
    if (scheme == SchemeTag::Clifford) {
      if (attack.rows() != 4) {
        throw ConfigError("Clifford twirl expects a two-qubit attack");
      }
      const Eigen::Matrix4cd c = CliffordAuthKey::sample(rng).unitary;
      const Eigen::Matrix4cd m = c.adjoint() * attack * c;
      for (const auto& p : PauliPair::all()) {
        const double w =
            std::norm((pauli_pair_matrix(p).adjoint() * m).trace() / 4.0);
        if (w > 1e-15) weights.emplace_back(p.name(), w);
      }
    } else {
      if (attack.rows() != params.q) {
        throw ConfigError("polynomial twirl expects a single-site attack");
      }
      const std::uint32_t x =
          static_cast<std::uint32_t>(rng.uniform_index(params.q));
      const std::uint32_t z =
          static_cast<std::uint32_t>(rng.uniform_index(params.q));
      const Eigen::MatrixXcd pk = gen_pauli_matrix(params.q, x, z);
      const Eigen::MatrixXcd m = pk.adjoint() * attack * pk;
      for (std::uint32_t l = 0; l < params.q; ++l) {
        for (std::uint32_t n = 0; n < params.q; ++n) {
          const double w = std::norm(
              (gen_pauli_matrix(params.q, l, n).adjoint() * m).trace() /
              double(params.q));
          if (w > 1e-15) {
            weights.emplace_back("X^" + std::to_string(l) + "Z^" +
                                     std::to_string(n) + "@" +
                                     std::to_string(attacked_site),
                                 w);
          }
        }
      }
    }
    counts[sample_label(weights)] += 1.0;
  }
  for (auto& [label, c] : counts) c /= double(trials);
  return counts;
}

}  // namespace qpip
