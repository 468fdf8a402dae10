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

#include "qpip/groups.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <numbers>

#include "qpip/config.hpp"
#include "qpip/field.hpp"

namespace qpip {
namespace {

using std::complex_literals::operator""i;

constexpr double kPhaseEps = 1e-7;

// Canonical representative modulo global phase: scale so the first entry
// with non-negligible magnitude is positive real.
Eigen::Matrix4cd canonicalize(const Eigen::Matrix4cd& m) {
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const std::complex<double> v = m(r, c);
      if (std::abs(v) > kPhaseEps) {
        return m * (std::conj(v) / std::abs(v));
      }
    }
  }
  throw InvariantError("zero matrix cannot be canonicalized");
}

std::string matrix_key(const Eigen::Matrix4cd& m) {
  std::string key;
  key.reserve(4 * 32);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const long re = std::lround(m(r, c).real() * 1e6);
      const long im = std::lround(m(r, c).imag() * 1e6);
      key.append(reinterpret_cast<const char*>(&re), sizeof(re));
      key.append(reinterpret_cast<const char*>(&im), sizeof(im));
    }
  }
  return key;
}

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

Eigen::Matrix2cd pauli_matrix(Pauli1 p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli1::I:
      m << 1, 0, 0, 1;
      break;
    case Pauli1::X:
      m << 0, 1, 1, 0;
      break;
    case Pauli1::Y:
      m << 0, 1i, -1i, 0;
      break;
    case Pauli1::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

std::string PauliPair::name() const {
  const char* names = "IXYZ";
  return std::string{names[static_cast<int>(first)],
                     names[static_cast<int>(second)]};
}

PauliPair PauliPair::from_name(const std::string& name) {
  if (name.size() != 2) throw ConfigError("Pauli pair name must be 2 letters");
  auto parse = [](char c) {
    switch (c) {
      case 'I': return Pauli1::I;
      case 'X': return Pauli1::X;
      case 'Y': return Pauli1::Y;
      case 'Z': return Pauli1::Z;
      default: throw ConfigError("unknown Pauli letter");
    }
  };
  return {parse(name[0]), parse(name[1])};
}

std::array<PauliPair, 16> PauliPair::all() {
  std::array<PauliPair, 16> out;
  std::size_t k = 0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      out[k++] = {static_cast<Pauli1>(a), static_cast<Pauli1>(b)};
    }
  }
  return out;
}

std::array<PauliPair, 15> PauliPair::non_identity() {
  std::array<PauliPair, 15> out;
  std::size_t k = 0;
  for (const auto& p : all()) {
    if (!p.is_identity()) out[k++] = p;
  }
  return out;
}

Eigen::Matrix4cd pauli_pair_matrix(const PauliPair& p) {
  return kron2(pauli_matrix(p.first), pauli_matrix(p.second));
}

Eigen::MatrixXcd gen_pauli_matrix(std::uint32_t q, std::uint32_t l,
                                  std::uint32_t n) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(q, q);
  const double w = 2.0 * std::numbers::pi / double(q);
  for (std::uint32_t x = 0; x < q; ++x) {
    // X^l Z^n |x> = w^{n x} |x + l>
    m((x + l) % q, x) = std::polar(1.0, w * double((std::uint64_t{n} * x) % q));
  }
  return m;
}

Eigen::MatrixXcd fourier_matrix(std::uint32_t q) {
  return scaled_fourier_matrix(q, 1);
}

Eigen::MatrixXcd scaled_fourier_matrix(std::uint32_t q, std::uint32_t gamma) {
  Eigen::MatrixXcd m(q, q);
  const double w = 2.0 * std::numbers::pi / double(q);
  const double norm = 1.0 / std::sqrt(double(q));
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      const std::uint64_t e = (std::uint64_t{gamma} * a % q) * b % q;
      m(b, a) = norm * std::polar(1.0, w * double(e));
    }
  }
  return m;
}

bool fourier_conjugation_check(std::uint32_t q) {
  if (!is_prime(q)) throw ConfigError("Fourier check requires prime q");
  const Eigen::MatrixXcd f = fourier_matrix(q);
  const Eigen::MatrixXcd x = gen_pauli_matrix(q, 1, 0);
  const Eigen::MatrixXcd z = gen_pauli_matrix(q, 0, 1);
  const Eigen::MatrixXcd x_inv = gen_pauli_matrix(q, q - 1, 0);
  return (z * f - f * x).norm() < kTol && (x_inv * f - f * z).norm() < kTol;
}

CliffordTable::CliffordTable() {
  const auto t0 = std::chrono::steady_clock::now();
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Eigen::Matrix2cd s;
  s << 1, 0, 0, 1i;
  Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::Matrix4cd cnot;
  cnot << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;

  const std::array<Eigen::Matrix4cd, 5> generators = {
      kron2(h, id), kron2(id, h), kron2(s, id), kron2(id, s), cnot};

  std::deque<std::size_t> frontier;
  auto insert = [&](const Eigen::Matrix4cd& m) {
    const Eigen::Matrix4cd canon = canonicalize(m);
    const std::string key = matrix_key(canon);
    if (lookup_.count(key)) return;
    const std::size_t idx = elements_.size();
    lookup_.emplace(key, idx);
    elements_.push_back({canon, idx});
    frontier.push_back(idx);
  };

  insert(Eigen::Matrix4cd::Identity());
  // iteration cap far above the known group order, as a closure safety net
  constexpr std::size_t kCap = 200000;
  while (!frontier.empty()) {
    const Eigen::Matrix4cd m = elements_[frontier.front()].matrix;
    frontier.pop_front();
    for (const auto& g : generators) {
      insert(g * m);
      if (elements_.size() > kCap) {
        throw InvariantError("Clifford closure exceeded iteration cap");
      }
    }
  }
  build_seconds_ =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
}

const CliffordTable& CliffordTable::instance() {
  static CliffordTable table;
  return table;
}

const CliffordElement& CliffordTable::sample(RandomStream& rng) const {
  return elements_[rng.uniform_index(elements_.size())];
}

bool CliffordTable::contains(const Eigen::Matrix4cd& m) const {
  return lookup_.count(matrix_key(canonicalize(m))) > 0;
}

bool CliffordTable::closure_spot_check(std::size_t pairs,
                                       RandomStream& rng) const {
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto& a = sample(rng);
    const auto& b = sample(rng);
    if (!contains(a.matrix * b.matrix)) return false;
  }
  return true;
}

ConjugationResult conjugate(const Eigen::Matrix4cd& clifford,
                            const PauliPair& p) {
  const Eigen::Matrix4cd m =
      clifford * pauli_pair_matrix(p) * clifford.adjoint();
  for (const auto& candidate : PauliPair::all()) {
    const Eigen::Matrix4cd pm = pauli_pair_matrix(candidate);
    const std::complex<double> phase = (pm.adjoint() * m).trace() / 4.0;
    if (std::abs(std::abs(phase) - 1.0) > 1e-7) continue;
    if ((m - phase * pm).norm() < 1e-7) {
      return {candidate, phase};
    }
  }
  throw InvariantError("conjugation result is not proportional to a Pauli");
}

Eigen::Matrix4cd sample_haar4(RandomStream& rng) {
  Eigen::Matrix4cd g;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      g(r, c) = std::complex<double>(rng.normal(), rng.normal());
    }
  }
  Eigen::HouseholderQR<Eigen::Matrix4cd> qr(g);
  Eigen::Matrix4cd qmat = qr.householderQ();
  const Eigen::Matrix4cd rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < 4; ++k) {
    const std::complex<double> d = rmat(k, k);
    qmat.col(k) *= (std::abs(d) > 0 ? d / std::abs(d) : 1.0);
  }
  return qmat;
}

}  // namespace qpip
