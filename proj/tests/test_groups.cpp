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

#include <cmath>
#include <map>

#include "doctest.h"
#include "qpip/config.hpp"
#include "qpip/groups.hpp"
#include "qpip/qsim.hpp"

using namespace qpip;

TEST_CASE("qubit Pauli matrices and the sigma_y sign convention") {
  const Eigen::Matrix2cd x = pauli_matrix(Pauli1::X);
  const Eigen::Matrix2cd y = pauli_matrix(Pauli1::Y);
  const Eigen::Matrix2cd z = pauli_matrix(Pauli1::Z);
  CHECK(std::abs(y(0, 1) - Complex(0, 1)) < kTol);
  CHECK(std::abs(y(1, 0) - Complex(0, -1)) < kTol);
  // under this convention sigma_x sigma_z = i sigma_y
  CHECK((x * z - Complex(0, 1) * y).norm() < kTol);
  for (const auto p : {Pauli1::X, Pauli1::Y, Pauli1::Z}) {
    const Eigen::Matrix2cd m = pauli_matrix(p);
    CHECK((m * m - Eigen::Matrix2cd::Identity()).norm() < kTol);
    CHECK((m - m.adjoint()).norm() < kTol);
  }
}

TEST_CASE("Pauli pair labels") {
  CHECK(PauliPair::all().size() == 16);
  CHECK(PauliPair::non_identity().size() == 15);
  for (const auto& p : PauliPair::all()) {
    const PauliPair back = PauliPair::from_name(p.name());
    CHECK(back.first == p.first);
    CHECK(back.second == p.second);
  }
  CHECK_THROWS_AS(PauliPair::from_name("Q"), ConfigError);
}

TEST_CASE("generalized Pauli action") {
  const std::uint32_t q = 5;
  const Eigen::MatrixXcd x = gen_pauli_matrix(q, 1, 0);
  const Eigen::MatrixXcd z = gen_pauli_matrix(q, 0, 1);
  // X_q|a> = |a+1>, Z_q|a> = w^a |a>
  for (std::uint32_t a = 0; a < q; ++a) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(q);
    e[a] = 1.0;
    const Eigen::VectorXcd xs = x * e;
    CHECK(std::abs(xs[(a + 1) % q] - 1.0) < kTol);
    const Eigen::VectorXcd zs = z * e;
    CHECK(std::abs(zs[a] - std::polar(1.0, 2 * M_PI * a / q)) < kTol);
  }
  // composition convention: gen(l, n) = X^l Z^n
  const Eigen::MatrixXcd xz = gen_pauli_matrix(q, 2, 3);
  CHECK((xz - x * x * z * z * z).norm() < kTol);
  // unitarity and order q
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(q, q);
  for (std::uint32_t k = 0; k < q; ++k) acc = acc * xz;
  CHECK((xz * xz.adjoint() - Eigen::MatrixXcd::Identity(q, q)).norm() < kTol);
  CHECK((acc - std::polar(1.0, std::arg(acc(0, 0))) *
                   Eigen::MatrixXcd::Identity(q, q))
            .norm() < kTol);
}

TEST_CASE("Fourier conjugation identities") {
  CHECK(fourier_conjugation_check(5));
  CHECK(fourier_conjugation_check(7));
  CHECK_THROWS_AS(fourier_conjugation_check(6), ConfigError);

  const Eigen::MatrixXcd f = fourier_matrix(5);
  CHECK((f * f.adjoint() - Eigen::MatrixXcd::Identity(5, 5)).norm() < kTol);
  CHECK((scaled_fourier_matrix(5, 1) - f).norm() < kTol);
  for (std::uint32_t g = 1; g < 5; ++g) {
    const Eigen::MatrixXcd sf = scaled_fourier_matrix(5, g);
    CHECK((sf * sf.adjoint() - Eigen::MatrixXcd::Identity(5, 5)).norm() <
          kTol);
  }
}

TEST_CASE("Clifford table size, closure, and timing") {
  const auto& table = CliffordTable::instance();
  CHECK(table.size() == 11520);
  CHECK(table.build_seconds() < 30.0);
  RandomStream rng(17);
  CHECK(table.closure_spot_check(300, rng));
  // generators are present
  Eigen::Matrix4cd cnot;
  cnot << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
  CHECK(table.contains(cnot));
  // membership is modulo global phase
  CHECK(table.contains(Complex(0, 1) * cnot));
}

TEST_CASE("uniform sampling from the table (chi-square)") {
  const auto& table = CliffordTable::instance();
  RandomStream rng(23);
  const std::size_t n = 10 * table.size();
  std::vector<std::size_t> counts(table.size(), 0);
  for (std::size_t i = 0; i < n; ++i) ++counts[table.sample(rng).index];
  const double expected = double(n) / double(table.size());
  double chi2 = 0.0;
  for (const std::size_t c : counts) {
    const double d = double(c) - expected;
    chi2 += d * d / expected;
  }
  // df = 11519, sd = sqrt(2 df) ~ 152
  CHECK(std::abs(chi2 - 11519.0) < 5.0 * 152.0);
}

TEST_CASE("conjugation maps Paulis to Paulis with unit phase") {
  const auto& table = CliffordTable::instance();
  RandomStream rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const auto& c = table.sample(rng);
    const auto paulis = PauliPair::non_identity();
    const PauliPair p = paulis[rng.uniform_index(paulis.size())];
    const ConjugationResult r = conjugate(c.matrix, p);
    CHECK(std::abs(std::abs(r.phase) - 1.0) < 1e-9);
    CHECK_FALSE(r.pauli.is_identity());
  }
  // known identity: CNOT (X x I) CNOT = X x X (control is the first qubit)
  Eigen::Matrix4cd cnot;
  cnot << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
  const ConjugationResult r = conjugate(cnot, {Pauli1::X, Pauli1::I});
  CHECK(r.pauli.name() == "XX");
  CHECK(std::abs(r.phase - 1.0) < 1e-9);
}

TEST_CASE("conjugation orbit of a non-identity Pauli is uniform") {
  const auto& table = CliffordTable::instance();
  std::map<std::string, std::size_t> counts;
  for (std::size_t i = 0; i < table.size(); ++i) {
    counts[conjugate(table.at(i).matrix, {Pauli1::Z, Pauli1::Z}).pauli.name()]++;
  }
  CHECK(counts.size() == 15);
  for (const auto& [name, c] : counts) {
    CHECK(c == 11520 / 15);
  }
}

TEST_CASE("Haar sampling produces unitaries") {
  RandomStream rng(31);
  for (int i = 0; i < 10; ++i) {
    const Eigen::Matrix4cd u = sample_haar4(rng);
    CHECK((u * u.adjoint() - Eigen::Matrix4cd::Identity()).norm() < 1e-9);
  }
}
