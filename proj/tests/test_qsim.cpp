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

#include "doctest.h"
#include "qpip/config.hpp"
#include "qpip/qsim.hpp"

using namespace qpip;

namespace {

SubsystemLayout two_qubits() { return {{2, 2}, {"a", "b"}}; }

Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Eigen::Matrix4cd cnot() {
  Eigen::Matrix4cd m;
  m << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
  return m;
}

}  // namespace

TEST_CASE("basis states and index arithmetic") {
  const QuditState s = QuditState::basis({{2, 5}, {"q", "f"}}, {1, 3});
  CHECK(s.layout().total_dim() == 10);
  CHECK(s.index_of({1, 3}) == 8);  // site 0 most significant
  CHECK(std::abs(s.amplitudes()[8] - 1.0) < kTol);
}

TEST_CASE("state dimension guard") {
  SubsystemLayout huge;
  huge.dims.assign(23, 2);
  huge.labels.assign(23, "q");
  CHECK_THROWS_AS(QuditState::basis(huge, std::vector<std::uint32_t>(23, 0)),
                  ResourceError);
}

TEST_CASE("apply preserves norm and rejects non-unitary claims") {
  const QuditState s = QuditState::basis(two_qubits(), {0, 0});
  const QuditState h = apply(s, LocalOperator{{0}, hadamard(), true});
  CHECK(std::abs(h.norm() - 1.0) < kTol);

  Eigen::Matrix2cd broken = hadamard();
  broken(0, 0) = 2.0;
  CHECK_THROWS_AS(apply(s, LocalOperator{{0}, broken, true}), InvariantError);
}

TEST_CASE("first listed site is the most significant operator digit") {
  // CNOT with control on site 0: |10> -> |11>
  QuditState s = QuditState::basis(two_qubits(), {1, 0});
  s = apply(s, LocalOperator{{0, 1}, cnot(), true});
  CHECK(std::abs(s.amplitudes()[s.index_of({1, 1})] - 1.0) < kTol);

  // Reversed site list flips the roles: control on site 1
  QuditState t = QuditState::basis(two_qubits(), {0, 1});
  t = apply(t, LocalOperator{{1, 0}, cnot(), true});
  CHECK(std::abs(t.amplitudes()[t.index_of({1, 1})] - 1.0) < kTol);
}

TEST_CASE("operator application is local") {
  QuditState s = QuditState::basis(two_qubits(), {0, 1});
  s = apply(s, LocalOperator{{0}, hadamard(), true});
  // site 1 stays |1>: no weight on |00> or |10>
  CHECK(std::abs(s.amplitudes()[s.index_of({0, 0})]) < kTol);
  CHECK(std::abs(s.amplitudes()[s.index_of({1, 0})]) < kTol);
}

TEST_CASE("apply_contraction renormalizes and reports the kept weight") {
  QuditState s = QuditState::basis(two_qubits(), {0, 0});
  s = apply(s, LocalOperator{{0}, hadamard(), true});
  Eigen::Matrix2cd keep0 = Eigen::Matrix2cd::Zero();
  keep0(0, 0) = 1.0;
  const auto [post, weight] =
      apply_contraction(s, LocalOperator{{0}, keep0, false});
  CHECK(std::abs(weight - 0.5) < kTol);
  CHECK(std::abs(post.norm() - 1.0) < kTol);
  CHECK(std::abs(std::abs(post.amplitudes()[0]) - 1.0) < kTol);
}

TEST_CASE("projective measurement is complete and consistent") {
  QuditState s = QuditState::basis(two_qubits(), {0, 0});
  s = apply(s, LocalOperator{{0}, hadamard(), true});

  Eigen::VectorXcd zero(2), one(2);
  zero << 1, 0;
  one << 0, 1;
  const double w0 = projection_weight(s, Projector{{0}, {zero}});
  const double w1 = projection_weight(s, Projector{{0}, {one}});
  CHECK(std::abs(w0 + w1 - 1.0) < kTol);
  CHECK(std::abs(w0 - 0.5) < kTol);

  RandomStream rng(3);
  const MeasureResult r = measure_projector(s, Projector{{0}, {zero}}, rng);
  CHECK(std::abs(r.probability - 0.5) < kTol);
  CHECK(std::abs(r.post_state.norm() - 1.0) < kTol);
}

TEST_CASE("measure_site collapses and drop_site removes the register") {
  QuditState s = QuditState::basis(two_qubits(), {1, 0});
  RandomStream rng(5);
  const auto [outcome, post] = measure_site(s, 0, rng);
  CHECK(outcome == 1);
  const QuditState reduced = drop_site(post, 0, 1);
  CHECK(reduced.layout().dims == std::vector<std::uint32_t>{2});
  CHECK(std::abs(reduced.amplitudes()[0] - 1.0) < kTol);

  // dropping a site that still has residual weight elsewhere fails
  QuditState plus = apply(QuditState::basis(two_qubits(), {0, 0}),
                          LocalOperator{{0}, hadamard(), true});
  CHECK_THROWS_AS(drop_site(plus, 0, 0), InvariantError);
}

TEST_CASE("fidelity and inner products") {
  const QuditState a = QuditState::basis(two_qubits(), {0, 1});
  const QuditState b = QuditState::basis(two_qubits(), {1, 0});
  CHECK(std::abs(fidelity(a, a) - 1.0) < kTol);
  CHECK(std::abs(fidelity(a, b)) < kTol);
  const QuditState h = apply(a, LocalOperator{{0}, hadamard(), true});
  CHECK(std::abs(fidelity(a, h) - 0.5) < kTol);
  CHECK(std::abs(inner(a, h) - Complex(1.0 / std::sqrt(2.0), 0)) < kTol);
}

TEST_CASE("embed_product concatenates layouts in order") {
  const QuditState a = QuditState::basis({{2}, {"a"}}, {1});
  const QuditState b = QuditState::basis({{5}, {"b"}}, {2});
  const QuditState ab = embed_product({a, b});
  CHECK(ab.layout().dims == std::vector<std::uint32_t>{2, 5});
  CHECK(std::abs(ab.amplitudes()[ab.index_of({1, 2})] - 1.0) < kTol);
}

TEST_CASE("dump_json lists only non-negligible amplitudes") {
  const QuditState s = QuditState::basis(two_qubits(), {1, 1});
  const std::string dump = s.dump_json();
  CHECK(dump.find("3") != std::string::npos);
}
