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
#include <utility>
#include <vector>

#include "qpip/rng.hpp"

namespace qpip {

/// Simple undirected graph on at most 12 vertices, small enough for
/// brute-force isomorphism search.
class Graph {
 public:
  static Graph from_edges(
      std::size_t n,
      const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t size() const { return n_; }
  bool has_edge(std::size_t u, std::size_t v) const { return adj_[u][v]; }
  std::size_t degree(std::size_t v) const;
  std::size_t edge_count() const;

  /// Image graph under the vertex relabeling v -> perm[v].
  Graph permuted(const std::vector<std::size_t>& perm) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<bool>> adj_;
};

/// Backtracking search for a vertex bijection g1 -> g2 preserving edges both
/// ways; nullopt when the graphs are not isomorphic.
std::optional<std::vector<std::size_t>> find_isomorphism(const Graph& g1,
                                                         const Graph& g2);

/// Edge-preservation check for a claimed bijection (the verifier-side test
/// in the isomorphic direction).
bool check_bijection(const Graph& g1, const Graph& g2,
                     const std::vector<std::size_t>& perm);

enum class GIMerlin { Honest, Cheating };

struct GIResult {
  bool convinced;
  std::vector<bool> round_success;
};

/// Non-isomorphism test: each round the challenger permutes one of the two
/// graphs at random and asks which one it came from. Honest responders on a
/// non-isomorphic pair always answer correctly; on an isomorphic pair no
/// strategy beats 1/2 per round.
GIResult run_gi_protocol(const Graph& g1, const Graph& g2, GIMerlin merlin,
                         std::size_t rounds, RandomStream& rng);

/// Isomorphic direction: the prover ships a bijection, the verifier checks
/// edge preservation. True iff a valid bijection exists and checks out.
bool run_gi_isomorphic_direction(const Graph& g1, const Graph& g2);

/// True iff every claimed factor is prime and the product equals n.
bool verify_factoring(std::uint64_t n,
                      const std::vector<std::uint64_t>& factors);

}  // namespace qpip
