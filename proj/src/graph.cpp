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

#include "qpip/graph.hpp"

#include <algorithm>
#include <numeric>

#include "qpip/config.hpp"
#include "qpip/field.hpp"

namespace qpip {
namespace {

constexpr std::size_t kMaxVertices = 12;

bool extend(const Graph& g1, const Graph& g2, std::vector<std::size_t>& map,
            std::vector<bool>& used, std::size_t next) {
  const std::size_t n = g1.size();
  if (next == n) return true;
  for (std::size_t cand = 0; cand < n; ++cand) {
    if (used[cand]) continue;
    if (g1.degree(next) != g2.degree(cand)) continue;
    bool ok = true;
    for (std::size_t prev = 0; prev < next; ++prev) {
      if (g1.has_edge(next, prev) != g2.has_edge(cand, map[prev])) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    map[next] = cand;
    used[cand] = true;
    if (extend(g1, g2, map, used, next + 1)) return true;
    used[cand] = false;
  }
  return false;
}

std::vector<std::size_t> random_permutation(std::size_t n, RandomStream& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.uniform_index(i)]);
  }
  return perm;
}

}  // namespace

Graph Graph::from_edges(
    std::size_t n,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  if (n > kMaxVertices) {
    throw ConfigError("graphs are limited to 12 vertices");
  }
  Graph g;
  g.n_ = n;
  g.adj_.assign(n, std::vector<bool>(n, false));
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n || u == v) {
      throw ConfigError("edge endpoint out of range or self-loop");
    }
    g.adj_[u][v] = true;
    g.adj_[v][u] = true;
  }
  return g;
}

std::size_t Graph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (std::size_t u = 0; u < n_; ++u) d += adj_[v][u] ? 1 : 0;
  return d;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (std::size_t v = 0; v < n_; ++v) total += degree(v);
  return total / 2;
}

Graph Graph::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != n_) throw ConfigError("permutation size mismatch");
  Graph g;
  g.n_ = n_;
  g.adj_.assign(n_, std::vector<bool>(n_, false));
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = 0; v < n_; ++v) {
      if (adj_[u][v]) g.adj_[perm[u]][perm[v]] = true;
    }
  }
  return g;
}

std::optional<std::vector<std::size_t>> find_isomorphism(const Graph& g1,
                                                         const Graph& g2) {
  if (g1.size() != g2.size() || g1.edge_count() != g2.edge_count()) {
    return std::nullopt;
  }
  std::vector<std::size_t> map(g1.size(), 0);
  std::vector<bool> used(g1.size(), false);
  if (extend(g1, g2, map, used, 0)) return map;
  return std::nullopt;
}

bool check_bijection(const Graph& g1, const Graph& g2,
                     const std::vector<std::size_t>& perm) {
  if (g1.size() != g2.size() || perm.size() != g1.size()) return false;
  std::vector<bool> seen(perm.size(), false);
  for (const std::size_t p : perm) {
    if (p >= perm.size() || seen[p]) return false;
    seen[p] = true;
  }
  for (std::size_t u = 0; u < g1.size(); ++u) {
    for (std::size_t v = u + 1; v < g1.size(); ++v) {
      if (g1.has_edge(u, v) != g2.has_edge(perm[u], perm[v])) return false;
    }
  }
  return true;
}

GIResult run_gi_protocol(const Graph& g1, const Graph& g2, GIMerlin merlin,
                         std::size_t rounds, RandomStream& rng) {
  GIResult result{true, {}};
  result.round_success.reserve(rounds);
  for (std::size_t r = 0; r < rounds; ++r) {
    const std::size_t pick = rng.uniform_index(2);
    const Graph& chosen = (pick == 0) ? g1 : g2;
    const Graph challenge = chosen.permuted(random_permutation(chosen.size(), rng));
    // Brute-force identification is the best either responder can do. On a
    // non-isomorphic pair it is always right. On an isomorphic pair the
    // challenge matches both graphs, the rule degenerates to a fixed guess,
    // and no strategy can do better because the two challenge distributions
    // are identical.
    (void)merlin;
    const std::size_t answer =
        find_isomorphism(challenge, g1).has_value() ? 0 : 1;
    const bool success = (answer == pick);
    result.round_success.push_back(success);
    if (!success) result.convinced = false;
  }
  return result;
}

bool run_gi_isomorphic_direction(const Graph& g1, const Graph& g2) {
  const auto perm = find_isomorphism(g1, g2);
  if (!perm) return false;
  return check_bijection(g1, g2, *perm);
}

bool verify_factoring(std::uint64_t n,
                      const std::vector<std::uint64_t>& factors) {
  if (n < 2 || factors.empty()) return false;
  std::uint64_t product = 1;
  for (const std::uint64_t f : factors) {
    if (!is_prime(f)) return false;
    if (product > n / f + 1) return false;  // overflow guard at desk scale
    product *= f;
    if (product > n) return false;
  }
  return product == n;
}

}  // namespace qpip
