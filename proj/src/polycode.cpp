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

#include "qpip/polycode.hpp"

#include <cmath>
#include <string>

#include "qpip/config.hpp"

namespace qpip {

CodeParams CodeParams::make(std::uint32_t q, std::uint32_t d,
                            std::uint32_t m) {
  if (!is_prime(q)) {
    throw ConfigError("code field size q=" + std::to_string(q) +
                      " is not prime");
  }
  if (m < d + 1) {
    throw ConfigError("code length m=" + std::to_string(m) +
                      " is below d+1=" + std::to_string(d + 1));
  }
  if (q <= m) {
    throw ConfigError("q=" + std::to_string(q) +
                      " too small: evaluation points 1.." + std::to_string(m) +
                      " must be distinct nonzero field elements");
  }
  CodeParams p{q, d, m};
  p.nonstandard_m = (m != 2 * d + 1);
  return p;
}

std::vector<std::uint32_t> CodeParams::eval_points() const {
  std::vector<std::uint32_t> pts(m);
  for (std::uint32_t j = 0; j < m; ++j) pts[j] = j + 1;
  return pts;
}

std::vector<std::uint32_t> CodeParams::lagrange_at_zero() const {
  PrimeField f(q);
  const auto pts = eval_points();
  std::vector<std::uint32_t> coeffs(m);
  for (std::uint32_t j = 0; j < m; ++j) {
    std::uint32_t num = 1, den = 1;
    for (std::uint32_t k = 0; k < m; ++k) {
      if (k == j) continue;
      num = f.mul(num, pts[k]);
      den = f.mul(den, f.sub(pts[k], pts[j]));
    }
    coeffs[j] = f.mul(num, f.inv(den));
  }
  return coeffs;
}

SignKey SignKey::trivial(const CodeParams& params) {
  return SignKey{std::vector<std::uint32_t>(params.m, 1)};
}

SignKey SignKey::random(const CodeParams& params, RandomStream& rng) {
  SignKey key;
  key.epsilon.resize(params.m);
  for (auto& e : key.epsilon) {
    e = rng.bernoulli(0.5) ? 1 : params.q - 1;
  }
  return key;
}

std::vector<SignKey> SignKey::all(const CodeParams& params) {
  std::vector<SignKey> keys;
  const std::uint32_t count = 1u << params.m;
  keys.reserve(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    SignKey key;
    key.epsilon.resize(params.m);
    for (std::uint32_t j = 0; j < params.m; ++j) {
      key.epsilon[j] = (mask >> j) & 1 ? params.q - 1 : 1;
    }
    keys.push_back(std::move(key));
  }
  return keys;
}

std::uint32_t poly_eval(const std::vector<std::uint32_t>& coeffs,
                        std::uint32_t point, const PrimeField& field) {
  std::uint32_t acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = field.add(field.mul(acc, point), *it % field.q());
  }
  return acc;
}

std::vector<std::uint32_t> interpolate(
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& points,
    const PrimeField& field) {
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i].first % field.q() == points[j].first % field.q()) {
        throw ConfigError("interpolate: duplicate x-coordinate " +
                          std::to_string(points[i].first));
      }
    }
  }
  std::vector<std::uint32_t> result(n, 0);
  std::vector<std::uint32_t> basis;
  for (std::size_t i = 0; i < n; ++i) {
    // Lagrange basis polynomial for node i, built coefficient by coefficient.
    basis.assign(1, 1);
    std::uint32_t denom = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      // multiply basis by (x - x_j)
      std::vector<std::uint32_t> next(basis.size() + 1, 0);
      const std::uint32_t xj = points[j].first % field.q();
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] = field.add(next[k + 1], basis[k]);
        next[k] = field.add(next[k], field.mul(basis[k], field.neg(xj)));
      }
      basis = std::move(next);
      denom = field.mul(denom, field.sub(points[i].first % field.q(), xj));
    }
    const std::uint32_t scale =
        field.mul(points[i].second % field.q(), field.inv(denom));
    for (std::size_t k = 0; k < basis.size(); ++k) {
      result[k] = field.add(result[k], field.mul(basis[k], scale));
    }
  }
  while (result.size() > 1 && result.back() == 0) result.pop_back();
  return result;
}

CodewordCheck is_codeword(const PolyCodeword& word, const CodeParams& params,
                          const SignKey& key) {
  if (word.size() != params.m) {
    throw ConfigError("codeword length does not match m");
  }
  PrimeField f(params.q);
  const auto pts = params.eval_points();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> points(params.m);
  for (std::uint32_t j = 0; j < params.m; ++j) {
    // epsilon_j in {1, q-1} is its own inverse
    points[j] = {pts[j], f.mul(key.epsilon[j], word[j] % params.q)};
  }
  const auto coeffs = interpolate(points, f);
  if (coeffs.size() > params.d + 1) return {false, 0};
  return {true, coeffs.empty() ? 0u : coeffs[0]};
}

std::vector<PolyCodeword> enumerate_codewords(const CodeParams& params,
                                              const SignKey& key,
                                              std::uint32_t logical) {
  const double count = std::pow(double(params.q), double(params.d));
  if (count > double(kMaxCodewordEnum)) {
    throw ResourceError("codeword enumeration q^d = " +
                        std::to_string(count) + " exceeds guard");
  }
  PrimeField f(params.q);
  const auto pts = params.eval_points();
  std::vector<PolyCodeword> words;
  words.reserve(static_cast<std::size_t>(count));
  // f = logical + c_1 x + ... + c_d x^d, iterating over all c in F_q^d
  std::vector<std::uint32_t> coeffs(params.d + 1, 0);
  coeffs[0] = logical % params.q;
  while (true) {
    PolyCodeword word(params.m);
    for (std::uint32_t j = 0; j < params.m; ++j) {
      word[j] = f.mul(key.epsilon[j], poly_eval(coeffs, pts[j], f));
    }
    words.push_back(std::move(word));
    std::uint32_t i = 1;
    for (; i <= params.d; ++i) {
      coeffs[i] = (coeffs[i] + 1) % params.q;
      if (coeffs[i] != 0) break;
    }
    if (params.d == 0 || i > params.d) break;
  }
  return words;
}

}  // namespace qpip
