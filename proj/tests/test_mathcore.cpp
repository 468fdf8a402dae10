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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "qpip/config.hpp"
#include "qpip/field.hpp"
#include "qpip/polycode.hpp"

using namespace qpip;

TEST_CASE("primality and field arithmetic") {
  CHECK(is_prime(2));
  CHECK(is_prime(5));
  CHECK(is_prime(7919));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));

  PrimeField f(7);
  CHECK(f.add(5, 4) == 2);
  CHECK(f.sub(2, 5) == 4);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.neg(0) == 0);
  CHECK(f.neg(3) == 4);
  CHECK(f.pow(3, 6) == 1);
  for (std::uint32_t a = 1; a < 7; ++a) {
    CHECK(f.mul(a, f.inv(a)) == 1);
  }
  CHECK_THROWS_AS(f.inv(0), InvariantError);
  CHECK_THROWS_AS(PrimeField(6), ConfigError);
}

TEST_CASE("poly_eval examples") {
  PrimeField f5(5);
  CHECK(poly_eval({2, 3}, 1, f5) == 0);
  CHECK(poly_eval({}, 3, f5) == 0);
  PrimeField f7(7);
  CHECK(poly_eval({1, 1, 1}, 3, f7) == 6);
}

TEST_CASE("interpolate examples") {
  PrimeField f5(5);
  CHECK(interpolate({{1, 1}, {2, 2}}, f5) == std::vector<std::uint32_t>{0, 1});
  CHECK(interpolate({{1, 3}, {2, 3}}, f5) == std::vector<std::uint32_t>{3});
  const auto coeffs = interpolate({{1, 1}, {2, 4}, {3, 4}}, f5);
  CHECK(coeffs.size() <= 3);
  CHECK(poly_eval(coeffs, 1, f5) == 1);
  CHECK(poly_eval(coeffs, 2, f5) == 4);
  CHECK(poly_eval(coeffs, 3, f5) == 4);
  CHECK_THROWS_AS(interpolate({{1, 1}, {1, 2}}, f5), ConfigError);
}

TEST_CASE("interpolation round trip over all small polynomials") {
  for (const std::uint32_t q : {5u, 7u}) {
    PrimeField f(q);
    for (const std::uint32_t d : {0u, 1u, 2u}) {
      // every coefficient vector of length d+1
      std::vector<std::uint32_t> coeffs(d + 1, 0);
      for (;;) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pts;
        for (std::uint32_t x = 1; x <= d + 1; ++x) {
          pts.emplace_back(x, poly_eval(coeffs, x, f));
        }
        const auto back = interpolate(pts, f);
        std::vector<std::uint32_t> trimmed = coeffs;
        while (trimmed.size() > 1 && trimmed.back() == 0) trimmed.pop_back();
        CHECK(back == trimmed);
        std::size_t j = 0;
        while (j < coeffs.size() && ++coeffs[j] == q) coeffs[j++] = 0;
        if (j == coeffs.size()) break;
      }
    }
  }
}

TEST_CASE("CodeParams validation and Lagrange coefficients") {
  CHECK_THROWS_AS(CodeParams::make(4, 1, 3), ConfigError);
  CHECK_THROWS_AS(CodeParams::make(5, 1, 5), ConfigError);  // needs q > m
  CHECK_THROWS_AS(CodeParams::make(5, 2, 2), ConfigError);  // needs m >= d+1
  const CodeParams p = CodeParams::make(5, 1, 3);
  CHECK_FALSE(p.nonstandard_m);
  CHECK(CodeParams::make(7, 1, 4).nonstandard_m);
  CHECK(p.eval_points() == std::vector<std::uint32_t>{1, 2, 3});

  const auto gamma = p.lagrange_at_zero();
  CHECK(gamma == std::vector<std::uint32_t>{3, 2, 1});
  // f(0) = sum_j gamma_j f(j) for every polynomial of degree < m
  PrimeField f(5);
  RandomStream rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint32_t> coeffs;
    for (int i = 0; i < 3; ++i) {
      coeffs.push_back(static_cast<std::uint32_t>(rng.uniform_index(5)));
    }
    std::uint32_t acc = 0;
    for (std::uint32_t j = 1; j <= 3; ++j) {
      acc = f.add(acc, f.mul(gamma[j - 1], poly_eval(coeffs, j, f)));
    }
    CHECK(acc == poly_eval(coeffs, 0, f));
  }
}

TEST_CASE("is_codeword examples with brute-force oracle") {
  const CodeParams p = CodeParams::make(5, 1, 3);
  const SignKey trivial = SignKey::trivial(p);

  auto r = is_codeword({1, 2, 3}, p, trivial);
  CHECK(r.in_code);
  CHECK(r.logical == 0);

  const SignKey mixed{{1, 4, 1}};
  r = is_codeword({1, 3, 3}, p, mixed);
  CHECK(r.in_code);
  CHECK(r.logical == 0);

  CHECK_FALSE(is_codeword({1, 2, 4}, p, trivial).in_code);
  // brute-force: no degree-<=1 polynomial matches (1,2,4)
  PrimeField f(5);
  bool matched = false;
  for (std::uint32_t a0 = 0; a0 < 5; ++a0) {
    for (std::uint32_t a1 = 0; a1 < 5; ++a1) {
      if (poly_eval({a0, a1}, 1, f) == 1 && poly_eval({a0, a1}, 2, f) == 2 &&
          poly_eval({a0, a1}, 3, f) == 4) {
        matched = true;
      }
    }
  }
  CHECK_FALSE(matched);
}

TEST_CASE("enumerate_codewords examples") {
  const CodeParams p = CodeParams::make(5, 1, 3);
  const SignKey trivial = SignKey::trivial(p);
  const auto words = enumerate_codewords(p, trivial, 0);
  CHECK(words.size() == 5);
  std::set<PolyCodeword> expected;
  PrimeField f(5);
  for (std::uint32_t c = 0; c < 5; ++c) {
    expected.insert({c, f.mul(2, c), f.mul(3, c)});
  }
  CHECK(std::set<PolyCodeword>(words.begin(), words.end()) == expected);
  for (const auto& w : words) {
    const auto chk = is_codeword(w, p, trivial);
    CHECK(chk.in_code);
    CHECK(chk.logical == 0);
  }

  const CodeParams degenerate = CodeParams::make(5, 0, 1);
  const auto single =
      enumerate_codewords(degenerate, SignKey::trivial(degenerate), 2);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == PolyCodeword{2});

  const CodeParams p3 = CodeParams::make(5, 1, 3);
  const SignKey flipped{{1, 1, 4}};
  const auto signed_words = enumerate_codewords(p3, flipped, 1);
  CHECK(signed_words.size() == 5);
  for (const auto& w : signed_words) {
    const auto chk = is_codeword(w, p3, flipped);
    CHECK(chk.in_code);
    CHECK(chk.logical == 1);
  }
}

TEST_CASE("detection radius: any single-coordinate alteration is detected") {
  const CodeParams p = CodeParams::make(5, 1, 3);
  for (const SignKey& key : SignKey::all(p)) {
    for (std::uint32_t a = 0; a < 5; ++a) {
      for (const auto& w : enumerate_codewords(p, key, a)) {
        for (std::uint32_t j = 0; j < 3; ++j) {
          for (std::uint32_t delta = 1; delta < 5; ++delta) {
            PolyCodeword altered = w;
            altered[j] = (altered[j] + delta) % 5;
            CHECK_FALSE(is_codeword(altered, p, key).in_code);
          }
        }
      }
    }
  }
}

TEST_CASE("sign-key map is a bijection between plain and signed code") {
  const CodeParams p = CodeParams::make(5, 1, 3);
  PrimeField f(5);
  for (const SignKey& key : SignKey::all(p)) {
    for (std::uint32_t a = 0; a < 5; ++a) {
      const auto plain = enumerate_codewords(p, SignKey::trivial(p), a);
      const auto stamped = enumerate_codewords(p, key, a);
      std::set<PolyCodeword> image;
      for (const auto& w : plain) {
        PolyCodeword mapped(w.size());
        for (std::size_t j = 0; j < w.size(); ++j) {
          mapped[j] = f.mul(key.epsilon[j], w[j]);
        }
        image.insert(mapped);
      }
      CHECK(image == std::set<PolyCodeword>(stamped.begin(), stamped.end()));
    }
  }
}

TEST_CASE("codeword enumeration guard") {
  // q^d = 101^3 exceeds the desk-scale guard
  const CodeParams big = CodeParams::make(101, 3, 7);
  CHECK_THROWS_AS(enumerate_codewords(big, SignKey::trivial(big), 0),
                  ResourceError);
}
