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
#include <random>

namespace qpip {

/// Seeded random stream. Every trial gets its own substream derived from the
/// master seed and the trial index, so results do not depend on how trials
/// are scheduled across threads.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// Deterministic child stream for (master seed, index).
  static RandomStream substream(std::uint64_t master_seed, std::uint64_t index);

  std::uint64_t next_u64();
  /// Uniform in [0, n).
  std::size_t uniform_index(std::size_t n);
  /// Uniform in [0, 1).
  double uniform_real();
  double normal();
  bool bernoulli(double p);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qpip
