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

#include <cmath>
#include <cstddef>

#include "qpip/config.hpp"

namespace qpip {

struct WilsonInterval {
  double low;
  double high;

  bool contains(double p) const { return p >= low && p <= high; }
};

/// Wilson score interval for a binomial proportion. Valid near 0 and 1,
/// where most acceptance rates in this codebase live.
inline WilsonInterval wilson_interval(std::size_t successes, std::size_t n,
                                      double z = 1.959963984540054) {
  if (n == 0) throw ConfigError("Wilson interval needs n >= 1");
  const double nn = double(n);
  const double p = double(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = p + z2 / (2.0 * nn);
  const double spread =
      z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  // the endpoints are exactly 0 and 1 at the boundaries; avoid FP residue
  const double low = successes == 0 ? 0.0 : (center - spread) / denom;
  const double high = successes == n ? 1.0 : (center + spread) / denom;
  return {low, high};
}

}  // namespace qpip
