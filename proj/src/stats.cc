// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "msplab/stats.h"

#include <cmath>
#include <cstdlib>

#include "msplab/errors.h"

namespace msplab {

double HoeffdingHalfWidth(std::uint64_t n, double level) {
  if (n == 0) return 1.0;
  if (!(level > 0 && level < 1)) throw ParameterError("level must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / (1.0 - level)) / (2.0 * static_cast<double>(n)));
}

Interval WilsonInterval(std::uint64_t successes, std::uint64_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
  const double half =
      z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
  // The true endpoints are exactly 0 and 1 at the extremes; rounding is not.
  const double lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  const double hi = successes == n ? 1.0 : std::min(1.0, centre + half);
  return {lo, hi};
}

unsigned DefaultThreads() {
  if (const char* env = std::getenv("MSPLAB_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return static_cast<unsigned>(t);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace msplab
