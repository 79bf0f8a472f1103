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

#include "msplab/recurrence.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "msplab/errors.h"

namespace msplab {

RecurrenceParams RecurrenceParams::For(std::int64_t big_n, long double eps) {
  if (!(eps > 0 && eps < 0.5L)) throw ParameterError("eps must lie in (0, 1/2)");
  if (big_n < 1) throw ParameterError("N must be positive");
  RecurrenceParams p;
  p.eps = eps;
  p.a = eps / 3;
  const long double n = static_cast<long double>(big_n);
  p.c = std::pow(n, p.a);
  p.b = (4 / p.a) * std::pow(n / p.c, 0.5L + p.a);
  return p;
}

RecurrenceReport RecurrenceCheck(std::int64_t big_n, long double eps) {
  RecurrenceReport r;
  r.big_n = big_n;
  r.params = RecurrenceParams::For(big_n, eps);
  const long double a = r.params.a;
  const long double b = r.params.b;
  const long double c = r.params.c;
  const long double rhs_const = std::log1p(a) + std::log(b) + std::log(c) -
                                std::log(2.0L);
  const long double lhs_const = std::log(2.0L) - std::log(a) - std::log(b);
  r.worst_log_margin = std::numeric_limits<long double>::infinity();
  // n = 1 has a zero left side and always holds.
  for (std::int64_t n = 2; n <= big_n; ++n) {
    const long double ln = std::log(static_cast<long double>(n));
    const long double lhs =
        lhs_const + std::log(static_cast<long double>(n - 1)) - (1 + a) * ln;
    const long double rhs = rhs_const - (1 - a) * ln;
    const long double margin = rhs - lhs;
    r.worst_log_margin = std::min(r.worst_log_margin, margin);
    if (!(margin > 0) && !r.first_violation) {
      r.condition_holds = false;
      r.first_violation = n;
    }
  }
  const long double nn = static_cast<long double>(big_n);
  r.base_case = (nn - 1) / 2 < c;
  if (r.base_case) r.base_value = nn * (nn - 1) / 2;
  r.bound = b * c * std::pow(nn, 1 + a);
  r.target = std::pow(nn, 1.5L + eps);
  r.bound_within_target = r.bound <= r.target;
  return r;
}

long double ConvexExtremum(std::int64_t n, const Rational& gamma,
                           long double a) {
  if (n < 1) throw ParameterError("n must be positive");
  if (!(gamma > Rational(0)) || !(gamma < Rational(1, 2))) {
    throw ParameterError("gamma must lie in (0, 1/2)");
  }
  if (!(a > 0 && a < 1)) throw ParameterError("a must lie in (0, 1)");
  const Rational small = gamma * Rational(n);
  if (small.den() != 1) throw ParameterError("gamma * n must be an integer");
  const long double g = static_cast<long double>(small.num());
  const long double rest = static_cast<long double>(n) - g;
  return std::pow(rest, 1 + a) + std::pow(g, 1 + a);
}

namespace {

long double Best(int remaining, int cap, long double a) {
  if (remaining == 0) return 0;
  long double best = -1;
  for (int x = std::min(remaining, cap); x >= 1; --x) {
    best = std::max(best, std::pow(static_cast<long double>(x), 1 + a) +
                              Best(remaining - x, x, a));
  }
  return best;
}

}  // namespace

long double ConvexBruteForce(int n, int cap, long double a) {
  if (n < 1 || n > 40) throw CapacityError("brute force needs 1 <= n <= 40");
  if (cap < 1) throw ParameterError("cap must be positive");
  return Best(n, cap, a);
}

}  // namespace msplab
