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

#ifndef MSPLAB_RECURRENCE_H_
#define MSPLAB_RECURRENCE_H_

#include <cstdint>
#include <optional>

#include "msplab/rational.h"

namespace msplab {

// a = eps/3, C = N^a, b = (4/a)(N/C)^(1/2 + a).
struct RecurrenceParams {
  long double eps = 0;
  long double a = 0;
  long double c = 0;
  long double b = 0;

  static RecurrenceParams For(std::int64_t big_n, long double eps);
};

struct RecurrenceReport {
  std::int64_t big_n = 0;
  RecurrenceParams params;
  // Checks 2(n-1)/(a b n^(1+a)) < (1+a) b C / (2 n^(1-a)) for 1 <= n <= N.
  bool condition_holds = true;
  std::optional<std::int64_t> first_violation;
  long double worst_log_margin = 0;  // min over n of log(rhs) - log(lhs)
  bool base_case = false;            // (N-1)/2 < C
  long double base_value = 0;        // N(N-1)/2 when base_case
  long double bound = 0;             // b C N^(1+a)
  long double target = 0;            // N^(3/2 + eps)
  bool bound_within_target = false;
};

RecurrenceReport RecurrenceCheck(std::int64_t big_n, long double eps);

// ((1-gamma)n)^(1+a) + (gamma n)^(1+a). Needs gamma n integral.
long double ConvexExtremum(std::int64_t n, const Rational& gamma,
                           long double a);

// Largest sum of x_i^(1+a) over positive integers x_i summing to n with every
// x_i <= cap. Exhaustive; n <= 40.
long double ConvexBruteForce(int n, int cap, long double a);

}  // namespace msplab

#endif  // MSPLAB_RECURRENCE_H_
