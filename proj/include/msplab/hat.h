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

#ifndef MSPLAB_HAT_H_
#define MSPLAB_HAT_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "msplab/engine.h"
#include "msplab/matroid.h"
#include "msplab/rational.h"
#include "msplab/weights.h"

namespace msplab {

// n triangles sharing the edge {a, b}. Vertices: a = 0, b = 1, v_i = i + 1.
// Edge ids: infinity edge 0, upper edge e_i = {a, v_i} is i, lower edge
// e'_i = {b, v_i} is n + i, for claws i = 1..n.
struct HatInstance {
  int n = 0;
  Rational alpha;
  std::shared_ptr<const GraphicMatroid> graph;
  WeightAssignment weights;

  static constexpr ElementId kInfinity = 0;

  ElementId upper(int i) const { return static_cast<ElementId>(i); }
  ElementId lower(int i) const { return static_cast<ElementId>(n + i); }
  // Claw index in 1..n, or 0 for the infinity edge.
  int claw(ElementId e) const {
    return e == kInfinity ? 0 : (e <= static_cast<ElementId>(n)
                                     ? static_cast<int>(e)
                                     : static_cast<int>(e) - n);
  }
  bool is_upper(ElementId e) const {
    return e != kInfinity && e <= static_cast<ElementId>(n);
  }
  bool is_lower(ElementId e) const { return e > static_cast<ElementId>(n); }
};

// Weights: e_i = (1/alpha)(1/2 + (n-i+1)/(2n+2)),
// e'_i = (1/alpha)(1/3 + (n-i+1)/(6n+6)), infinity = n + 1.
HatInstance BuildHat(int n, const Rational& alpha);

enum class EdgeLabel : std::uint8_t { kNone, kAccepted, kSample };

struct ClawState {
  EdgeLabel upper = EdgeLabel::kNone;
  EdgeLabel lower = EdgeLabel::kNone;

  bool Is(EdgeLabel u, EdgeLabel l) const { return upper == u && lower == l; }
  std::string ToString() const;  // e.g. "(S-)"
};

EdgeLabel LabelOf(const TraceCursor& cursor, ElementId e);

// Index 0 is unused; entries 1..n are the claws.
std::vector<ClawState> ClassifyClaws(const TraceCursor& cursor,
                                     const HatInstance& hat);

// Claw labels at time t: every event strictly before t applied.
std::vector<ClawState> ClassifyClawsAt(const RunTrace& trace, Tick t,
                                       const HatInstance& hat);

// The (SA) claw, if any. Throws InvariantViolation on two of them.
std::optional<int> FindBlocker(const std::vector<ClawState>& states);

bool IsLoss(const RunTrace& trace, const HatInstance& hat);

struct HatAudit {
  std::uint64_t traces = 0;
  // (-A) upper edge arrives with no (AA) yet and the infinity edge still to
  // come: accepted iff no (SA) claw to its left.
  std::uint64_t blocker_checks = 0;
  std::uint64_t blocker_violations = 0;
  // Lower edge of an (S-) arrives while a blocker exists: rejected.
  std::uint64_t unprotected_checks = 0;
  std::uint64_t unprotected_violations = 0;
  // Snapshots holding two (SA) claws.
  std::uint64_t double_blockers = 0;
  // Loss iff an (AA) claw exists when the infinity edge arrives after T.
  std::uint64_t loss_checks = 0;
  std::uint64_t loss_mismatches = 0;
  std::string first_counterexample;

  void Merge(const HatAudit& other);
  std::uint64_t violations() const {
    return blocker_violations + unprotected_violations + double_blockers +
           loss_mismatches;
  }
};

HatAudit VerifyStructuralLemmas(const RunTrace& trace, const HatInstance& hat);

// Failure-bound functions of the all-greedy argument.
struct BoundParams {
  long double n = 0;
  long double x = 0;
  long double ell = 0;

  // x = n^0.3, ell = n^-0.1.
  static BoundParams Defaults(long double n);
};

long double FailureF(const BoundParams& p, long double y);
// Zero below the breakpoint n^-0.4 / 2.
long double FailureG(const BoundParams& p, long double y);

struct FailureBounds {
  long double f = 0;
  long double g = 0;
};

FailureBounds EvalFailureBounds(const BoundParams& p, long double y);

// 0, 511 log-spaced points up to ell, and the breakpoint n^-0.4 / 2.
std::vector<long double> BoundGrid(const BoundParams& p);

struct MinMaxScan {
  long double value = 0;
  long double argmin = 0;
  bool f_non_increasing = true;
  bool g_non_decreasing = true;
};

MinMaxScan ScanFailureBounds(const BoundParams& p);

// Monte Carlo estimate of P[some claw among the floor(x) left-most has
// T < t(e') < t(e) < T + ell] against the bound 1 - 2^(-ell^2 x / 2).
struct LemmaCheck {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  long double estimate = 0;
  long double bound = 0;
  long double sigma = 0;
  bool passed = false;
};

LemmaCheck EmpiricalLemmaCheck(const BoundParams& p, std::uint64_t trials,
                               std::uint64_t seed,
                               Tick horizon = DefaultHorizon());

}  // namespace msplab

#endif  // MSPLAB_HAT_H_
