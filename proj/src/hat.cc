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

#include "msplab/hat.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "msplab/errors.h"
#include "msplab/rng.h"

namespace msplab {

HatInstance BuildHat(int n, const Rational& alpha) {
  if (n < 1) throw ParameterError("hat needs n >= 1");
  if (alpha <= Rational(1)) throw ParameterError("hat needs alpha > 1");
  HatInstance hat;
  hat.n = n;
  hat.alpha = alpha;
  std::vector<Edge> edges(2 * n + 1);
  edges[HatInstance::kInfinity] = {0, 1};
  for (int i = 1; i <= n; ++i) {
    edges[hat.upper(i)] = {0, i + 1};
    edges[hat.lower(i)] = {1, i + 1};
  }
  hat.graph = std::make_shared<GraphicMatroid>(n + 2, std::move(edges));

  // alpha = p/q. Common denominator 6p(n+1).
  const __int128 p = alpha.num();
  const __int128 q = alpha.den();
  const __int128 n1 = n + 1;
  std::vector<std::int64_t> scaled(2 * n + 1);
  scaled[HatInstance::kInfinity] = CheckedNarrow(6 * p * n1 * n1);
  for (int i = 1; i <= n; ++i) {
    scaled[hat.upper(i)] = CheckedNarrow(3 * q * (2 * n - i + 2));
    scaled[hat.lower(i)] = CheckedNarrow(q * (3 * n - i + 3));
  }
  hat.weights =
      WeightAssignment::FromScaled(std::move(scaled), CheckedNarrow(6 * p * n1));
  return hat;
}

std::string ClawState::ToString() const {
  auto c = [](EdgeLabel l) {
    return l == EdgeLabel::kAccepted ? 'A' : l == EdgeLabel::kSample ? 'S' : '-';
  };
  return std::string("(") + c(upper) + c(lower) + ")";
}

EdgeLabel LabelOf(const TraceCursor& cursor, ElementId e) {
  if (cursor.accepted(e)) return EdgeLabel::kAccepted;
  if (cursor.in_memory(e) && cursor.sampled(e)) return EdgeLabel::kSample;
  return EdgeLabel::kNone;
}

std::vector<ClawState> ClassifyClaws(const TraceCursor& cursor,
                                     const HatInstance& hat) {
  std::vector<ClawState> states(hat.n + 1);
  for (int i = 1; i <= hat.n; ++i) {
    states[i] = {LabelOf(cursor, hat.upper(i)), LabelOf(cursor, hat.lower(i))};
  }
  return states;
}

std::vector<ClawState> ClassifyClawsAt(const RunTrace& trace, Tick t,
                                       const HatInstance& hat) {
  TraceCursor cursor(trace);
  while (!cursor.done() && trace.events[cursor.index()].time < t) {
    cursor.Arrive();
    cursor.Decide();
  }
  return ClassifyClaws(cursor, hat);
}

std::optional<int> FindBlocker(const std::vector<ClawState>& states) {
  std::optional<int> found;
  for (std::size_t i = 1; i < states.size(); ++i) {
    if (!states[i].Is(EdgeLabel::kSample, EdgeLabel::kAccepted)) continue;
    if (found) {
      throw InvariantViolation("two blockers: claws " +
                               std::to_string(*found) + " and " +
                               std::to_string(i));
    }
    found = static_cast<int>(i);
  }
  return found;
}

bool IsLoss(const RunTrace& trace, const HatInstance& /*hat*/) {
  return std::find(trace.accepted.begin(), trace.accepted.end(),
                   HatInstance::kInfinity) == trace.accepted.end();
}

void HatAudit::Merge(const HatAudit& other) {
  traces += other.traces;
  blocker_checks += other.blocker_checks;
  blocker_violations += other.blocker_violations;
  unprotected_checks += other.unprotected_checks;
  unprotected_violations += other.unprotected_violations;
  double_blockers += other.double_blockers;
  loss_checks += other.loss_checks;
  loss_mismatches += other.loss_mismatches;
  if (first_counterexample.empty()) {
    first_counterexample = other.first_counterexample;
  }
}

namespace {

// Claw labels kept current while a trace is replayed.
class ClawTracker {
 public:
  ClawTracker(const TraceCursor& cursor, const HatInstance& hat)
      : cursor_(cursor), hat_(hat), states_(hat.n + 1) {}

  void Touch(ElementId e) {
    const int c = hat_.claw(e);
    if (c == 0) return;
    const ClawState old = states_[c];
    const ClawState now{LabelOf(cursor_, hat_.upper(c)),
                        LabelOf(cursor_, hat_.lower(c))};
    if (old.Is(EdgeLabel::kAccepted, EdgeLabel::kAccepted)) --aa_;
    if (old.Is(EdgeLabel::kSample, EdgeLabel::kAccepted)) blockers_.erase(c);
    if (now.Is(EdgeLabel::kAccepted, EdgeLabel::kAccepted)) ++aa_;
    if (now.Is(EdgeLabel::kSample, EdgeLabel::kAccepted)) blockers_.insert(c);
    states_[c] = now;
  }

  void TouchAll(const std::vector<ElementId>& elements) {
    for (ElementId e : elements) Touch(e);
  }

  const ClawState& state(int c) const { return states_[c]; }
  int aa() const { return aa_; }
  const std::set<int>& blockers() const { return blockers_; }

 private:
  const TraceCursor& cursor_;
  const HatInstance& hat_;
  std::vector<ClawState> states_;
  int aa_ = 0;
  std::set<int> blockers_;
};

}  // namespace

HatAudit VerifyStructuralLemmas(const RunTrace& trace, const HatInstance& hat) {
  HatAudit audit;
  audit.traces = 1;
  if (!trace.has_memory) return audit;
  const bool loss = IsLoss(trace, hat);
  TraceCursor cursor(trace);
  ClawTracker tracker(cursor, hat);
  bool infinity_arrived = false;
  auto note = [&](std::size_t index, const std::string& what) {
    if (!audit.first_counterexample.empty()) return;
    std::ostringstream os;
    os << "event " << index << ": " << what;
    audit.first_counterexample = os.str();
  };
  auto count_double = [&](std::size_t index) {
    if (tracker.blockers().size() >= 2) {
      ++audit.double_blockers;
      note(index, "two (SA) claws in I");
    }
  };

  while (!cursor.done()) {
    const std::size_t index = cursor.index();
    const TraceEvent& event = cursor.Arrive();
    tracker.TouchAll(event.pre_added);
    tracker.TouchAll(event.pre_removed);
    tracker.Touch(event.element);
    count_double(index);

    const ElementId e = event.element;
    const bool post = event.time > trace.horizon;
    const bool accepted = event.decision == Decision::kAccept;
    const int c = hat.claw(e);
    if (e == HatInstance::kInfinity) {
      ++audit.loss_checks;
      if (!post) {
        if (!loss) {
          ++audit.loss_mismatches;
          note(index, "infinity edge sampled yet accepted later");
        }
      } else if ((tracker.aa() > 0) != loss) {
        ++audit.loss_mismatches;
        note(index, loss ? "loss without an (AA) claw"
                         : "win despite an (AA) claw");
      }
      infinity_arrived = true;
    } else if (post && hat.is_upper(e)) {
      const ClawState& s = tracker.state(c);
      if (s.lower == EdgeLabel::kAccepted && tracker.aa() == 0 &&
          !infinity_arrived) {
        ++audit.blocker_checks;
        const bool blocked =
            !tracker.blockers().empty() && *tracker.blockers().begin() < c;
        if (accepted == blocked) {
          ++audit.blocker_violations;
          note(index, "upper edge of (-A) claw " + std::to_string(c) +
                          (accepted ? " accepted behind a blocker"
                                    : " rejected with no blocker to its left"));
        }
      }
    } else if (post && hat.is_lower(e)) {
      const ClawState& s = tracker.state(c);
      if (s.upper == EdgeLabel::kSample && !tracker.blockers().empty()) {
        ++audit.unprotected_checks;
        if (accepted) {
          ++audit.unprotected_violations;
          note(index, "lower edge of (S-) claw " + std::to_string(c) +
                          " accepted while protected");
        }
      }
    }

    cursor.Decide();
    tracker.TouchAll(event.added);
    tracker.TouchAll(event.removed);
    tracker.Touch(e);
    count_double(index);
  }
  return audit;
}

BoundParams BoundParams::Defaults(long double n) {
  return {n, std::pow(n, 0.3L), std::pow(n, -0.1L)};
}

long double FailureF(const BoundParams& p, long double y) {
  const long double first =
      1.0L - 2.0L * p.x * p.ell * std::exp(-2.0L * p.x / 3.0L);
  const long double second = std::pow(1.0L - y, 4.0L * p.x);
  const long double third =
      1.0L - std::pow(0.5L, p.ell * p.ell * p.x / 2.0L);
  return first * second * third;
}

long double FailureG(const BoundParams& p, long double y) {
  const long double n04 = std::pow(p.n, -0.4L);
  if (y < n04 / 2.0L) return 0.0L;
  const long double u = (2.0L * y - n04) / (2.0L * p.ell);
  const long double exponent = std::pow(p.n, 0.6L) * (4.0L * p.ell - n04) /
                               (32.0L * p.ell * p.ell);
  if (u >= 1.0L) return 1.0L;
  return -std::expm1(exponent * std::log1p(-u));
}

FailureBounds EvalFailureBounds(const BoundParams& p, long double y) {
  return {FailureF(p, y), FailureG(p, y)};
}

std::vector<long double> BoundGrid(const BoundParams& p) {
  std::vector<long double> grid{0.0L};
  const long double lo = std::log(p.ell * 1e-6L);
  const long double hi = std::log(p.ell);
  constexpr int kPoints = 511;
  for (int i = 0; i < kPoints; ++i) {
    grid.push_back(std::exp(lo + (hi - lo) * i / (kPoints - 1)));
  }
  grid.back() = p.ell;
  const long double breakpoint = std::pow(p.n, -0.4L) / 2.0L;
  if (breakpoint <= p.ell) grid.push_back(breakpoint);
  std::sort(grid.begin(), grid.end());
  return grid;
}

MinMaxScan ScanFailureBounds(const BoundParams& p) {
  MinMaxScan scan;
  const std::vector<long double> grid = BoundGrid(p);
  FailureBounds prev = EvalFailureBounds(p, grid.front());
  scan.value = std::max(prev.f, prev.g);
  scan.argmin = grid.front();
  constexpr long double kTol = 1e-12L;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const FailureBounds cur = EvalFailureBounds(p, grid[i]);
    if (cur.f > prev.f * (1.0L + kTol) + kTol * kTol) {
      scan.f_non_increasing = false;
    }
    if (cur.g < prev.g * (1.0L - kTol) - kTol * kTol) {
      scan.g_non_decreasing = false;
    }
    const long double worst = std::max(cur.f, cur.g);
    if (worst < scan.value) {
      scan.value = worst;
      scan.argmin = grid[i];
    }
    prev = cur;
  }
  return scan;
}

LemmaCheck EmpiricalLemmaCheck(const BoundParams& p, std::uint64_t trials,
                               std::uint64_t seed, Tick horizon) {
  LemmaCheck check;
  check.trials = trials;
  check.bound = 1.0L - std::pow(0.5L, p.ell * p.ell * p.x / 2.0L);
  const long long claws = static_cast<long long>(std::floor(p.x));
  const Tick end = RealToTick(TickToReal(horizon) + p.ell);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng = SubStream(TrialSeed{seed, trial}, StreamTag::kSchedule);
    bool hit = false;
    for (long long c = 0; c < claws; ++c) {
      const Tick upper = rng();
      const Tick lower = rng();
      if (horizon < lower && lower < upper && upper < end) hit = true;
    }
    if (hit) ++check.hits;
  }
  if (trials > 0) {
    check.estimate = static_cast<long double>(check.hits) / trials;
    check.sigma =
        std::sqrt(check.estimate * (1.0L - check.estimate) / trials);
  }
  check.passed = check.estimate >= check.bound - 3.0L * check.sigma;
  return check;
}

}  // namespace msplab
