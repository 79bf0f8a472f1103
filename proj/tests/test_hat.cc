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

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "msplab/engine.h"
#include "msplab/errors.h"
#include "msplab/framework.h"
#include "msplab/hat.h"
#include "msplab/matroid.h"
#include "msplab/mwb.h"
#include "msplab/schedule.h"

namespace msplab {
namespace {

using Set = std::vector<ElementId>;

RunTrace HatTrace(const HatInstance& hat, const TrialSeed& seed) {
  GreedyFramework alg(MakeSupergreedyPolicy());
  return RunTrial(hat.graph, hat.weights,
                  DrawSchedule(hat.weights.size(), seed), alg, 0);
}

TEST_CASE("hat weights for n = 5, alpha = 2") {
  const HatInstance hat = BuildHat(5, Rational(2));
  CHECK(hat.graph->universe_size() == 11);
  CHECK(hat.graph->vertex_count() == 7);
  CHECK(hat.weights.at(HatInstance::kInfinity) == Rational(6));
  for (int i = 1; i <= 5; ++i) {
    const Rational up = hat.weights.at(hat.upper(i));
    const Rational low = hat.weights.at(hat.lower(i));
    CHECK(up > Rational(1, 4));
    CHECK(up < Rational(1, 2));
    CHECK(low > Rational(1, 6));
    CHECK(low < Rational(1, 4));
    // Evenly spaced inside the intervals.
    CHECK(up == Rational(1, 2) * (Rational(1, 2) + Rational(6 - i, 12)));
    CHECK(low == Rational(1, 2) * (Rational(1, 3) + Rational(6 - i, 36)));
    if (i > 1) {
      CHECK(up < hat.weights.at(hat.upper(i - 1)));
      CHECK(low < hat.weights.at(hat.lower(i - 1)));
    }
  }
  CHECK(hat.weights.at(hat.upper(5)) > hat.weights.at(hat.lower(1)));
  CHECK_THROWS_AS(BuildHat(5, Rational(1)), ParameterError);
  CHECK_THROWS_AS(BuildHat(5, Rational(1, 2)), ParameterError);
  CHECK_THROWS_AS(BuildHat(0, Rational(2)), ParameterError);
}

TEST_CASE("hat basis is the infinity edge plus every upper edge") {
  for (int n = 1; n <= 6; ++n) {
    const HatInstance hat = BuildHat(n, Rational(5, 2));
    Set expect{HatInstance::kInfinity};
    for (int i = 1; i <= n; ++i) expect.push_back(hat.upper(i));
    CHECK(BruteForceMwb(*hat.graph, hat.weights) == expect);
    CHECK(MaxWeightBasis(*hat.graph, hat.weights) == expect);
  }
}

TEST_CASE("without the infinity edge utility stays below 1/alpha") {
  for (int n : {1, 3, 6}) {
    const HatInstance hat = BuildHat(n, Rational(5));
    Set rest;
    for (ElementId e = 1; e < hat.graph->universe_size(); ++e) rest.push_back(e);
    auto without = Restrict(hat.graph, rest);
    const Set best = BruteForceMwb(*without, hat.weights);
    const Rational opt = hat.weights.Total(MaxWeightBasis(*hat.graph,
                                                          hat.weights));
    CHECK(hat.weights.Total(best) < Rational(n + 1, 5));
    CHECK(hat.weights.Total(best) / opt < Rational(1, 5));
  }
}

TEST_CASE("claw labels") {
  const HatInstance hat = BuildHat(6, Rational(5));
  const RunTrace trace = HatTrace(hat, {1, 0});
  const auto before = ClassifyClawsAt(trace, 0, hat);
  REQUIRE(before.size() == 7);
  for (int i = 1; i <= 6; ++i) CHECK(before[i].ToString() == "(--)");
  CHECK(ClawState{EdgeLabel::kSample, EdgeLabel::kNone}.ToString() == "(S-)");
  CHECK(ClawState{EdgeLabel::kAccepted, EdgeLabel::kAccepted}.Is(
      EdgeLabel::kAccepted, EdgeLabel::kAccepted));
}

TEST_CASE("find_blocker") {
  std::vector<ClawState> states(6);
  CHECK_FALSE(FindBlocker(states).has_value());
  states[3] = {EdgeLabel::kSample, EdgeLabel::kAccepted};
  CHECK(FindBlocker(states) == 3);
  states[5] = {EdgeLabel::kSample, EdgeLabel::kAccepted};
  CHECK_THROWS_AS(FindBlocker(states), InvariantViolation);
}

TEST_CASE("supergreedy memory at T holds at most the left-most full claw") {
  const int n = 12;
  const HatInstance hat = BuildHat(n, Rational(5));
  int with_full = 0;
  for (std::uint64_t i = 0; i < 300; ++i) {
    const TrialSeed seed{21, i};
    const ArrivalSchedule s = DrawSchedule(hat.weights.size(), seed);
    const RunTrace trace = HatTrace(hat, seed);
    const Tick t = trace.horizon + 1;
    const auto states = ClassifyClawsAt(trace, t, hat);
    auto sampled = [&](ElementId e) { return s.time[e] <= trace.horizon; };
    int leftmost = 0;
    if (!sampled(HatInstance::kInfinity)) {
      for (int c = 1; c <= n && leftmost == 0; ++c) {
        if (sampled(hat.upper(c)) && sampled(hat.lower(c))) leftmost = c;
      }
    }
    for (int c = 1; c <= n; ++c) {
      const bool full = states[c].Is(EdgeLabel::kSample, EdgeLabel::kSample);
      REQUIRE(full == (c == leftmost));
      if (sampled(hat.upper(c))) REQUIRE(states[c].upper == EdgeLabel::kSample);
    }
    with_full += leftmost != 0;
  }
  CHECK(with_full > 0);
}

TEST_CASE("is_loss") {
  const HatInstance hat = BuildHat(10, Rational(5));
  int early = 0;
  int wins = 0;
  for (std::uint64_t i = 0; i < 300; ++i) {
    const TrialSeed seed{31, i};
    const ArrivalSchedule s = DrawSchedule(hat.weights.size(), seed);
    const RunTrace trace = HatTrace(hat, seed);
    const bool has_inf =
        std::find(trace.accepted.begin(), trace.accepted.end(),
                  HatInstance::kInfinity) != trace.accepted.end();
    CHECK(IsLoss(trace, hat) == !has_inf);
    if (s.time[HatInstance::kInfinity] <= trace.horizon) {
      ++early;
      CHECK(IsLoss(trace, hat));
    }
    wins += has_inf;
  }
  CHECK(early > 0);
  CHECK(wins > 0);
}

TEST_CASE("structural lemmas hold on supergreedy traces") {
  const HatInstance hat = BuildHat(200, Rational(5));
  HatAudit total;
  for (std::uint64_t i = 0; i < 400; ++i) {
    total.Merge(VerifyStructuralLemmas(HatTrace(hat, {41, i}), hat));
  }
  INFO(total.first_counterexample);
  CHECK(total.traces == 400);
  CHECK(total.violations() == 0);
  CHECK(total.loss_checks == 400);
  CHECK(total.blocker_checks > 0);
  CHECK(total.unprotected_checks > 0);
}

// Claw 1 becomes a blocker, then the lower edge of (S-) claw 2 is accepted.
RunTrace ProtectedAcceptFixture(const HatInstance& hat) {
  RunTrace t;
  t.algorithm = "fixture";
  t.framework = true;
  t.has_memory = true;
  t.universe = hat.weights.size();
  t.horizon = DefaultHorizon();
  auto event = [&](long double when, ElementId e, Decision d, Set added) {
    TraceEvent ev;
    ev.time = RealToTick(when);
    ev.element = e;
    ev.weight = hat.weights.at(e);
    ev.decision = d;
    ev.added = std::move(added);
    t.events.push_back(ev);
    if (d == Decision::kAccept) t.accepted.push_back(e);
  };
  event(0.1L, hat.upper(1), Decision::kSampleReject, {hat.upper(1)});
  event(0.2L, hat.upper(2), Decision::kSampleReject, {hat.upper(2)});
  event(0.5L, hat.lower(1), Decision::kAccept, {hat.lower(1)});
  event(0.6L, hat.lower(2), Decision::kAccept, {hat.lower(2)});
  event(0.7L, HatInstance::kInfinity, Decision::kReject, {});
  return t;
}

TEST_CASE("audit flags an accept made while protected") {
  const HatInstance hat = BuildHat(2, Rational(5));
  const RunTrace trace = ProtectedAcceptFixture(hat);
  const HatAudit audit = VerifyStructuralLemmas(trace, hat);
  CHECK(audit.unprotected_checks == 1);
  CHECK(audit.unprotected_violations == 1);
  CHECK(audit.first_counterexample.rfind("event 3:", 0) == 0);
  // No upper edge arrives after T, so no (-A) checks.
  CHECK(audit.blocker_checks == 0);
  const auto states = ClassifyClawsAt(trace, RealToTick(0.55L), hat);
  CHECK(FindBlocker(states) == 1);
  CHECK(states[2].ToString() == "(S-)");
}

// Direct transcriptions of the two bound functions.
double RefF(double n, double x, double l, double y) {
  return (1 - 2 * x * l * std::exp(-2 * x / 3)) * std::pow(1 - y, 4 * x) *
         (1 - std::pow(0.5, l * l * x / 2));
}

double RefG(double n, double l, double y) {
  const double b = std::pow(n, -0.4);
  if (y < b / 2) return 0;
  return 1 - std::pow(1 - (2 * y - b) / (2 * l),
                      std::pow(n, 0.6) * (4 * l - b) / (32 * l * l));
}

TEST_CASE("failure bounds match their definitions") {
  for (double n : {1e4, 1e5, 1e6}) {
    const BoundParams p = BoundParams::Defaults(n);
    CHECK(static_cast<double>(p.x) == doctest::Approx(std::pow(n, 0.3)));
    CHECK(static_cast<double>(p.ell) == doctest::Approx(std::pow(n, -0.1)));
    for (long double y : BoundGrid(p)) {
      const FailureBounds b = EvalFailureBounds(p, y);
      const double yd = static_cast<double>(y);
      CHECK(static_cast<double>(b.f) ==
            doctest::Approx(RefF(n, p.x, p.ell, yd)).epsilon(1e-9));
      CHECK(static_cast<double>(b.g) ==
            doctest::Approx(RefG(n, p.ell, yd)).epsilon(1e-9));
    }
  }
}

TEST_CASE("failure bound examples") {
  const BoundParams p = BoundParams::Defaults(1e4);
  CHECK(FailureF(p, 1.0L) == 0.0L);
  const long double cut = std::pow(1e4L, -0.4L) / 2;
  CHECK(FailureG(p, cut * 0.999L) == 0.0L);
  CHECK(FailureG(p, 0.0L) == 0.0L);
  CHECK(FailureG(p, p.ell) > 0.0L);
  const auto grid = BoundGrid(p);
  CHECK(grid.size() == 513);
  CHECK(grid.front() == 0.0L);
  CHECK(grid.back() == p.ell);
  CHECK(std::find(grid.begin(), grid.end(), cut) != grid.end());
}

TEST_CASE("failure bounds are monotone and the min-max grows with n") {
  const MinMaxScan small = ScanFailureBounds(BoundParams::Defaults(1e4));
  const MinMaxScan large = ScanFailureBounds(BoundParams::Defaults(1e6));
  CHECK(small.f_non_increasing);
  CHECK(small.g_non_decreasing);
  CHECK(large.f_non_increasing);
  CHECK(large.g_non_decreasing);
  CHECK(large.value > small.value);
}

TEST_CASE("empirical lemma check") {
  SUBCASE("n = 1e4 defaults") {
    const BoundParams p = BoundParams::Defaults(1e4);
    const LemmaCheck c = EmpiricalLemmaCheck(p, 20000, 3);
    const double expect =
        1 - std::pow(0.5, std::pow(1e4, -0.2) * std::pow(1e4, 0.3) / 2);
    CHECK(static_cast<double>(c.bound) == doctest::Approx(expect));
    CHECK(static_cast<double>(c.bound) == doctest::Approx(0.5813).epsilon(1e-3));
    CHECK(c.passed);
  }
  SUBCASE("x = 0 never hits") {
    const LemmaCheck c = EmpiricalLemmaCheck({1e4L, 0.0L, 0.3L}, 1000, 3);
    CHECK(c.hits == 0);
    CHECK(c.bound == 0.0L);
    CHECK(c.passed);
  }
  SUBCASE("whole post-sample window, x = n") {
    const long double t = TickToReal(DefaultHorizon());
    const LemmaCheck c = EmpiricalLemmaCheck({20.0L, 20.0L, 1.0L - t}, 5000, 3);
    CHECK(c.passed);
    CHECK(c.estimate >= c.bound);
  }
}

}  // namespace
}  // namespace msplab
