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

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "msplab/engine.h"
#include "msplab/errors.h"
#include "msplab/framework.h"
#include "msplab/graphs.h"
#include "msplab/matroid.h"
#include "msplab/schedule.h"
#include "msplab/weights.h"
#include "oracles.h"

namespace msplab {
namespace {

using Set = std::vector<ElementId>;

const char* const kPolicies[] = {"supergreedy", "dynkin", "optimistic",
                                 "pessimistic"};

std::unique_ptr<GreedyFramework> Framework(
    const std::string& policy, AcceptRoute route = AcceptRoute::kAuto) {
  FrameworkOptions options;
  options.route = route;
  return std::make_unique<GreedyFramework>(MakePolicy(policy), options);
}

// Element order[j] arrives j-th; the first `samples` of them before T.
ArrivalSchedule Staged(const std::vector<ElementId>& order,
                       std::size_t samples) {
  const long double t = 1.0L / std::exp(1.0L);
  const std::size_t n = order.size();
  std::vector<Tick> time(n);
  for (std::size_t j = 0; j < n; ++j) {
    const long double x =
        j < samples ? t * 0.99L * (j + 1) / (samples + 1)
                    : t + (1 - t) * (j - samples + 1) / (n - samples + 2);
    time[order[j]] = RealToTick(x);
  }
  return ArrivalSchedule::FromTimes(std::move(time));
}

WeightAssignment Scaled(std::vector<std::int64_t> v) {
  return WeightAssignment::FromScaled(std::move(v));
}

TEST_CASE("accept rule on a 1-uniform matroid") {
  UniformMatroid m(2, 1);
  const auto w = Scaled({5, 9});
  RevealedWeights seen(w);
  seen.Reveal(0);
  seen.Reveal(1);
  CHECK(FrameworkAcceptRule(m, seen, Set{}, Set{0}, 1));
  const auto light = Scaled({5, 3});
  RevealedWeights seen_light(light);
  seen_light.Reveal(0);
  seen_light.Reveal(1);
  CHECK_FALSE(FrameworkAcceptRule(m, seen_light, Set{}, Set{0}, 1));
}

TEST_CASE("validate_memory reports each kind of failure") {
  auto k3 = CompleteGraph(3);
  CHECK(ValidateMemory(*k3, Set{0, 1}, Set{}, Set{0, 1}, Set{0, 1, 2}).ok());
  CHECK(ValidateMemory(*k3, Set{0, 1}, Set{}, Set{0}, Set{0, 1, 2}).failed ==
        MemoryCheck::kContainment);
  CHECK(ValidateMemory(*k3, Set{}, Set{0, 1, 2}, Set{0, 1, 2}, Set{0, 1, 2})
            .failed == MemoryCheck::kIndependence);
  CHECK(ValidateMemory(*k3, Set{}, Set{0}, Set{}, Set{0}).failed ==
        MemoryCheck::kSpanning);
  // A post-T rejected element may not sit in memory.
  CHECK(ValidateMemory(*k3, Set{}, Set{}, Set{2}, Set{2}).failed ==
        MemoryCheck::kContainment);
}

// Forgets every sample at T; memory then fails to span.
class AmnesiacPolicy : public MemoryPolicy {
 public:
  std::string name() const override { return "amnesiac"; }
  std::vector<ElementId> AtHorizon(const FrameworkView&) override {
    return {};
  }
  std::optional<std::vector<ElementId>> AfterDecision(const FrameworkView&,
                                                      ElementId,
                                                      Decision) override {
    return std::nullopt;
  }
};

TEST_CASE("framework detects a policy that breaks the memory invariants") {
  auto m = std::make_shared<UniformMatroid>(3, 1);
  const auto w = Scaled({9, 5, 1});
  const ArrivalSchedule s = Staged({0, 1, 2}, 1);
  SUBCASE("throw mode") {
    GreedyFramework alg(std::make_unique<AmnesiacPolicy>());
    CHECK_THROWS_AS(RunTrial(m, w, s, alg, 0), FrameworkFault);
  }
  SUBCASE("record mode") {
    FrameworkOptions options;
    options.violations = ViolationMode::kRecord;
    GreedyFramework alg(std::make_unique<AmnesiacPolicy>(), options);
    RunTrial(m, w, s, alg, 0);
    CHECK(alg.violations().spanning > 0);
  }
}

TEST_CASE("dynkin policy examples") {
  auto m = std::make_shared<UniformMatroid>(4, 1);
  const auto w = Scaled({3, 8, 5, 1});
  SUBCASE("no samples: first arrival is accepted") {
    auto alg = Framework("dynkin");
    const RunTrace t = RunTrial(m, w, Staged({2, 1, 0, 3}, 0), *alg, 0);
    CHECK(t.accepted == Set{2});
  }
  SUBCASE("heaviest sampled: nothing accepted") {
    auto alg = Framework("dynkin");
    const RunTrace t = RunTrial(m, w, Staged({1, 0, 2, 3}, 1), *alg, 0);
    CHECK(t.accepted.empty());
  }
  SUBCASE("needs a 1-uniform matroid") {
    auto alg = Framework("dynkin");
    CHECK_THROWS_AS(RunTrial(std::make_shared<UniformMatroid>(4, 2), w,
                             Staged({0, 1, 2, 3}, 1), *alg, 0),
                    ConfigurationError);
    auto again = Framework("dynkin");
    CHECK_THROWS_AS(RunTrial(CompleteGraph(3), Scaled({1, 2, 3}),
                             Staged({0, 1, 2}, 1), *again, 0),
                    ConfigurationError);
  }
}

// Dynkin's rule written out: the first post-sample element heavier than
// every sample.
ElementId DynkinOracle(const std::vector<ElementId>& order,
                       std::size_t samples, const std::vector<int>& weight) {
  int best = -1;
  for (std::size_t j = 0; j < samples; ++j) {
    best = std::max(best, weight[order[j]]);
  }
  for (std::size_t j = samples; j < order.size(); ++j) {
    if (weight[order[j]] > best) return order[j];
  }
  return kNoElement;
}

TEST_CASE("dynkin matches its rule on every order of seven elements") {
  const std::size_t n = 7;
  auto m = std::make_shared<UniformMatroid>(n, 1);
  const std::vector<int> weight{4, 7, 1, 6, 3, 5, 2};
  const auto w = Scaled({4, 7, 1, 6, 3, 5, 2});
  const ElementId top = 1;
  std::vector<ElementId> order(n);
  std::iota(order.begin(), order.end(), ElementId{0});
  std::vector<std::uint64_t> wins(n + 1, 0);
  std::vector<std::uint64_t> oracle_wins(n + 1, 0);
  do {
    for (std::size_t k = 0; k <= n; ++k) {
      const ArrivalSchedule s = Staged(order, k);
      auto framework = Framework("dynkin");
      auto direct = MakeDynkin(DefaultHorizon());
      const RunTrace a = RunTrial(m, w, s, *framework, 0);
      const RunTrace b = RunTrial(m, w, s, *direct, 0);
      const ElementId expect = DynkinOracle(order, k, weight);
      REQUIRE(a.accepted == b.accepted);
      REQUIRE(a.accepted ==
              (expect == kNoElement ? Set{} : Set{expect}));
      if (a.accepted == Set{top}) ++wins[k];
      if (expect == top) ++oracle_wins[k];
    }
  } while (std::next_permutation(order.begin(), order.end()));
  CHECK(wins == oracle_wins);
  // Exact acceptance probability with Binom(7, 1/e) samples.
  const double p = std::exp(-1.0);
  double prob = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double choose = std::tgamma(n + 1.0) / std::tgamma(k + 1.0) /
                          std::tgamma(n - k + 1.0);
    prob += choose * std::pow(p, k) * std::pow(1 - p, n - k) * wins[k] / 5040.0;
  }
  CHECK(prob > std::exp(-1.0));
  CHECK(prob < 0.45);
}

struct HandTrace {
  Set accepted;
  Set memory;
};

// Samples 9 (id 0) and 7 (id 1); arrivals ids 2.. in the given order.
HandTrace RunTwoUniform(const std::string& policy,
                        std::vector<std::int64_t> arrivals) {
  std::vector<std::int64_t> v{9, 7};
  v.insert(v.end(), arrivals.begin(), arrivals.end());
  const auto w = Scaled(v);
  auto m = std::make_shared<UniformMatroid>(v.size(), 2);
  std::vector<ElementId> order(v.size());
  std::iota(order.begin(), order.end(), ElementId{0});
  auto alg = Framework(policy);
  const RunTrace t = RunTrial(m, w, Staged(order, 2), *alg, 0);
  TraceCursor cursor(t);
  while (!cursor.done()) {
    cursor.Arrive();
    cursor.Decide();
  }
  cursor.Finish();
  return {t.accepted, cursor.Memory()};
}

TEST_CASE("optimistic hand trace") {
  const HandTrace h = RunTwoUniform("optimistic", {8, 10});
  CHECK(h.accepted == Set{2, 3});
  CHECK(h.memory == Set{2, 3});
}

TEST_CASE("pessimistic hand traces") {
  SUBCASE("8 then 10") {
    const HandTrace h = RunTwoUniform("pessimistic", {8, 10});
    CHECK(h.accepted == Set{2, 3});
    CHECK(h.memory == Set{2, 3});
  }
  SUBCASE("10 then 8") {
    const HandTrace h = RunTwoUniform("pessimistic", {10, 8});
    CHECK(h.accepted == Set{2, 3});
    CHECK(h.memory == Set{2, 3});
  }
  SUBCASE("optimistic keeps 9 and so refuses 8") {
    const HandTrace h = RunTwoUniform("optimistic", {10, 8});
    CHECK(h.accepted == Set{2});
    CHECK(h.memory == Set{0, 2});
  }
}

TEST_CASE("k at least n accepts every post-sample arrival") {
  std::mt19937_64 rng(1);
  for (const char* policy : {"optimistic", "pessimistic"}) {
    for (std::uint64_t i = 0; i < 50; ++i) {
      const std::size_t n = 6;
      auto m = std::make_shared<UniformMatroid>(n, n);
      const auto w = testing::RandomWeights(n, rng, 100);
      const ArrivalSchedule s = DrawSchedule(n, {i, 0});
      auto alg = Framework(policy);
      const RunTrace t = RunTrial(m, w, s, *alg, 0);
      std::size_t late = 0;
      for (Tick x : s.time) late += x > DefaultHorizon();
      CHECK(t.accepted.size() == late);
    }
  }
}

TEST_CASE("k = 1 list policies reduce to dynkin") {
  auto m = std::make_shared<UniformMatroid>(9, 1);
  std::mt19937_64 rng(2);
  for (std::uint64_t i = 0; i < 500; ++i) {
    const auto w = testing::RandomWeights(9, rng, 1000);
    const ArrivalSchedule s = DrawSchedule(9, {3, i});
    auto d = Framework("dynkin");
    const Set expect = RunTrial(m, w, s, *d, 0).accepted;
    for (const char* policy : {"optimistic", "pessimistic"}) {
      auto alg = Framework(policy);
      REQUIRE(RunTrial(m, w, s, *alg, 0).accepted == expect);
    }
  }
}

TEST_CASE("supergreedy policy matches the direct implementation") {
  std::mt19937_64 rng(4);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    MatroidPtr m;
    std::size_t n;
    if (i % 4 == 0) {
      n = 1 + rng() % 9;
      m = std::make_shared<UniformMatroid>(n, 1 + rng() % 3);
    } else {
      const int edges = 1 + static_cast<int>(rng() % 9);
      m = std::make_shared<GraphicMatroid>(
          5, testing::RandomMultigraph(5, edges, rng));
      n = static_cast<std::size_t>(edges);
    }
    const auto w = testing::RandomWeights(n, rng, i % 2 ? 4 : 1000);
    const ArrivalSchedule s = DrawSchedule(n, {11, i});
    auto framework = Framework("supergreedy");
    auto direct = MakeSupergreedyDirect(DefaultHorizon());
    REQUIRE(RunTrial(m, w, s, *framework, 0).accepted ==
            RunTrial(m, w, s, *direct, 0).accepted);
  }
}

TEST_CASE("graphic and generic accept routes agree") {
  std::mt19937_64 rng(6);
  for (std::uint64_t i = 0; i < 300; ++i) {
    const int edges = 2 + static_cast<int>(rng() % 12);
    auto g = std::make_shared<GraphicMatroid>(
        6, testing::RandomMultigraph(6, edges, rng));
    const auto w = testing::RandomWeights(edges, rng, 50);
    const ArrivalSchedule s = DrawSchedule(edges, {13, i});
    auto graphic = Framework("supergreedy", AcceptRoute::kGraphic);
    auto generic = Framework("supergreedy", AcceptRoute::kGeneric);
    CHECK(graphic->name() == "supergreedy");
    const RunTrace a = RunTrial(g, w, s, *graphic, 0);
    const RunTrace b = RunTrial(g, w, s, *generic, 0);
    REQUIRE(graphic->uses_graphic_route());
    REQUIRE_FALSE(generic->uses_graphic_route());
    REQUIRE(a.accepted == b.accepted);
  }
  auto alg = Framework("supergreedy", AcceptRoute::kGraphic);
  CHECK_THROWS_AS(RunTrial(std::make_shared<UniformMatroid>(2, 1),
                           Scaled({1, 2}), Staged({0, 1}, 0), *alg, 0),
                  ConfigurationError);
}

TEST_CASE("memory invariants hold and rejected elements never return") {
  std::mt19937_64 rng(8);
  for (std::uint64_t i = 0; i < 400; ++i) {
    const std::string policy = kPolicies[i % 4];
    MatroidPtr m;
    std::size_t n = 3 + rng() % 8;
    if (policy == "supergreedy") {
      m = std::make_shared<GraphicMatroid>(
          5, testing::RandomMultigraph(5, static_cast<int>(n), rng));
    } else {
      const std::size_t k = policy == "dynkin" ? 1 : 1 + rng() % 3;
      m = std::make_shared<UniformMatroid>(n, k);
    }
    const auto w = testing::RandomWeights(n, rng, 30);
    auto alg = Framework(policy);  // throws on any violation
    const RunTrace t = RunTrial(m, w, DrawSchedule(n, {17, i}), *alg, 0);
    REQUIRE(alg->violations().total() == 0);
    REQUIRE(alg->violations().checks > 0);
    TraceCursor cursor(t);
    std::vector<bool> dropped(n, false);
    while (!cursor.done()) {
      const TraceEvent& e = cursor.Arrive();
      for (ElementId x = 0; x < n; ++x) {
        REQUIRE_FALSE((dropped[x] && cursor.in_memory(x)));
      }
      cursor.Decide();
      if (e.decision == Decision::kReject) dropped[e.element] = true;
      for (ElementId x = 0; x < n; ++x) {
        REQUIRE_FALSE((dropped[x] && cursor.in_memory(x)));
      }
      REQUIRE(IsIndependent(*m, cursor.Memory()));
    }
  }
}

TEST_CASE("virtual algorithm rule for k = 1") {
  auto m = std::make_shared<UniformMatroid>(4, 1);
  const auto w = Scaled({5, 9, 7, 12});
  auto alg = MakeVirtual(DefaultHorizon());
  CHECK_FALSE(alg->IsFramework());
  // 5 sampled; 9 beats the sampled maximum; 12 beats 9, which was accepted.
  const RunTrace t = RunTrial(m, w, Staged({0, 1, 2, 3}, 1), *alg, 0);
  CHECK(t.accepted == Set{1});
  auto all = MakeVirtual(DefaultHorizon());
  CHECK(RunTrial(m, w, Staged({0, 1, 2, 3}, 4), *all, 0).accepted.empty());
}

TEST_CASE("virtual algorithm is outside the framework") {
  // With no samples every framework policy must take the first arrival so
  // that memory spans it; the virtual rule rejects it.
  auto m = std::make_shared<UniformMatroid>(3, 1);
  const auto w = Scaled({2, 3, 1});
  const ArrivalSchedule s = Staged({0, 1, 2}, 0);
  auto v = MakeVirtual(DefaultHorizon());
  const RunTrace vt = RunTrial(m, w, s, *v, 0);
  CHECK(vt.events[0].decision == Decision::kReject);
  for (const char* policy : kPolicies) {
    auto alg = Framework(policy);
    CHECK(RunTrial(m, w, s, *alg, 0).events[0].decision == Decision::kAccept);
  }

  // Search n = 3, k = 2 for two runs that look identical to any memory
  // policy (same samples, accepted set and arrival) yet get different
  // virtual decisions. The runs then differ only in the weight of an
  // element rejected after T.
  using View = std::tuple<std::vector<int>, std::vector<int>, int>;
  std::map<View, std::pair<Decision, std::vector<int>>> seen;
  bool witness = false;
  auto m2 = std::make_shared<UniformMatroid>(3, 2);
  std::vector<int> weights{1, 2, 3, 4};
  std::vector<ElementId> order{0, 1, 2};
  for (int a = 1; a <= 4 && !witness; ++a) {
    for (int b = 1; b <= 4 && !witness; ++b) {
      for (int c = 1; c <= 4 && !witness; ++c) {
        if (a == b || b == c || a == c) continue;
        const std::vector<int> v{a, b, c};
        for (std::size_t k = 0; k <= 3 && !witness; ++k) {
          auto alg = MakeVirtual(DefaultHorizon());
          const RunTrace t =
              RunTrial(m2, Scaled({a, b, c}), Staged(order, k), *alg, 0);
          std::vector<int> samples;
          std::vector<int> accepted;
          for (const TraceEvent& e : t.events) {
            if (e.decision == Decision::kSampleReject) {
              samples.push_back(v[e.element]);
              continue;
            }
            std::vector<int> sorted = samples;
            std::sort(sorted.begin(), sorted.end());
            const View key{sorted, accepted, v[e.element]};
            auto [it, fresh] = seen.try_emplace(key, e.decision, v);
            if (!fresh && it->second.first != e.decision) witness = true;
            if (e.decision == Decision::kAccept) {
              accepted.push_back(v[e.element]);
            }
          }
        }
      }
    }
  }
  CHECK(witness);
}

}  // namespace
}  // namespace msplab
