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
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "msplab/engine.h"
#include "msplab/errors.h"
#include "msplab/graphs.h"
#include "msplab/matroid.h"
#include "msplab/mwb.h"
#include "msplab/partition.h"
#include "msplab/recurrence.h"
#include "msplab/schedule.h"
#include "oracles.h"

namespace msplab {
namespace {

using Set = std::vector<ElementId>;

EdgePartition FromParts(int n, std::vector<int> part) {
  return EdgePartition{n, std::move(part)};
}

// Every set partition of {0..m-1} as a restricted growth string.
void ForEachSetPartition(int m, const std::function<void(std::vector<int>&)>& f) {
  std::vector<int> a(m, 0);
  std::function<void(int, int)> rec = [&](int i, int top) {
    if (i == m) {
      f(a);
      return;
    }
    for (int v = 0; v <= top + 1; ++v) {
      a[i] = v;
      rec(i + 1, std::max(top, v));
    }
  };
  if (m > 0) {
    a[0] = 0;
    rec(1, 0);
  }
}

// Valid iff no edge set forming a single cycle has all parts distinct. A
// subset is a cycle when it is connected and every touched vertex has degree
// two.
bool CycleOracle(const EdgePartition& p) {
  auto k = CompleteGraph(p.n);
  const std::size_t m = p.edge_count();
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) < 3) continue;
    std::vector<int> deg(p.n, 0);
    std::set<int> parts;
    Set s;
    for (ElementId e = 0; e < m; ++e) {
      if (!(mask >> e & 1u)) continue;
      ++deg[k->edge(e).u];
      ++deg[k->edge(e).v];
      parts.insert(p.part[e]);
      s.push_back(e);
    }
    if (parts.size() != s.size()) continue;
    bool two = true;
    int touched = 0;
    for (int d : deg) {
      if (d != 0 && d != 2) two = false;
      touched += d != 0;
    }
    // A 2-regular edge set is a cycle iff it has as many edges as vertices
    // and removing any one edge leaves a forest.
    if (!two || touched != static_cast<int>(s.size())) continue;
    Set rest(s.begin() + 1, s.end());
    if (testing::ForestByDfs(p.n, k->edges(), rest) &&
        !testing::ForestByDfs(p.n, k->edges(), s)) {
      return false;
    }
  }
  return true;
}

TEST_CASE("korula-pal partition for n = 3, identity order") {
  const std::vector<int> rank{0, 1, 2};
  const EdgePartition p = KorulaPalPartition(rank);
  CHECK(p.part[CompleteEdgeId(3, 0, 1)] == 0);
  CHECK(p.part[CompleteEdgeId(3, 0, 2)] == 0);
  CHECK(p.part[CompleteEdgeId(3, 1, 2)] == 1);
  CHECK(p.part_count() == 2);
  CHECK_THROWS_AS(KorulaPalPartition(std::vector<int>{0, 0, 2}),
                  ParameterError);
}

TEST_CASE("korula-pal partitions are valid and sized by rank") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 1000; ++round) {
    const int n = 2 + static_cast<int>(rng() % 31);
    std::vector<int> rank(n);
    std::iota(rank.begin(), rank.end(), 0);
    std::shuffle(rank.begin(), rank.end(), rng);
    const EdgePartition p = KorulaPalPartition(rank);
    REQUIRE(ValidatePartitionTriangles(p));
    std::vector<int> owned(n, 0);
    for (int x : p.part) ++owned[x];
    for (int v = 0; v < n; ++v) REQUIRE(owned[v] == n - 1 - rank[v]);
  }
  std::mt19937_64 again(5);
  CHECK(ValidatePartitionTriangles(KorulaPalPartition(20, again)));
}

TEST_CASE("triangle check examples") {
  CHECK(ValidatePartitionTriangles(EdgePartition::SinglePart(6)));
  CHECK(ValidatePartitionBruteforce(EdgePartition::SinglePart(6)));
  const EdgePartition shattered = EdgePartition::Singletons(3);
  CHECK_FALSE(ValidatePartitionTriangles(shattered));
  CHECK_FALSE(ValidatePartitionBruteforce(shattered));
  const auto witness = FindShatteredTriangle(shattered);
  REQUIRE(witness.has_value());
  CHECK(*witness == std::array<int, 3>{0, 1, 2});
  CHECK_THROWS_AS(ValidatePartitionBruteforce(EdgePartition::SinglePart(8)),
                  CapacityError);
}

TEST_CASE("shattered four-cycle with paired chords") {
  // Cycle 0-1-2-3-0 in four parts; both chords share a fifth part.
  std::vector<int> part(6);
  part[CompleteEdgeId(4, 0, 1)] = 0;
  part[CompleteEdgeId(4, 1, 2)] = 1;
  part[CompleteEdgeId(4, 2, 3)] = 2;
  part[CompleteEdgeId(4, 0, 3)] = 3;
  part[CompleteEdgeId(4, 0, 2)] = 4;
  part[CompleteEdgeId(4, 1, 3)] = 4;
  const EdgePartition p = FromParts(4, part);
  CHECK_FALSE(ValidatePartitionBruteforce(p));
  CHECK_FALSE(ValidatePartitionTriangles(p));
  CHECK_FALSE(CycleOracle(p));
}

TEST_CASE("triangle check agrees with cycle checks on every partition of K4") {
  int count = 0;
  int valid = 0;
  ForEachSetPartition(6, [&](std::vector<int>& a) {
    const EdgePartition p = FromParts(4, a);
    const bool tri = ValidatePartitionTriangles(p);
    REQUIRE(tri == ValidatePartitionBruteforce(p));
    REQUIRE(tri == CycleOracle(p));
    ++count;
    valid += tri;
  });
  CHECK(count == 203);
  CHECK(valid > 0);
  CHECK(valid < 203);
}

TEST_CASE("triangle check agrees with cycle checks on random K5 and K6") {
  std::mt19937_64 rng(7);
  for (int n : {5, 6}) {
    const int m = n * (n - 1) / 2;
    int valid = 0;
    for (int round = 0; round < 1000; ++round) {
      std::vector<int> part(m);
      // Mix of few and many parts so both answers occur.
      const int parts = 1 + static_cast<int>(rng() % (round % 2 ? 3 : m));
      for (int& x : part) x = static_cast<int>(rng() % parts);
      const EdgePartition p = FromParts(n, part);
      const bool tri = ValidatePartitionTriangles(p);
      REQUIRE(tri == ValidatePartitionBruteforce(p));
      if (n == 5) REQUIRE(tri == CycleOracle(p));
      valid += tri;
    }
    CHECK(valid > 0);
    CHECK(valid < 1000);
  }
}

// Per-part Dynkin written out directly.
Set PerPartDynkin(const EdgePartition& p, const WeightAssignment& w,
                  const std::vector<Tick>& time, Tick horizon) {
  Set out;
  for (const Set& part : p.Parts()) {
    ElementId best = kNoElement;
    for (ElementId e : part) {
      if (time[e] <= horizon && (best == kNoElement || w.Precedes(e, best))) {
        best = e;
      }
    }
    ElementId pick = kNoElement;
    for (ElementId e : part) {
      if (time[e] <= horizon) continue;
      if (best != kNoElement && !w.Precedes(e, best)) continue;
      if (pick == kNoElement || time[e] < time[pick]) pick = e;
    }
    if (pick != kNoElement) out.push_back(pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST_CASE("per-part dynkin") {
  std::mt19937_64 rng(9);
  const int n = 7;
  auto k = CompleteGraph(n);
  for (std::uint64_t i = 0; i < 3000; ++i) {
    const EdgePartition p = KorulaPalPartition(n, rng);
    const auto w = testing::RandomWeights(p.edge_count(), rng, 1000);
    const std::vector<Tick> time = DrawTimes(p.edge_count(), {19, i});
    Set got = RunPartitionDynkin(p, w, time, DefaultHorizon());
    std::sort(got.begin(), got.end());
    REQUIRE(got == PerPartDynkin(p, w, time, DefaultHorizon()));
    REQUIRE(IsIndependent(*k, got));
    std::set<int> parts;
    for (ElementId e : got) parts.insert(p.part[e]);
    REQUIRE(parts.size() == got.size());
  }
  // Three singleton parts all arriving late close a triangle.
  const std::vector<Tick> late(3, DefaultHorizon() + 1);
  CHECK_THROWS_AS(
      RunPartitionDynkin(EdgePartition::Singletons(3),
                         WeightAssignment::FromScaled({1, 2, 3}), late,
                         DefaultHorizon()),
      ValidityBreach);
}

TEST_CASE("korula-pal adapter") {
  auto k6 = CompleteGraph(6);
  std::mt19937_64 rng(4);
  for (std::uint64_t i = 0; i < 500; ++i) {
    const auto w = testing::RandomWeights(15, rng, 1000);
    auto alg = MakeKorulaPal(DefaultHorizon());
    const RunTrace t = RunTrial(k6, w, DrawSchedule(15, {23, i}), *alg, i);
    REQUIRE(IsIndependent(*k6, t.accepted));
  }
  auto alg = MakeKorulaPal(DefaultHorizon());
  CHECK_THROWS_AS(RunTrial(std::make_shared<UniformMatroid>(3, 1),
                           WeightAssignment::FromScaled({1, 2, 3}),
                           DrawSchedule(3, {1, 1}), *alg, 0),
                  ConfigurationError);
}

TEST_CASE("deterministic adversary weights") {
  const std::vector<int> rank{0, 1, 2, 3};
  const EdgePartition star = KorulaPalPartition(rank);
  const AdversaryWeights adv = DeterministicAdversaryWeights(star);
  CHECK(adv.part == 0);
  CHECK(adv.forest == Set{0, 1, 2});
  for (ElementId e = 0; e < 6; ++e) {
    CHECK(adv.weights.scaled(e) == (e < 3 ? 1 : 0));
  }
  std::mt19937_64 rng(2);
  for (int n : {16, 64}) {
    auto k = CompleteGraph(n);
    for (int round = 0; round < 20; ++round) {
      const EdgePartition p = KorulaPalPartition(n, rng);
      const AdversaryWeights a = DeterministicAdversaryWeights(p);
      REQUIRE(IsIndependent(*k, a.forest));
      for (ElementId e : a.forest) REQUIRE(p.part[e] == a.part);
      REQUIRE(static_cast<double>(a.forest.size()) >=
              std::sqrt(n / 2.0) / 2);
    }
  }
  CHECK_THROWS_AS(DeterministicAdversaryWeights(EdgePartition::Singletons(6)),
                  InvariantViolation);
}

TEST_CASE("broom instances") {
  for (int n : {4, 6, 8, 256}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const BroomInstance b = PlantBroom(n, seed);
      auto k = CompleteGraph(n);
      REQUIRE(b.legs.size() == static_cast<std::size_t>(n - 2));
      REQUIRE(b.x.size() == b.y.size());
      REQUIRE(b.handle == CompleteEdgeId(n, b.u, b.v));
      REQUIRE(b.weights.scaled(b.handle) == 0);
      std::size_t ones = 0;
      for (ElementId e = 0; e < k->universe_size(); ++e) {
        ones += b.weights.scaled(e);
      }
      REQUIRE(ones == b.legs.size());
      REQUIRE(IsIndependent(*k, b.legs));
      for (std::size_t i = 0; i < b.x.size(); ++i) {
        REQUIRE(b.legs[i] == CompleteEdgeId(n, b.u, b.x[i]));
        REQUIRE(b.legs[b.x.size() + i] == CompleteEdgeId(n, b.v, b.y[i]));
      }
      if (n <= 6) {
        const Set opt = BruteForceMwb(*k, b.weights);
        REQUIRE(opt == MaxWeightBasis(*k, b.weights));
        REQUIRE(opt.size() == static_cast<std::size_t>(n - 1));
        for (ElementId leg : b.legs) {
          REQUIRE(std::count(opt.begin(), opt.end(), leg) == 1);
        }
      }
    }
  }
  CHECK(PlantBroom(8, std::uint64_t{3}).handle ==
        PlantBroom(8, std::uint64_t{3}).handle);
  CHECK_THROWS_AS(PlantBroom(7, std::uint64_t{0}), ParameterError);
  CHECK_THROWS_AS(PlantBroom(2, std::uint64_t{0}), ParameterError);
}

int DegreeOracle(const EdgePartition& p, ElementId e) {
  auto k = CompleteGraph(p.n);
  const Edge& f = k->edge(e);
  int d = 0;
  for (ElementId g = 0; g < p.edge_count(); ++g) {
    if (p.part[g] != p.part[e]) continue;
    const Edge& h = k->edge(g);
    if (h.u == f.u || h.v == f.u || h.u == f.v || h.v == f.v) ++d;
  }
  return d;
}

TEST_CASE("edge degrees") {
  const std::vector<int> rank{0, 1, 2, 3};
  const EdgePartition star = KorulaPalPartition(rank);
  CHECK(EdgeDegree(star, CompleteEdgeId(4, 0, 1)) == 3);
  const EdgePartition single = EdgePartition::Singletons(5);
  for (int d : EdgeDegrees(single)) CHECK(d == 1);
  const EdgePartition whole = EdgePartition::SinglePart(9);
  for (int d : EdgeDegrees(whole)) CHECK(d == 2 * 8 - 1);
  std::mt19937_64 rng(6);
  for (int round = 0; round < 30; ++round) {
    const EdgePartition p = KorulaPalPartition(9, rng);
    const std::vector<int> all = EdgeDegrees(p);
    for (ElementId e = 0; e < p.edge_count(); ++e) {
      REQUIRE(all[e] == DegreeOracle(p, e));
      REQUIRE(EdgeDegree(p, e) == all[e]);
    }
  }
}

TEST_CASE("low-degree counts") {
  CHECK(CountLowDegree(EdgePartition::SinglePart(10), 17) == 0);
  CHECK(CountLowDegree(EdgePartition::SinglePart(10), 18) == 45);
  CHECK(CountLowDegree(EdgePartition::Singletons(10), 2) == 45);
  std::mt19937_64 rng(8);
  for (int n : {32, 64, 128}) {
    for (int round = 0; round < 5; ++round) {
      const EdgePartition p = KorulaPalPartition(n, rng);
      const long double c = std::pow(static_cast<long double>(n), 0.125L);
      const std::size_t low = CountLowDegree(p, c);
      std::size_t expect = 0;
      for (int d : EdgeDegrees(p)) expect += d < c;
      REQUIRE(low == expect);
      REQUIRE(low <= std::pow(static_cast<long double>(n), 1.875L));
    }
  }
}

TEST_CASE("partition files") {
  std::istringstream in("1-2 1-3 1-4\n2-3 2-4\n\n3-4\n");
  const EdgePartition p = ReadPartition(in);
  CHECK(p.n == 4);
  CHECK(p.part_count() == 3);
  CHECK(p.part[CompleteEdgeId(4, 0, 3)] == 0);
  CHECK(p.part[CompleteEdgeId(4, 2, 3)] == 2);
  std::ostringstream out;
  WritePartition(p, out);
  std::istringstream back(out.str());
  CHECK(ReadPartition(back).part == p.part);
  std::istringstream dup("1-2 2-1 1-3 2-3\n");
  CHECK_THROWS_AS(ReadPartition(dup), ParameterError);
  std::istringstream missing("1-2 1-3\n");
  CHECK_THROWS_AS(ReadPartition(missing), ParameterError);
  std::istringstream zero("0-1\n");
  CHECK_THROWS_AS(ReadPartition(zero), ParameterError);
  std::istringstream junk("1-x\n");
  CHECK_THROWS_AS(ReadPartition(junk), ParameterError);
}

TEST_CASE("recurrence parameters and scan") {
  const RecurrenceParams p = RecurrenceParams::For(1000000, 0.375L);
  CHECK(static_cast<double>(p.a) == doctest::Approx(0.125));
  CHECK(static_cast<double>(p.c) == doctest::Approx(std::pow(1e6, 0.125)));
  CHECK(static_cast<double>(p.b) ==
        doctest::Approx(32 * std::pow(1e6 / std::pow(1e6, 0.125), 0.625)));
  const RecurrenceReport r = RecurrenceCheck(1000000, 0.375L);
  CHECK(r.condition_holds);
  CHECK_FALSE(r.first_violation.has_value());
  CHECK(r.worst_log_margin > 0);
  CHECK_FALSE(r.base_case);
  CHECK(RecurrenceCheck(10000, 0.375L).bound <
        RecurrenceCheck(100000, 0.375L).bound);
  const RecurrenceReport base = RecurrenceCheck(3, 0.375L);
  CHECK(base.base_case);
  CHECK(base.base_value == 3.0L);
  CHECK_THROWS_AS(RecurrenceCheck(100, 0.5L), ParameterError);
  CHECK_THROWS_AS(RecurrenceCheck(100, 0.0L), ParameterError);
}

// Largest sum of x^(1+a) over compositions of n with parts at most cap.
long double ConvexOracle(int n, int cap, long double a) {
  std::vector<long double> best(n + 1, -1);
  best[0] = 0;
  for (int s = 1; s <= n; ++s) {
    for (int x = 1; x <= std::min(s, cap); ++x) {
      best[s] = std::max(best[s], best[s - x] + std::pow((long double)x, 1 + a));
    }
  }
  return best[n];
}

TEST_CASE("convex extremum") {
  CHECK(static_cast<double>(ConvexExtremum(10, Rational(3, 10), 0.5L)) ==
        doctest::Approx(23.7165).epsilon(1e-5));
  CHECK(static_cast<double>(ConvexBruteForce(10, 7, 0.5L)) ==
        doctest::Approx(23.7165).epsilon(1e-5));
  for (int n = 3; n <= 12; ++n) {
    const long double edge = ConvexExtremum(n, Rational(1, n), 0.3L);
    CHECK(static_cast<double>(edge) ==
          doctest::Approx(std::pow(n - 1.0, 1.3) + 1));
  }
  for (int n = 2; n <= 12; ++n) {
    for (int m = 1; 2 * m < n; ++m) {
      for (long double a : {0.1L, 0.25L, 0.5L, 0.9L}) {
        const long double f = ConvexExtremum(n, Rational(m, n), a);
        const long double brute = ConvexBruteForce(n, n - m, a);
        REQUIRE(static_cast<double>(f) == doctest::Approx(brute));
        REQUIRE(static_cast<double>(brute) ==
                doctest::Approx(ConvexOracle(n, n - m, a)));
      }
    }
  }
  CHECK_THROWS_AS(ConvexExtremum(10, Rational(1, 2), 0.5L), ParameterError);
  CHECK_THROWS_AS(ConvexExtremum(10, Rational(1, 4), 0.5L), ParameterError);
  CHECK_THROWS_AS(ConvexExtremum(10, Rational(3, 10), 1.0L), ParameterError);
}

}  // namespace
}  // namespace msplab
