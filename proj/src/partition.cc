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

#include "msplab/partition.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "msplab/errors.h"
#include "msplab/graphs.h"
#include "msplab/rng.h"

namespace msplab {
namespace {

struct Endpoints {
  int u;
  int v;
};

// Endpoints of every K_n edge in CompleteGraph order.
std::vector<Endpoints> CompleteEdges(int n) {
  std::vector<Endpoints> out;
  out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) out.push_back({u, v});
  }
  return out;
}

std::size_t EdgeCount(int n) { return static_cast<std::size_t>(n) * (n - 1) / 2; }

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

void CheckShape(const EdgePartition& p) {
  if (p.n < 2) throw ParameterError("partition needs n >= 2");
  if (p.part.size() != EdgeCount(p.n)) {
    throw ParameterError("partition does not cover K_n");
  }
  for (int x : p.part) {
    if (x < 0) throw ParameterError("negative part index");
  }
}

}  // namespace

int EdgePartition::part_count() const {
  int most = -1;
  for (int x : part) most = std::max(most, x);
  return most + 1;
}

std::vector<std::vector<ElementId>> EdgePartition::Parts() const {
  std::vector<std::vector<ElementId>> out(part_count());
  for (ElementId e = 0; e < part.size(); ++e) out[part[e]].push_back(e);
  return out;
}

EdgePartition EdgePartition::SinglePart(int n) {
  return {n, std::vector<int>(EdgeCount(n), 0)};
}

EdgePartition EdgePartition::Singletons(int n) {
  EdgePartition p{n, std::vector<int>(EdgeCount(n))};
  std::iota(p.part.begin(), p.part.end(), 0);
  return p;
}

EdgePartition KorulaPalPartition(std::span<const int> rank) {
  const int n = static_cast<int>(rank.size());
  if (n < 2) throw ParameterError("Korula-Pal partition needs n >= 2");
  std::vector<bool> seen(n, false);
  for (int r : rank) {
    if (r < 0 || r >= n || seen[r]) throw ParameterError("rank is not a permutation");
    seen[r] = true;
  }
  EdgePartition p{n, std::vector<int>(EdgeCount(n))};
  std::size_t e = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) p.part[e++] = rank[u] < rank[v] ? u : v;
  }
  return p;
}

EdgePartition KorulaPalPartition(int n, std::mt19937_64& rng) {
  if (n < 2) throw ParameterError("Korula-Pal partition needs n >= 2");
  std::vector<int> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  std::shuffle(rank.begin(), rank.end(), rng);
  return KorulaPalPartition(rank);
}

std::optional<std::array<int, 3>> FindShatteredTriangle(const EdgePartition& p) {
  CheckShape(p);
  const int n = p.n;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const int ab = p.part[CompleteEdgeId(n, a, b)];
      for (int c = b + 1; c < n; ++c) {
        const int ac = p.part[CompleteEdgeId(n, a, c)];
        const int bc = p.part[CompleteEdgeId(n, b, c)];
        if (ab != ac && ab != bc && ac != bc) return std::array<int, 3>{a, b, c};
      }
    }
  }
  return std::nullopt;
}

bool ValidatePartitionTriangles(const EdgePartition& p) {
  return !FindShatteredTriangle(p).has_value();
}

namespace {

// Depth-first search for a cycle through vertices > start whose edges all
// use distinct parts.
bool ShatteredCycleFrom(const EdgePartition& p, int start, int at, int length,
                        std::vector<bool>& on_path, std::vector<bool>& used) {
  const int n = p.n;
  if (length >= 2) {
    const int closing = p.part[CompleteEdgeId(n, at, start)];
    if (!used[closing]) return true;
  }
  for (int next = start + 1; next < n; ++next) {
    if (on_path[next]) continue;
    const int part = p.part[CompleteEdgeId(n, at, next)];
    if (used[part]) continue;
    on_path[next] = true;
    used[part] = true;
    const bool found = ShatteredCycleFrom(p, start, next, length + 1, on_path, used);
    on_path[next] = false;
    used[part] = false;
    if (found) return true;
  }
  return false;
}

}  // namespace

bool ValidatePartitionBruteforce(const EdgePartition& p) {
  CheckShape(p);
  if (p.n > kBruteForceCycleLimit) {
    throw CapacityError("cycle enumeration is limited to n <= " +
                        std::to_string(kBruteForceCycleLimit));
  }
  std::vector<bool> on_path(p.n, false);
  std::vector<bool> used(p.part_count(), false);
  for (int s = 0; s < p.n; ++s) {
    on_path[s] = true;
    if (ShatteredCycleFrom(p, s, s, 0, on_path, used)) return false;
    on_path[s] = false;
  }
  return true;
}

std::vector<ElementId> RunPartitionDynkin(const EdgePartition& p,
                                          const WeightAssignment& w,
                                          std::span<const Tick> time,
                                          Tick horizon) {
  CheckShape(p);
  if (w.size() != p.edge_count() || time.size() != p.edge_count()) {
    throw ParameterError("weights or times do not match the partition");
  }
  constexpr ElementId kNone = ~ElementId{0};
  const int parts = p.part_count();
  std::vector<ElementId> best(parts, kNone);
  for (ElementId e = 0; e < p.edge_count(); ++e) {
    if (time[e] > horizon) continue;
    ElementId& b = best[p.part[e]];
    if (b == kNone || w.Precedes(e, b)) b = e;
  }
  // Earliest (time, id) arrival after the horizon that beats the samples.
  std::vector<ElementId> pick(parts, kNone);
  for (ElementId e = 0; e < p.edge_count(); ++e) {
    if (time[e] <= horizon) continue;
    const int i = p.part[e];
    if (best[i] != kNone && !w.Precedes(e, best[i])) continue;
    ElementId& c = pick[i];
    if (c == kNone || time[e] < time[c] || (time[e] == time[c] && e < c)) c = e;
  }
  std::vector<ElementId> out;
  UnionFind uf(p.n);
  const std::vector<Endpoints> ends = CompleteEdges(p.n);
  for (ElementId e : pick) {
    if (e == kNone) continue;
    if (!uf.Union(ends[e].u, ends[e].v)) {
      throw ValidityBreach("per-part selections contain a cycle");
    }
    out.push_back(e);
  }
  return out;
}

AdversaryWeights DeterministicAdversaryWeights(const EdgePartition& p) {
  CheckShape(p);
  const std::vector<std::vector<ElementId>> parts = p.Parts();
  int largest = -1;
  for (int i = 0; i < static_cast<int>(parts.size()); ++i) {
    if (largest < 0 || parts[i].size() > parts[largest].size()) largest = i;
  }
  if (largest < 0 || 2 * parts[largest].size() < static_cast<std::size_t>(p.n)) {
    throw InvariantViolation("no part has at least n/2 edges");
  }
  AdversaryWeights out;
  out.part = largest;
  const std::vector<Endpoints> ends = CompleteEdges(p.n);
  UnionFind uf(p.n);
  std::vector<std::int64_t> scaled(p.edge_count(), 0);
  for (ElementId e : parts[largest]) {
    if (uf.Union(ends[e].u, ends[e].v)) {
      out.forest.push_back(e);
      scaled[e] = 1;
    }
  }
  out.weights = WeightAssignment::FromScaled(std::move(scaled), 1);
  return out;
}

BroomInstance PlantBroom(int n, std::mt19937_64& rng) {
  if (n < 4 || n % 2 != 0) throw ParameterError("broom needs even n >= 4");
  BroomInstance b;
  b.n = n;
  const std::size_t m = EdgeCount(n);
  b.handle = static_cast<ElementId>(UniformBelow(rng, m));
  const std::vector<Endpoints> ends = CompleteEdges(n);
  b.u = ends[b.handle].u;
  b.v = ends[b.handle].v;
  std::vector<int> rest;
  rest.reserve(n - 2);
  for (int x = 0; x < n; ++x) {
    if (x != b.u && x != b.v) rest.push_back(x);
  }
  std::shuffle(rest.begin(), rest.end(), rng);
  const std::size_t half = rest.size() / 2;
  b.x.assign(rest.begin(), rest.begin() + half);
  b.y.assign(rest.begin() + half, rest.end());
  std::sort(b.x.begin(), b.x.end());
  std::sort(b.y.begin(), b.y.end());
  std::vector<std::int64_t> scaled(m, 0);
  for (int x : b.x) b.legs.push_back(CompleteEdgeId(n, b.u, x));
  for (int y : b.y) b.legs.push_back(CompleteEdgeId(n, b.v, y));
  for (ElementId e : b.legs) scaled[e] = 1;
  b.weights = WeightAssignment::FromScaled(std::move(scaled), 1);
  return b;
}

BroomInstance PlantBroom(int n, std::uint64_t seed) {
  std::mt19937_64 rng = SubStream(seed, StreamTag::kInstance);
  return PlantBroom(n, rng);
}

std::vector<int> EdgeDegrees(const EdgePartition& p) {
  CheckShape(p);
  const std::vector<Endpoints> ends = CompleteEdges(p.n);
  std::unordered_map<std::uint64_t, int> degree;
  degree.reserve(2 * p.edge_count());
  auto key = [&](int part, int vertex) {
    return static_cast<std::uint64_t>(part) * p.n + vertex;
  };
  for (ElementId e = 0; e < p.edge_count(); ++e) {
    ++degree[key(p.part[e], ends[e].u)];
    ++degree[key(p.part[e], ends[e].v)];
  }
  std::vector<int> out(p.edge_count());
  for (ElementId e = 0; e < p.edge_count(); ++e) {
    out[e] = degree[key(p.part[e], ends[e].u)] +
             degree[key(p.part[e], ends[e].v)] - 1;
  }
  return out;
}

int EdgeDegree(const EdgePartition& p, ElementId e) {
  CheckShape(p);
  if (e >= p.edge_count()) throw DomainError("not an edge of K_n");
  const std::vector<Endpoints> ends = CompleteEdges(p.n);
  const int i = p.part[e];
  int deg = -1;
  for (int x = 0; x < p.n; ++x) {
    if (x != ends[e].u && p.part[CompleteEdgeId(p.n, ends[e].u, x)] == i) ++deg;
    if (x != ends[e].v && p.part[CompleteEdgeId(p.n, ends[e].v, x)] == i) ++deg;
  }
  return deg;
}

std::size_t CountLowDegree(const EdgePartition& p, long double c) {
  std::size_t count = 0;
  for (int d : EdgeDegrees(p)) {
    if (d < c) ++count;
  }
  return count;
}

EdgePartition ReadPartition(std::istream& in, int n) {
  std::vector<std::vector<std::pair<int, int>>> lines;
  int top = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream tokens(line);
    std::string token;
    std::vector<std::pair<int, int>> edges;
    while (tokens >> token) {
      const std::size_t dash = token.find('-');
      int a = 0;
      int b = 0;
      try {
        if (dash == std::string::npos) throw std::invalid_argument(token);
        std::size_t used_a = 0;
        std::size_t used_b = 0;
        a = std::stoi(token.substr(0, dash), &used_a);
        b = std::stoi(token.substr(dash + 1), &used_b);
        if (used_a != dash || used_b != token.size() - dash - 1) {
          throw std::invalid_argument(token);
        }
      } catch (const std::logic_error&) {
        throw ParameterError("bad edge token '" + token + "'");
      }
      if (a < 1 || b < 1 || a == b) {
        throw ParameterError("bad edge token '" + token + "'");
      }
      top = std::max({top, a, b});
      edges.emplace_back(a - 1, b - 1);
    }
    if (!edges.empty()) lines.push_back(std::move(edges));
  }
  if (n == 0) n = top;
  if (n < 2 || top > n) throw ParameterError("partition vertex count mismatch");
  EdgePartition p{n, std::vector<int>(EdgeCount(n), -1)};
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (auto [a, b] : lines[i]) {
      int& slot = p.part[CompleteEdgeId(n, a, b)];
      if (slot != -1) {
        throw ParameterError("edge " + std::to_string(a + 1) + "-" +
                             std::to_string(b + 1) + " listed twice");
      }
      slot = static_cast<int>(i);
    }
  }
  for (int x : p.part) {
    if (x == -1) throw ParameterError("partition leaves an edge unassigned");
  }
  return p;
}

void WritePartition(const EdgePartition& p, std::ostream& os) {
  const std::vector<Endpoints> ends = CompleteEdges(p.n);
  for (const auto& part : p.Parts()) {
    if (part.empty()) continue;
    for (std::size_t j = 0; j < part.size(); ++j) {
      if (j) os << ' ';
      os << ends[part[j]].u + 1 << '-' << ends[part[j]].v + 1;
    }
    os << '\n';
  }
}

namespace {

class KorulaPal : public SecretaryAlgorithm {
 public:
  explicit KorulaPal(Tick horizon) : horizon_(horizon) {}

  std::string name() const override { return "korula-pal"; }

  void Start(MatroidPtr m, const RevealedWeights& w,
             std::uint64_t seed) override {
    graph_ = dynamic_cast<const GraphicMatroid*>(m.get());
    if (graph_ == nullptr) {
      throw ConfigurationError("korula-pal needs a graphic matroid");
    }
    m_ = std::move(m);
    w_ = &w;
    const int n = graph_->vertex_count();
    rank_.resize(n);
    std::iota(rank_.begin(), rank_.end(), 0);
    std::mt19937_64 rng = SubStream(seed, StreamTag::kPartition);
    std::shuffle(rank_.begin(), rank_.end(), rng);
    best_.assign(n, kNone);
    done_.assign(n, false);
  }

  Decision OnArrival(ElementId e, Tick t) override {
    const Edge& edge = graph_->edge(e);
    const int part = rank_[edge.u] < rank_[edge.v] ? edge.u : edge.v;
    ElementId& best = best_[part];
    const bool beats = best == kNone || w_->Precedes(e, best);
    if (beats) best = e;
    if (t <= horizon_) return Decision::kSampleReject;
    if (done_[part] || !beats) return Decision::kReject;
    done_[part] = true;
    return Decision::kAccept;
  }

  Tick horizon() const override { return horizon_; }

 private:
  static constexpr ElementId kNone = ~ElementId{0};
  Tick horizon_;
  MatroidPtr m_;
  const GraphicMatroid* graph_ = nullptr;
  const RevealedWeights* w_ = nullptr;
  std::vector<int> rank_;
  std::vector<ElementId> best_;
  std::vector<bool> done_;
};

}  // namespace

std::unique_ptr<SecretaryAlgorithm> MakeKorulaPal(Tick horizon) {
  return std::make_unique<KorulaPal>(horizon);
}

}  // namespace msplab
