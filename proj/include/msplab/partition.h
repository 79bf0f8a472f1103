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

#ifndef MSPLAB_PARTITION_H_
#define MSPLAB_PARTITION_H_

#include <array>
#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "msplab/engine.h"
#include "msplab/matroid.h"
#include "msplab/schedule.h"
#include "msplab/weights.h"

namespace msplab {

// Edge partition of K_n. Edges use the CompleteGraph numbering.
struct EdgePartition {
  int n = 0;
  std::vector<int> part;  // edge -> part index

  std::size_t edge_count() const { return part.size(); }
  int part_count() const;
  std::vector<std::vector<ElementId>> Parts() const;

  static EdgePartition SinglePart(int n);
  static EdgePartition Singletons(int n);
};

// Edge {u, v} goes to the part of whichever endpoint has the smaller rank.
// rank[v] is a permutation of 0..n-1.
EdgePartition KorulaPalPartition(std::span<const int> rank);
EdgePartition KorulaPalPartition(int n, std::mt19937_64& rng);

// A triangle whose three edges lie in three different parts.
std::optional<std::array<int, 3>> FindShatteredTriangle(const EdgePartition& p);
bool ValidatePartitionTriangles(const EdgePartition& p);

// Looks for any cycle with pairwise distinct parts. n <= 7.
bool ValidatePartitionBruteforce(const EdgePartition& p);
inline constexpr int kBruteForceCycleLimit = 7;

// One Dynkin run per part on a shared clock. Returns the accepted edges in
// part order. Throws ValidityBreach if they contain a cycle.
std::vector<ElementId> RunPartitionDynkin(const EdgePartition& p,
                                          const WeightAssignment& w,
                                          std::span<const Tick> time,
                                          Tick horizon);

struct AdversaryWeights {
  int part = -1;
  std::vector<ElementId> forest;
  WeightAssignment weights;
};

// Weight 1 on a spanning forest of the largest part, 0 elsewhere.
AdversaryWeights DeterministicAdversaryWeights(const EdgePartition& p);

struct BroomInstance {
  int n = 0;
  int u = 0;
  int v = 0;
  ElementId handle = 0;
  std::vector<int> x;  // sorted
  std::vector<int> y;  // sorted
  // Leg j is {u, x[j]} for j < |X|, else {v, y[j - |X|]}.
  std::vector<ElementId> legs;
  WeightAssignment weights;
};

BroomInstance PlantBroom(int n, std::mt19937_64& rng);
BroomInstance PlantBroom(int n, std::uint64_t seed);

// deg_i(a) + deg_i(b) - 1 inside the part i of e = {a, b}.
std::vector<int> EdgeDegrees(const EdgePartition& p);
int EdgeDegree(const EdgePartition& p, ElementId e);
std::size_t CountLowDegree(const EdgePartition& p, long double c);

// One line per part of "u-v" tokens with 1-based vertices.
EdgePartition ReadPartition(std::istream& in, int n = 0);
void WritePartition(const EdgePartition& p, std::ostream& os);

// Korula-Pal as an online algorithm on any graphic matroid. The vertex order
// is drawn from the algorithm seed.
std::unique_ptr<SecretaryAlgorithm> MakeKorulaPal(Tick horizon);

}  // namespace msplab

#endif  // MSPLAB_PARTITION_H_
