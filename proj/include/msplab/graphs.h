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

#ifndef MSPLAB_GRAPHS_H_
#define MSPLAB_GRAPHS_H_

#include <istream>
#include <memory>
#include <span>
#include <vector>

#include "msplab/matroid.h"
#include "msplab/weights.h"

namespace msplab {

// K_n with edge (u, v), u < v, at index u*(2n-u-1)/2 + (v-u-1).
std::shared_ptr<const GraphicMatroid> CompleteGraph(int n);
ElementId CompleteEdgeId(int n, int u, int v);

// "n m" then m lines "u v", 0-indexed.
std::shared_ptr<const GraphicMatroid> ReadGraph(std::istream& in);

// Whitespace-separated decimal rationals, one per edge.
WeightAssignment ReadWeights(std::istream& in, std::size_t expected);

// Rooted spanning structure of an acyclic edge set, for path queries.
class ForestIndex {
 public:
  ForestIndex() = default;

  void Build(const GraphicMatroid& g, std::span<const ElementId> forest);

  bool Connected(int u, int v) const { return root_[u] == root_[v]; }

  // Appends the edges of the unique u-v path. Requires Connected(u, v).
  void Path(int u, int v, std::vector<ElementId>* out) const;

 private:
  std::vector<int> root_;
  std::vector<int> depth_;
  std::vector<int> parent_;
  std::vector<ElementId> parent_edge_;
  std::vector<std::vector<std::pair<int, ElementId>>> adjacency_;
  std::vector<int> queue_;
};

}  // namespace msplab

#endif  // MSPLAB_GRAPHS_H_
