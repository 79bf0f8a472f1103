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

#include "msplab/graphs.h"

#include <string>

#include "msplab/errors.h"
#include "msplab/rational.h"

namespace msplab {

std::shared_ptr<const GraphicMatroid> CompleteGraph(int n) {
  if (n < 1) throw ParameterError("complete graph needs n >= 1");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return std::make_shared<GraphicMatroid>(n, std::move(edges));
}

ElementId CompleteEdgeId(int n, int u, int v) {
  if (u > v) std::swap(u, v);
  if (u < 0 || v >= n || u == v) throw DomainError("not an edge of K_n");
  return static_cast<ElementId>(static_cast<long>(u) * (2L * n - u - 1) / 2 +
                                (v - u - 1));
}

std::shared_ptr<const GraphicMatroid> ReadGraph(std::istream& in) {
  long n = 0;
  long m = 0;
  if (!(in >> n >> m) || n < 0 || m < 0) {
    throw ParameterError("graph file must start with \"n m\"");
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (long i = 0; i < m; ++i) {
    Edge e;
    if (!(in >> e.u >> e.v)) {
      throw ParameterError("graph file ends after " + std::to_string(i) +
                           " of " + std::to_string(m) + " edges");
    }
    edges.push_back(e);
  }
  return std::make_shared<GraphicMatroid>(static_cast<int>(n),
                                          std::move(edges));
}

WeightAssignment ReadWeights(std::istream& in, std::size_t expected) {
  std::vector<Rational> values;
  std::string token;
  while (in >> token) values.push_back(Rational::Parse(token));
  if (values.size() != expected) {
    throw ParameterError("expected " + std::to_string(expected) +
                         " weights, got " + std::to_string(values.size()));
  }
  return WeightAssignment::FromRationals(values);
}

void ForestIndex::Build(const GraphicMatroid& g,
                        std::span<const ElementId> forest) {
  const int n = g.vertex_count();
  root_.assign(n, -1);
  depth_.assign(n, 0);
  parent_.assign(n, -1);
  parent_edge_.assign(n, 0);
  adjacency_.resize(n);
  for (auto& list : adjacency_) list.clear();
  for (ElementId e : forest) {
    const Edge& edge = g.edge(e);
    adjacency_[edge.u].push_back({edge.v, e});
    adjacency_[edge.v].push_back({edge.u, e});
  }
  for (int start = 0; start < n; ++start) {
    if (root_[start] != -1) continue;
    root_[start] = start;
    queue_.assign(1, start);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const int x = queue_[head];
      for (const auto& [y, e] : adjacency_[x]) {
        if (root_[y] != -1) continue;
        root_[y] = start;
        depth_[y] = depth_[x] + 1;
        parent_[y] = x;
        parent_edge_[y] = e;
        queue_.push_back(y);
      }
    }
  }
}

void ForestIndex::Path(int u, int v, std::vector<ElementId>* out) const {
  while (u != v) {
    if (depth_[u] >= depth_[v]) {
      out->push_back(parent_edge_[u]);
      u = parent_[u];
    } else {
      out->push_back(parent_edge_[v]);
      v = parent_[v];
    }
  }
}

}  // namespace msplab
