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

#ifndef MSPLAB_MATROID_H_
#define MSPLAB_MATROID_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace msplab {

// Index of an element in a matroid's universe. The natural order on ids is
// the lexicographic tie-break order.
using ElementId = std::uint32_t;
inline constexpr ElementId kNoElement = ~ElementId{0};

// Incrementally grows an independent set. Each matroid family supplies one;
// all queries below are built on it.
class IndependenceAccumulator {
 public:
  virtual ~IndependenceAccumulator() = default;

  // True iff current ∪ {e} is independent. Throws DomainError when e is not
  // in the ground set.
  virtual bool CanAdd(ElementId e) const = 0;

  // Adds e when current ∪ {e} stays independent; returns whether it did.
  virtual bool TryAdd(ElementId e) = 0;

  virtual std::size_t size() const = 0;
};

// Independence oracle over a ground set contained in [0, universe_size()).
// Oracles are immutable after construction and safe to share across threads.
class MatroidOracle {
 public:
  virtual ~MatroidOracle() = default;

  virtual std::size_t universe_size() const = 0;
  virtual bool InGround(ElementId e) const = 0;
  virtual std::unique_ptr<IndependenceAccumulator> NewAccumulator() const = 0;
  virtual std::string Describe() const = 0;

  std::vector<ElementId> GroundSet() const;
  std::size_t ground_size() const;

  // Throws DomainError unless e is in the ground set.
  void CheckElement(ElementId e) const;
};

using MatroidPtr = std::shared_ptr<const MatroidOracle>;

struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Cycle matroid of a multigraph. Edge index = ElementId. Edges are stored
// with u < v; parallel edges are allowed, self-loops are not.
class GraphicMatroid : public MatroidOracle {
 public:
  GraphicMatroid(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(ElementId e) const { return edges_.at(e); }

  std::size_t universe_size() const override { return edges_.size(); }
  bool InGround(ElementId e) const override { return e < edges_.size(); }
  std::unique_ptr<IndependenceAccumulator> NewAccumulator() const override;
  std::string Describe() const override;

 private:
  int vertex_count_;
  std::vector<Edge> edges_;
};

// A set is independent iff it has at most k elements.
class UniformMatroid : public MatroidOracle {
 public:
  UniformMatroid(std::size_t ground_size, std::size_t k);

  std::size_t k() const { return k_; }

  std::size_t universe_size() const override { return n_; }
  bool InGround(ElementId e) const override { return e < n_; }
  std::unique_ptr<IndependenceAccumulator> NewAccumulator() const override;
  std::string Describe() const override;

 private:
  std::size_t n_;
  std::size_t k_;
};

// M|S: ground set S, element ids preserved.
class RestrictedMatroid : public MatroidOracle {
 public:
  RestrictedMatroid(MatroidPtr base, std::span<const ElementId> keep);

  const MatroidOracle& base() const { return *base_; }

  std::size_t universe_size() const override { return base_->universe_size(); }
  bool InGround(ElementId e) const override {
    return e < keep_.size() && keep_[e];
  }
  std::unique_ptr<IndependenceAccumulator> NewAccumulator() const override;
  std::string Describe() const override;

 private:
  MatroidPtr base_;
  std::vector<bool> keep_;
};

// M \ S for independent S: ground set V \ S, T independent iff T ∪ S ∈ I.
class ContractedMatroid : public MatroidOracle {
 public:
  ContractedMatroid(MatroidPtr base, std::span<const ElementId> contracted);

  const MatroidOracle& base() const { return *base_; }
  const std::vector<ElementId>& contracted() const { return contracted_; }

  std::size_t universe_size() const override { return base_->universe_size(); }
  bool InGround(ElementId e) const override {
    return base_->InGround(e) && !removed_[e];
  }
  std::unique_ptr<IndependenceAccumulator> NewAccumulator() const override;
  std::string Describe() const override;

 private:
  MatroidPtr base_;
  std::vector<ElementId> contracted_;
  std::vector<bool> removed_;
};

MatroidPtr Restrict(MatroidPtr m, std::span<const ElementId> s);

// Throws ContractViolation when s is dependent.
MatroidPtr Contract(MatroidPtr m, std::span<const ElementId> s);

// Set semantics: duplicate ids are ignored.
bool IsIndependent(const MatroidOracle& m, std::span<const ElementId> s);
std::size_t Rank(const MatroidOracle& m, std::span<const ElementId> s);

// True iff rank(i ∪ target) == rank(i). Throws ContractViolation when i is
// dependent.
bool Spans(const MatroidOracle& m, std::span<const ElementId> i,
           std::span<const ElementId> target);

// Sorted, duplicate-free copy.
std::vector<ElementId> Canonical(std::span<const ElementId> s);

}  // namespace msplab

#endif  // MSPLAB_MATROID_H_
