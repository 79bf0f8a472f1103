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

#include "msplab/matroid.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "msplab/errors.h"

namespace msplab {
namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int Find(int x) const {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
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
  mutable std::vector<int> parent_;
};

class GraphicAccumulator : public IndependenceAccumulator {
 public:
  explicit GraphicAccumulator(const GraphicMatroid& m)
      : m_(m), components_(m.vertex_count()) {}

  bool CanAdd(ElementId e) const override {
    const Edge& edge = EdgeOf(e);
    return components_.Find(edge.u) != components_.Find(edge.v);
  }

  bool TryAdd(ElementId e) override {
    const Edge& edge = EdgeOf(e);
    if (!components_.Union(edge.u, edge.v)) return false;
    ++size_;
    return true;
  }

  std::size_t size() const override { return size_; }

 private:
  const Edge& EdgeOf(ElementId e) const {
    const std::vector<Edge>& edges = m_.edges();
    if (e >= edges.size()) m_.CheckElement(e);
    return edges[e];
  }

  const GraphicMatroid& m_;
  UnionFind components_;
  std::size_t size_ = 0;
};

class UniformAccumulator : public IndependenceAccumulator {
 public:
  explicit UniformAccumulator(const UniformMatroid& m)
      : m_(m), present_(m.universe_size(), false) {}

  bool CanAdd(ElementId e) const override {
    m_.CheckElement(e);
    return !present_[e] && size_ < m_.k();
  }

  bool TryAdd(ElementId e) override {
    if (!CanAdd(e)) return false;
    present_[e] = true;
    ++size_;
    return true;
  }

  std::size_t size() const override { return size_; }

 private:
  const UniformMatroid& m_;
  std::vector<bool> present_;
  std::size_t size_ = 0;
};

class RestrictedAccumulator : public IndependenceAccumulator {
 public:
  explicit RestrictedAccumulator(const RestrictedMatroid& m)
      : m_(m), inner_(m.base().NewAccumulator()) {}

  bool CanAdd(ElementId e) const override {
    m_.CheckElement(e);
    return inner_->CanAdd(e);
  }

  bool TryAdd(ElementId e) override {
    m_.CheckElement(e);
    return inner_->TryAdd(e);
  }

  std::size_t size() const override { return inner_->size(); }

 private:
  const RestrictedMatroid& m_;
  std::unique_ptr<IndependenceAccumulator> inner_;
};

class ContractedAccumulator : public IndependenceAccumulator {
 public:
  explicit ContractedAccumulator(const ContractedMatroid& m)
      : m_(m), inner_(m.base().NewAccumulator()) {
    for (ElementId e : m.contracted()) inner_->TryAdd(e);
    offset_ = inner_->size();
  }

  bool CanAdd(ElementId e) const override {
    m_.CheckElement(e);
    return inner_->CanAdd(e);
  }

  bool TryAdd(ElementId e) override {
    m_.CheckElement(e);
    return inner_->TryAdd(e);
  }

  std::size_t size() const override { return inner_->size() - offset_; }

 private:
  const ContractedMatroid& m_;
  std::unique_ptr<IndependenceAccumulator> inner_;
  std::size_t offset_ = 0;
};

}  // namespace

std::vector<ElementId> MatroidOracle::GroundSet() const {
  std::vector<ElementId> out;
  for (std::size_t e = 0; e < universe_size(); ++e) {
    if (InGround(static_cast<ElementId>(e))) {
      out.push_back(static_cast<ElementId>(e));
    }
  }
  return out;
}

std::size_t MatroidOracle::ground_size() const {
  std::size_t count = 0;
  for (std::size_t e = 0; e < universe_size(); ++e) {
    if (InGround(static_cast<ElementId>(e))) ++count;
  }
  return count;
}

void MatroidOracle::CheckElement(ElementId e) const {
  if (!InGround(e)) {
    throw DomainError("element " + std::to_string(e) +
                      " is not in the ground set of " + Describe());
  }
}

GraphicMatroid::GraphicMatroid(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count < 0) throw ParameterError("negative vertex count");
  for (Edge& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= vertex_count || e.v >= vertex_count) {
      throw ParameterError("edge endpoint out of range");
    }
    if (e.u == e.v) throw ParameterError("self-loops are not supported");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
}

std::unique_ptr<IndependenceAccumulator> GraphicMatroid::NewAccumulator()
    const {
  return std::make_unique<GraphicAccumulator>(*this);
}

std::string GraphicMatroid::Describe() const {
  std::ostringstream os;
  os << "graphic(V=" << vertex_count_ << ", E=" << edges_.size() << ")";
  return os.str();
}

UniformMatroid::UniformMatroid(std::size_t ground_size, std::size_t k)
    : n_(ground_size), k_(k) {}

std::unique_ptr<IndependenceAccumulator> UniformMatroid::NewAccumulator()
    const {
  return std::make_unique<UniformAccumulator>(*this);
}

std::string UniformMatroid::Describe() const {
  return "uniform(k=" + std::to_string(k_) + ", n=" + std::to_string(n_) + ")";
}

RestrictedMatroid::RestrictedMatroid(MatroidPtr base,
                                     std::span<const ElementId> keep)
    : base_(std::move(base)), keep_(base_->universe_size(), false) {
  for (ElementId e : keep) {
    base_->CheckElement(e);
    keep_[e] = true;
  }
}

std::unique_ptr<IndependenceAccumulator> RestrictedMatroid::NewAccumulator()
    const {
  return std::make_unique<RestrictedAccumulator>(*this);
}

std::string RestrictedMatroid::Describe() const {
  return base_->Describe() + "|" + std::to_string(ground_size());
}

ContractedMatroid::ContractedMatroid(MatroidPtr base,
                                     std::span<const ElementId> contracted)
    : base_(std::move(base)),
      contracted_(Canonical(contracted)),
      removed_(base_->universe_size(), false) {
  if (!IsIndependent(*base_, contracted_)) {
    throw ContractViolation("cannot contract by a dependent set");
  }
  for (ElementId e : contracted_) removed_[e] = true;
}

std::unique_ptr<IndependenceAccumulator> ContractedMatroid::NewAccumulator()
    const {
  return std::make_unique<ContractedAccumulator>(*this);
}

std::string ContractedMatroid::Describe() const {
  return base_->Describe() + "/" + std::to_string(contracted_.size());
}

MatroidPtr Restrict(MatroidPtr m, std::span<const ElementId> s) {
  return std::make_shared<RestrictedMatroid>(std::move(m), s);
}

MatroidPtr Contract(MatroidPtr m, std::span<const ElementId> s) {
  if (s.empty()) return m;
  return std::make_shared<ContractedMatroid>(std::move(m), s);
}

std::vector<ElementId> Canonical(std::span<const ElementId> s) {
  std::vector<ElementId> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool IsIndependent(const MatroidOracle& m, std::span<const ElementId> s) {
  auto acc = m.NewAccumulator();
  for (ElementId e : Canonical(s)) {
    if (!acc->TryAdd(e)) return false;
  }
  return true;
}

std::size_t Rank(const MatroidOracle& m, std::span<const ElementId> s) {
  auto acc = m.NewAccumulator();
  for (ElementId e : Canonical(s)) acc->TryAdd(e);
  return acc->size();
}

bool Spans(const MatroidOracle& m, std::span<const ElementId> i,
           std::span<const ElementId> target) {
  auto acc = m.NewAccumulator();
  for (ElementId e : Canonical(i)) {
    if (!acc->TryAdd(e)) {
      throw ContractViolation("Spans requires an independent set");
    }
  }
  for (ElementId e : target) {
    if (acc->CanAdd(e)) return false;
  }
  return true;
}

}  // namespace msplab
