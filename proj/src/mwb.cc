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

#include "msplab/mwb.h"

#include <algorithm>
#include <cstdint>

#include "msplab/errors.h"

namespace msplab {

std::vector<ElementId> MaxWeightBasis(const MatroidOracle& m,
                                      const WeightAssignment& w) {
  std::vector<ElementId> basis = GreedyBasis(m, w, m.GroundSet());
  std::sort(basis.begin(), basis.end());
  return basis;
}

std::vector<ElementId> GreedyBasis(const MatroidOracle& m,
                                   const WeightAssignment& w,
                                   std::span<const ElementId> candidates,
                                   std::span<const ElementId> contracted) {
  std::vector<ElementId> order = Canonical(candidates);
  SortByPrecedence(order, w);
  return GreedyBasisSorted(m, order, contracted);
}

std::vector<ElementId> GreedyBasisSorted(
    const MatroidOracle& m, std::span<const ElementId> sorted,
    std::span<const ElementId> contracted) {
  auto acc = m.NewAccumulator();
  for (ElementId a : contracted) {
    if (!acc->TryAdd(a)) {
      throw ContractViolation("cannot contract by a dependent set");
    }
  }
  std::vector<ElementId> basis;
  for (ElementId e : sorted) {
    if (acc->TryAdd(e)) basis.push_back(e);
  }
  return basis;
}

bool InGreedyBasis(const MatroidOracle& m, const WeightAssignment& w,
                   std::span<const ElementId> candidates, ElementId e,
                   std::span<const ElementId> contracted) {
  auto acc = m.NewAccumulator();
  for (ElementId a : contracted) {
    if (!acc->TryAdd(a)) {
      throw ContractViolation("cannot contract by a dependent set");
    }
  }
  std::vector<ElementId> heavier;
  for (ElementId c : candidates) {
    if (c != e && w.Precedes(c, e)) heavier.push_back(c);
  }
  for (ElementId c : Canonical(heavier)) acc->TryAdd(c);
  return acc->CanAdd(e);
}

std::vector<ElementId> BruteForceMwb(const MatroidOracle& m,
                                     const WeightAssignment& w) {
  std::vector<ElementId> ground = m.GroundSet();
  if (ground.size() > 20) {
    throw CapacityError("brute-force MWB supports at most 20 elements");
  }
  // Precedence order, so a subset's rank vector is its bit pattern read
  // from the lowest bit upward.
  SortByPrecedence(ground, w);
  const std::size_t n = ground.size();
  std::vector<std::uint32_t> independent;
  std::size_t best_size = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<ElementId> subset;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) subset.push_back(ground[i]);
    }
    if (!IsIndependent(m, subset)) continue;
    if (subset.size() > best_size) {
      best_size = subset.size();
      independent.clear();
    }
    if (subset.size() == best_size) independent.push_back(mask);
  }
  std::uint32_t best = 0;
  __int128 best_weight = -1;
  auto rank_sequence = [n](std::uint32_t mask) {
    std::vector<std::size_t> ranks;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) ranks.push_back(i);
    }
    return ranks;
  };
  for (std::uint32_t mask : independent) {
    __int128 weight = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) weight += w.scaled(ground[i]);
    }
    if (weight > best_weight ||
        (weight == best_weight && rank_sequence(mask) < rank_sequence(best))) {
      best_weight = weight;
      best = mask;
    }
  }
  std::vector<ElementId> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (best & (1u << i)) out.push_back(ground[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace msplab
