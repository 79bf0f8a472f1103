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

#ifndef MSPLAB_MWB_H_
#define MSPLAB_MWB_H_

#include <span>
#include <vector>

#include "msplab/matroid.h"
#include "msplab/weights.h"

namespace msplab {

// Greedy max-weight basis of m under the (weight desc, id asc) order.
// Returned sorted by id.
std::vector<ElementId> MaxWeightBasis(const MatroidOracle& m,
                                      const WeightAssignment& w);

// Greedy basis of m|candidates, optionally after contracting `contracted`
// (which must be independent and disjoint from candidates). Returned in
// precedence order.
std::vector<ElementId> GreedyBasis(const MatroidOracle& m,
                                   const WeightAssignment& w,
                                   std::span<const ElementId> candidates,
                                   std::span<const ElementId> contracted = {});

// Same as GreedyBasis but `sorted` is already in precedence order.
std::vector<ElementId> GreedyBasisSorted(
    const MatroidOracle& m, std::span<const ElementId> sorted,
    std::span<const ElementId> contracted = {});

// e ∈ MWB((m \ contracted)|(candidates ∪ {e})). Candidates equal to e are
// ignored.
bool InGreedyBasis(const MatroidOracle& m, const WeightAssignment& w,
                   std::span<const ElementId> candidates, ElementId e,
                   std::span<const ElementId> contracted = {});

// Exhaustive search over all subsets; ground_size() must be <= 20.
// Among bases of maximum weight, picks the one whose elements listed in
// precedence order are lexicographically smallest by precedence rank.
std::vector<ElementId> BruteForceMwb(const MatroidOracle& m,
                                     const WeightAssignment& w);

}  // namespace msplab

#endif  // MSPLAB_MWB_H_
