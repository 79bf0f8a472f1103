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

#ifndef MSPLAB_WEIGHTS_H_
#define MSPLAB_WEIGHTS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "msplab/matroid.h"
#include "msplab/rational.h"

namespace msplab {

// Non-negative exact weights over element ids [0, size()). All weights share
// one denominator, so comparisons and sums are integer operations.
class WeightAssignment {
 public:
  WeightAssignment() = default;

  // Weight of element e is values[e] / denominator.
  static WeightAssignment FromScaled(std::vector<std::int64_t> values,
                                     std::int64_t denominator = 1);
  static WeightAssignment FromRationals(std::span<const Rational> values);

  std::size_t size() const { return scaled_.size(); }
  std::int64_t denominator() const { return denominator_; }
  std::int64_t scaled(ElementId e) const { return scaled_.at(e); }
  Rational at(ElementId e) const { return Rational(scaled_.at(e), denominator_); }

  // Total order used for every tie-break: heavier first, then lower id.
  bool Precedes(ElementId a, ElementId b) const {
    const std::int64_t wa = scaled_[a];
    const std::int64_t wb = scaled_[b];
    return wa != wb ? wa > wb : a < b;
  }

  // Exact sum, as a numerator over denominator().
  __int128 ScaledTotal(std::span<const ElementId> elements) const;
  Rational Total(std::span<const ElementId> elements) const;

  bool AllDistinct() const;

 private:
  std::vector<std::int64_t> scaled_;
  std::int64_t denominator_ = 1;
};

// Sorts elements by the assignment's precedence order (heaviest first).
void SortByPrecedence(std::vector<ElementId>& elements,
                      const WeightAssignment& w);

}  // namespace msplab

#endif  // MSPLAB_WEIGHTS_H_
