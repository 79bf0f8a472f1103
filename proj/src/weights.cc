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

#include "msplab/weights.h"

#include <algorithm>
#include <numeric>

#include "msplab/errors.h"

namespace msplab {

WeightAssignment WeightAssignment::FromScaled(std::vector<std::int64_t> values,
                                              std::int64_t denominator) {
  if (denominator <= 0) throw ParameterError("weight denominator must be > 0");
  for (std::int64_t v : values) {
    if (v < 0) throw ParameterError("weights must be non-negative");
  }
  WeightAssignment w;
  w.scaled_ = std::move(values);
  w.denominator_ = denominator;
  return w;
}

WeightAssignment WeightAssignment::FromRationals(
    std::span<const Rational> values) {
  std::int64_t common = 1;
  for (const Rational& r : values) {
    if (r.num() < 0) throw ParameterError("weights must be non-negative");
    std::int64_t g = std::gcd(common, r.den());
    common = CheckedNarrow(static_cast<__int128>(common / g) * r.den());
  }
  std::vector<std::int64_t> scaled;
  scaled.reserve(values.size());
  for (const Rational& r : values) {
    scaled.push_back(
        CheckedNarrow(static_cast<__int128>(r.num()) * (common / r.den())));
  }
  return FromScaled(std::move(scaled), common);
}

__int128 WeightAssignment::ScaledTotal(
    std::span<const ElementId> elements) const {
  __int128 total = 0;
  for (ElementId e : elements) total += scaled_.at(e);
  return total;
}

Rational WeightAssignment::Total(std::span<const ElementId> elements) const {
  __int128 total = ScaledTotal(elements);
  std::int64_t g = std::gcd(CheckedNarrow(total), denominator_);
  if (g == 0) return Rational(0);
  return Rational(CheckedNarrow(total / g), denominator_ / g);
}

bool WeightAssignment::AllDistinct() const {
  std::vector<std::int64_t> sorted = scaled_;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

void SortByPrecedence(std::vector<ElementId>& elements,
                      const WeightAssignment& w) {
  std::sort(elements.begin(), elements.end(),
            [&w](ElementId a, ElementId b) { return w.Precedes(a, b); });
}

}  // namespace msplab
