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

#ifndef MSPLAB_SCHEDULE_H_
#define MSPLAB_SCHEDULE_H_

#include <cstdint>
#include <vector>

#include "msplab/matroid.h"
#include "msplab/rng.h"

namespace msplab {

// Arrival time t in [0, 1) stored as the 64-bit fixed-point value t * 2^64.
using Tick = std::uint64_t;

inline constexpr Tick kEndOfTime = ~Tick{0};

long double TickToReal(Tick t);
Tick RealToTick(long double t);

// floor(2^64 / e).
Tick DefaultHorizon();

struct ArrivalSchedule {
  std::vector<Tick> time;        // indexed by ElementId
  std::vector<ElementId> order;  // by (time, id)

  std::size_t size() const { return time.size(); }

  // Builds `order` from `time`; equal times fall back to id order.
  static ArrivalSchedule FromTimes(std::vector<Tick> time);
};

// n i.i.d. uniform times drawn from the kSchedule sub-stream of seed.
// Arrival times only, indexed by element.
std::vector<Tick> DrawTimes(std::size_t n, const TrialSeed& seed);
ArrivalSchedule DrawSchedule(std::size_t n, const TrialSeed& seed);

}  // namespace msplab

#endif  // MSPLAB_SCHEDULE_H_
