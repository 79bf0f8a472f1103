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

#include "msplab/schedule.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "msplab/errors.h"

namespace msplab {
namespace {

constexpr long double kTwo64 = 18446744073709551616.0L;

}  // namespace

long double TickToReal(Tick t) { return static_cast<long double>(t) / kTwo64; }

Tick RealToTick(long double t) {
  if (!(t >= 0.0L)) return 0;
  if (t >= 1.0L) return kEndOfTime;
  return static_cast<Tick>(std::floor(t * kTwo64));
}

Tick DefaultHorizon() {
  static const Tick horizon = RealToTick(1.0L / std::exp(1.0L));
  return horizon;
}

ArrivalSchedule ArrivalSchedule::FromTimes(std::vector<Tick> time) {
  ArrivalSchedule s;
  s.time = std::move(time);
  s.order.resize(s.time.size());
  std::iota(s.order.begin(), s.order.end(), ElementId{0});
  std::sort(s.order.begin(), s.order.end(), [&s](ElementId a, ElementId b) {
    return s.time[a] != s.time[b] ? s.time[a] < s.time[b] : a < b;
  });
  return s;
}

std::vector<Tick> DrawTimes(std::size_t n, const TrialSeed& seed) {
  if (n == 0) throw ParameterError("schedule needs at least one element");
  std::mt19937_64 rng = SubStream(seed, StreamTag::kSchedule);
  std::vector<Tick> time(n);
  for (Tick& t : time) t = rng();
  return time;
}

ArrivalSchedule DrawSchedule(std::size_t n, const TrialSeed& seed) {
  return ArrivalSchedule::FromTimes(DrawTimes(n, seed));
}

}  // namespace msplab
