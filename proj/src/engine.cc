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

#include "msplab/engine.h"

#include <algorithm>
#include <optional>
#include <ostream>

#include "json.hpp"
#include "msplab/mwb.h"

namespace msplab {

const char* DecisionName(Decision d) {
  switch (d) {
    case Decision::kSampleReject:
      return "sample";
    case Decision::kAccept:
      return "accept";
    case Decision::kReject:
      return "reject";
  }
  return "?";
}

void RevealedWeights::Check(ElementId e) const {
  if (!revealed_.at(e)) {
    throw AlgorithmFault("weight of element " + std::to_string(e) +
                             " read before its arrival",
                         RunTrace{});
  }
}

RunTrace RunTrial(MatroidPtr m, const WeightAssignment& w,
                  const ArrivalSchedule& schedule, SecretaryAlgorithm& alg,
                  std::uint64_t algorithm_seed) {
  if (schedule.size() != m->universe_size() || w.size() != m->universe_size()) {
    throw ParameterError("schedule, weights and matroid sizes differ");
  }
  RevealedWeights revealed(w);
  alg.Start(m, revealed, algorithm_seed);

  RunTrace trace;
  trace.algorithm = alg.name();
  trace.instance = m->Describe();
  trace.framework = alg.IsFramework();
  trace.has_memory = alg.HasMemory();
  trace.universe = m->universe_size();
  trace.horizon = alg.horizon();
  trace.events.reserve(schedule.order.size());

  auto accepted = m->NewAccumulator();
  for (ElementId e : schedule.order) {
    if (!m->InGround(e)) continue;
    const Tick t = schedule.time[e];
    TraceEvent event;
    event.time = t;
    event.element = e;
    event.weight = w.at(e);
    alg.AdvanceClock(t);
    alg.DrainMemoryDelta(&event.pre_added, &event.pre_removed);
    revealed.Reveal(e);
    event.decision = alg.OnArrival(e, t);
    if (event.decision == Decision::kAccept) {
      if (t <= trace.horizon) {
        trace.events.push_back(std::move(event));
        throw AlgorithmFault(alg.name() + " accepted element " +
                                 std::to_string(e) + " during sampling",
                             std::move(trace));
      }
      if (!accepted->TryAdd(e)) {
        trace.events.push_back(std::move(event));
        throw AlgorithmFault(alg.name() + " accepted element " +
                                 std::to_string(e) +
                                 ", making the accepted set dependent",
                             std::move(trace));
      }
      trace.accepted.push_back(e);
    }
    alg.DrainMemoryDelta(&event.added, &event.removed);
    trace.events.push_back(std::move(event));
  }
  alg.AdvanceClock(kEndOfTime);
  alg.DrainMemoryDelta(&trace.tail_added, &trace.tail_removed);
  return trace;
}

TraceCursor::TraceCursor(const RunTrace& trace)
    : trace_(trace),
      arrived_(trace.universe, false),
      memory_(trace.universe, false),
      accepted_(trace.universe, false),
      position_(trace.universe, 0) {}

const TraceEvent& TraceCursor::Arrive() {
  if (pending_) Decide();
  const TraceEvent& event = trace_.events.at(next_);
  for (ElementId e : event.pre_removed) memory_[e] = false;
  for (ElementId e : event.pre_added) memory_[e] = true;
  arrived_[event.element] = true;
  position_[event.element] = next_;
  pending_ = true;
  return event;
}

void TraceCursor::Decide() {
  if (!pending_) return;
  const TraceEvent& event = trace_.events[next_];
  if (event.decision == Decision::kAccept) accepted_[event.element] = true;
  for (ElementId e : event.removed) memory_[e] = false;
  for (ElementId e : event.added) memory_[e] = true;
  pending_ = false;
  ++next_;
}

void TraceCursor::Finish() {
  while (!done()) {
    Arrive();
    Decide();
  }
  for (ElementId e : trace_.tail_removed) memory_[e] = false;
  for (ElementId e : trace_.tail_added) memory_[e] = true;
}

namespace {

std::vector<ElementId> Members(const std::vector<bool>& bits) {
  std::vector<ElementId> out;
  for (std::size_t e = 0; e < bits.size(); ++e) {
    if (bits[e]) out.push_back(static_cast<ElementId>(e));
  }
  return out;
}

}  // namespace

std::vector<ElementId> TraceCursor::Memory() const { return Members(memory_); }
std::vector<ElementId> TraceCursor::Accepted() const {
  return Members(accepted_);
}
std::vector<ElementId> TraceCursor::Arrived() const {
  return Members(arrived_);
}

void WriteTraceJsonl(const RunTrace& trace, std::ostream& os) {
  TraceCursor cursor(trace);
  while (!cursor.done()) {
    const TraceEvent& event = cursor.Arrive();
    cursor.Decide();
    nlohmann::json line;
    line["t"] = static_cast<double>(TickToReal(event.time));
    line["elem"] = event.element;
    line["w"] = event.weight.ToString();
    line["decision"] = DecisionName(event.decision);
    line["A"] = cursor.Accepted();
    if (trace.has_memory) {
      line["I"] = cursor.Memory();
    } else {
      line["I"] = nullptr;
    }
    os << line.dump() << '\n';
  }
}

TrialRecord TraceMetrics(const RunTrace& trace, const WeightAssignment& w,
                         std::span<const ElementId> opt) {
  TrialRecord record;
  record.utility = w.Total(trace.accepted);
  record.opt_utility = w.Total(opt);
  const __int128 opt_scaled = w.ScaledTotal(opt);
  record.ratio =
      opt_scaled == 0
          ? 0.0
          : static_cast<double>(static_cast<long double>(
                                    w.ScaledTotal(trace.accepted)) /
                                static_cast<long double>(opt_scaled));
  std::vector<bool> in_a(w.size(), false);
  for (ElementId e : trace.accepted) in_a[e] = true;
  record.indicators.reserve(opt.size());
  for (ElementId e : opt) record.indicators.push_back(in_a[e] ? 1 : 0);
  return record;
}

namespace {

class RejectAll : public SecretaryAlgorithm {
 public:
  std::string name() const override { return "reject-all"; }
  void Start(MatroidPtr, const RevealedWeights&, std::uint64_t) override {}
  Decision OnArrival(ElementId, Tick) override { return Decision::kReject; }
  Tick horizon() const override { return 0; }
};

class AcceptAll : public SecretaryAlgorithm {
 public:
  std::string name() const override { return "accept-all"; }
  void Start(MatroidPtr, const RevealedWeights&, std::uint64_t) override {}
  Decision OnArrival(ElementId, Tick) override { return Decision::kAccept; }
  Tick horizon() const override { return 0; }
};

class OfflineGreedy : public SecretaryAlgorithm {
 public:
  explicit OfflineGreedy(const WeightAssignment& w) : w_(w) {}

  std::string name() const override { return "offline-greedy"; }
  void Start(MatroidPtr m, const RevealedWeights&, std::uint64_t) override {
    in_opt_.assign(m->universe_size(), false);
    for (ElementId e : MaxWeightBasis(*m, w_)) in_opt_[e] = true;
  }
  Decision OnArrival(ElementId e, Tick) override {
    return in_opt_[e] ? Decision::kAccept : Decision::kReject;
  }
  Tick horizon() const override { return 0; }

 private:
  const WeightAssignment& w_;
  std::vector<bool> in_opt_;
};

class Dynkin : public SecretaryAlgorithm {
 public:
  explicit Dynkin(Tick horizon) : horizon_(horizon) {}

  std::string name() const override { return "dynkin-direct"; }
  void Start(MatroidPtr, const RevealedWeights& w, std::uint64_t) override {
    w_ = &w;
    best_.reset();
    done_ = false;
  }
  Decision OnArrival(ElementId e, Tick t) override {
    const bool beats = !best_ || w_->Precedes(e, *best_);
    if (beats) best_ = e;
    if (t <= horizon_) return Decision::kSampleReject;
    if (done_ || !beats) return Decision::kReject;
    done_ = true;
    return Decision::kAccept;
  }
  Tick horizon() const override { return horizon_; }

 private:
  Tick horizon_;
  const RevealedWeights* w_ = nullptr;
  std::optional<ElementId> best_;
  bool done_ = false;
};

}  // namespace

std::unique_ptr<SecretaryAlgorithm> MakeRejectAll() {
  return std::make_unique<RejectAll>();
}
std::unique_ptr<SecretaryAlgorithm> MakeAcceptAll() {
  return std::make_unique<AcceptAll>();
}
std::unique_ptr<SecretaryAlgorithm> MakeOfflineGreedy(
    const WeightAssignment& w) {
  return std::make_unique<OfflineGreedy>(w);
}
std::unique_ptr<SecretaryAlgorithm> MakeDynkin(Tick horizon) {
  return std::make_unique<Dynkin>(horizon);
}

}  // namespace msplab
