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

#ifndef MSPLAB_ENGINE_H_
#define MSPLAB_ENGINE_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "msplab/errors.h"
#include "msplab/matroid.h"
#include "msplab/rational.h"
#include "msplab/schedule.h"
#include "msplab/weights.h"

namespace msplab {

enum class Decision : std::uint8_t { kSampleReject, kAccept, kReject };

const char* DecisionName(Decision d);

// Weights as seen by an online algorithm: an element's weight can only be
// read once it has arrived.
class RevealedWeights {
 public:
  explicit RevealedWeights(const WeightAssignment& w)
      : w_(w), revealed_(w.size(), false) {}

  void Reveal(ElementId e) { revealed_.at(e) = true; }
  bool revealed(ElementId e) const { return revealed_.at(e); }

  Rational at(ElementId e) const {
    Check(e);
    return w_.at(e);
  }
  std::int64_t scaled(ElementId e) const {
    Check(e);
    return w_.scaled(e);
  }
  bool Precedes(ElementId a, ElementId b) const {
    Check(a);
    Check(b);
    return w_.Precedes(a, b);
  }

 private:
  void Check(ElementId e) const;

  const WeightAssignment& w_;
  std::vector<bool> revealed_;
};

class SecretaryAlgorithm {
 public:
  virtual ~SecretaryAlgorithm() = default;

  virtual std::string name() const = 0;
  virtual bool IsFramework() const { return false; }

  virtual void Start(MatroidPtr m, const RevealedWeights& w,
                     std::uint64_t seed) = 0;

  // Called with the time of every arrival before OnArrival, and once with
  // kEndOfTime after the last one.
  virtual void AdvanceClock(Tick /*t*/) {}

  virtual Decision OnArrival(ElementId e, Tick t) = 0;

  virtual Tick horizon() const = 0;

  // Algorithms that keep a stored independent set report its changes since
  // the previous call.
  virtual bool HasMemory() const { return false; }
  virtual void DrainMemoryDelta(std::vector<ElementId>* /*added*/,
                                std::vector<ElementId>* /*removed*/) {}
};

using AlgorithmFactory = std::function<std::unique_ptr<SecretaryAlgorithm>()>;

struct TraceEvent {
  Tick time = 0;
  ElementId element = 0;
  Rational weight;
  Decision decision = Decision::kReject;
  // Memory change between the previous event and this arrival.
  std::vector<ElementId> pre_added;
  std::vector<ElementId> pre_removed;
  // Memory change caused by the decision.
  std::vector<ElementId> added;
  std::vector<ElementId> removed;
};

struct RunTrace {
  std::string algorithm;
  std::string instance;
  bool framework = false;
  bool has_memory = false;
  std::size_t universe = 0;
  Tick horizon = 0;
  std::vector<TraceEvent> events;
  std::vector<ElementId> accepted;  // in acceptance order
  std::vector<ElementId> tail_added;
  std::vector<ElementId> tail_removed;
};

class AlgorithmFault : public Error {
 public:
  AlgorithmFault(const std::string& what, RunTrace prefix)
      : Error(what), prefix_(std::make_shared<RunTrace>(std::move(prefix))) {}

  const RunTrace& prefix() const { return *prefix_; }

 private:
  std::shared_ptr<const RunTrace> prefix_;
};

// Runs alg on one arrival order. An accept that would make A dependent
// throws AlgorithmFault carrying the trace up to and including that event.
RunTrace RunTrial(MatroidPtr m, const WeightAssignment& w,
                  const ArrivalSchedule& schedule, SecretaryAlgorithm& alg,
                  std::uint64_t algorithm_seed);

// Replays the A_t / I_t snapshots of a trace.
class TraceCursor {
 public:
  explicit TraceCursor(const RunTrace& trace);

  bool done() const { return next_ == trace_.events.size() && !pending_; }
  std::size_t index() const { return next_; }

  // Applies the pre-arrival memory change of the next event and returns it.
  // The state then describes the instant the element arrives.
  const TraceEvent& Arrive();
  // Applies the decision of the event returned by Arrive().
  void Decide();
  // Applies the change made after the last arrival.
  void Finish();

  bool arrived(ElementId e) const { return arrived_[e]; }
  bool in_memory(ElementId e) const { return memory_[e]; }
  bool accepted(ElementId e) const { return accepted_[e]; }
  bool sampled(ElementId e) const {
    return arrived_[e] && trace_.events[position_[e]].decision ==
                              Decision::kSampleReject;
  }

  std::vector<ElementId> Memory() const;
  std::vector<ElementId> Accepted() const;
  std::vector<ElementId> Arrived() const;

 private:
  const RunTrace& trace_;
  std::size_t next_ = 0;
  bool pending_ = false;
  std::vector<bool> arrived_;
  std::vector<bool> memory_;
  std::vector<bool> accepted_;
  std::vector<std::size_t> position_;
};

// One JSON object per event: {t, elem, w, decision, A, I}, with A and I
// after the event.
void WriteTraceJsonl(const RunTrace& trace, std::ostream& os);

struct TrialRecord {
  Rational utility;
  Rational opt_utility;
  double ratio = 0.0;
  std::vector<std::uint8_t> indicators;  // [opt[i] ∈ A]
};

TrialRecord TraceMetrics(const RunTrace& trace, const WeightAssignment& w,
                         std::span<const ElementId> opt);

// Baselines.
std::unique_ptr<SecretaryAlgorithm> MakeRejectAll();
std::unique_ptr<SecretaryAlgorithm> MakeAcceptAll();
// Knows all weights up front; accepts exactly MWB(M).
std::unique_ptr<SecretaryAlgorithm> MakeOfflineGreedy(
    const WeightAssignment& w);
// Classic single-choice rule on its own: reject up to the horizon, then take
// the first element heavier than everything seen.
std::unique_ptr<SecretaryAlgorithm> MakeDynkin(Tick horizon);

}  // namespace msplab

#endif  // MSPLAB_ENGINE_H_
