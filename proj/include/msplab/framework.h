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

#ifndef MSPLAB_FRAMEWORK_H_
#define MSPLAB_FRAMEWORK_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msplab/engine.h"
#include "msplab/graphs.h"
#include "msplab/matroid.h"

namespace msplab {

// Set of elements with change tracking, used for I_t.
class MemorySet {
 public:
  void Reset(std::size_t universe);

  bool contains(ElementId e) const { return in_[e]; }
  std::size_t size() const { return members_.size(); }
  const std::vector<ElementId>& members() const { return members_; }
  std::uint64_t version() const { return version_; }

  void Insert(ElementId e);
  void Erase(ElementId e);
  void Assign(std::span<const ElementId> elements);

  std::vector<ElementId> Sorted() const;

  // Net change since the previous call.
  void Drain(std::vector<ElementId>* added, std::vector<ElementId>* removed);

  // Every element inserted or erased since the previous call, with repeats.
  void TakeLog(std::vector<ElementId>* out);

 private:
  std::vector<bool> in_;
  std::vector<bool> baseline_;
  std::vector<bool> touched_flag_;
  std::vector<ElementId> touched_;
  std::vector<ElementId> members_;
  std::vector<std::size_t> position_;
  std::vector<bool> scratch_;
  std::vector<ElementId> log_;
  std::uint64_t version_ = 0;
};

// What a memory policy may look at.
struct FrameworkView {
  const MatroidOracle& matroid;
  const RevealedWeights& weights;
  Tick horizon;
  std::span<const ElementId> samples;           // precedence order
  std::span<const ElementId> accepted;          // acceptance order
  const MemorySet& memory;
};

class MemoryPolicy {
 public:
  virtual ~MemoryPolicy() = default;

  virtual std::string name() const = 0;

  // Throws ConfigurationError when the policy does not support m.
  virtual void Bind(const MatroidOracle& /*m*/) {}

  // Called once per trial before any arrival.
  virtual void Reset() {}

  // I_T, chosen when the clock passes the horizon. Must span the samples.
  virtual std::vector<ElementId> AtHorizon(const FrameworkView& view) = 0;

  // Called after every post-horizon decision, with A already updated.
  // nullopt keeps I unchanged, which is only legal after a rejection.
  virtual std::optional<std::vector<ElementId>> AfterDecision(
      const FrameworkView& view, ElementId e, Decision d) = 0;
};

enum class AcceptRoute { kAuto, kGeneric, kGraphic };
enum class ViolationMode { kThrow, kRecord };

struct FrameworkOptions {
  Tick horizon = DefaultHorizon();
  AcceptRoute route = AcceptRoute::kAuto;
  ViolationMode violations = ViolationMode::kThrow;
};

enum class MemoryCheck { kOk, kContainment, kIndependence, kSpanning };

const char* MemoryCheckName(MemoryCheck c);

struct MemoryReport {
  MemoryCheck failed = MemoryCheck::kOk;
  std::string detail;

  bool ok() const { return failed == MemoryCheck::kOk; }
};

// Checks A ⊆ I ⊆ A ∪ S, I independent and I spanning `arrived`.
MemoryReport ValidateMemory(const MatroidOracle& m,
                            std::span<const ElementId> accepted,
                            std::span<const ElementId> samples,
                            std::span<const ElementId> memory,
                            std::span<const ElementId> arrived);

struct ViolationCounts {
  std::uint64_t checks = 0;
  std::uint64_t containment = 0;
  std::uint64_t independence = 0;
  std::uint64_t spanning = 0;
  std::string first;

  std::uint64_t total() const {
    return containment + independence + spanning;
  }
};

// e ∈ MWB((M \ A)|(I ∪ {e})), for independent I ⊇ A of arrived elements.
bool FrameworkAcceptRule(const MatroidOracle& m, const RevealedWeights& w,
                         std::span<const ElementId> accepted,
                         std::span<const ElementId> memory, ElementId e);

// The greedy framework with a pluggable memory policy.
//
// Before the horizon I is the greedy basis of the samples seen so far; at the
// horizon and after every later decision the policy picks I. Memory
// invariants are checked after every event.
class GreedyFramework : public SecretaryAlgorithm {
 public:
  GreedyFramework(std::unique_ptr<MemoryPolicy> policy,
                  FrameworkOptions options = {});

  std::string name() const override { return policy_->name(); }
  bool IsFramework() const override { return true; }

  void Start(MatroidPtr m, const RevealedWeights& w,
             std::uint64_t seed) override;
  void AdvanceClock(Tick t) override;
  Decision OnArrival(ElementId e, Tick t) override;
  Tick horizon() const override { return options_.horizon; }

  bool HasMemory() const override { return true; }
  void DrainMemoryDelta(std::vector<ElementId>* added,
                        std::vector<ElementId>* removed) override {
    memory_.Drain(added, removed);
  }

  const ViolationCounts& violations() const { return violations_; }
  bool uses_graphic_route() const { return graphic_ != nullptr; }

 private:
  bool AcceptRule(ElementId e);
  void ApplyMemory(std::span<const ElementId> next);
  void Validate(ElementId arrived, bool memory_changed);
  void FullValidate();
  void Report(MemoryCheck check, const std::string& detail);
  FrameworkView View() const;

  std::unique_ptr<MemoryPolicy> policy_;
  FrameworkOptions options_;
  MatroidPtr m_;
  const GraphicMatroid* graphic_ = nullptr;
  const RevealedWeights* w_ = nullptr;

  bool past_horizon_ = false;
  std::vector<ElementId> samples_;  // precedence order
  std::vector<ElementId> accepted_;
  std::vector<ElementId> arrived_;
  std::vector<bool> is_accepted_;
  std::vector<bool> is_sample_;
  MemorySet memory_;

  ForestIndex forest_;
  std::uint64_t forest_version_ = ~std::uint64_t{0};
  std::vector<ElementId> path_;

  // Accumulator over I as of the last passing check; spans every arrival.
  std::unique_ptr<IndependenceAccumulator> span_;
  std::uint64_t span_version_ = ~std::uint64_t{0};
  std::vector<bool> checked_in_;  // membership of I at that check
  std::vector<ElementId> log_;
  std::vector<ElementId> net_added_;
  std::vector<ElementId> net_removed_;
  // Basis of the samples, kept to spot samples outside their span.
  std::unique_ptr<IndependenceAccumulator> sample_span_;
  ViolationCounts violations_;
};

// Policy by name: "supergreedy", "dynkin", "optimistic", "pessimistic".
std::unique_ptr<MemoryPolicy> MakePolicy(const std::string& name);
std::unique_ptr<MemoryPolicy> MakeSupergreedyPolicy();
std::unique_ptr<MemoryPolicy> MakeDynkinPolicy();
std::unique_ptr<MemoryPolicy> MakeOptimisticPolicy();
std::unique_ptr<MemoryPolicy> MakePessimisticPolicy();

// Reference algorithms outside the framework.
//
// Accepts e after the horizon iff e is among the k heaviest elements seen so
// far and the k-th heaviest element seen before e is a sample. With fewer
// than k elements seen there is no k-th heaviest, and e is rejected.
std::unique_ptr<SecretaryAlgorithm> MakeVirtual(Tick horizon);

// Accept e iff t(e) > T, A + e independent, and
// e ∈ MWB((M \ A)|(V_t ∪ {e})).
std::unique_ptr<SecretaryAlgorithm> MakeSupergreedyDirect(Tick horizon);

}  // namespace msplab

#endif  // MSPLAB_FRAMEWORK_H_
