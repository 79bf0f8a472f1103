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

#include "msplab/framework.h"

#include <algorithm>

#include "msplab/errors.h"
#include "msplab/mwb.h"

namespace msplab {

void MemorySet::Reset(std::size_t universe) {
  in_.assign(universe, false);
  baseline_.assign(universe, false);
  touched_flag_.assign(universe, false);
  scratch_.assign(universe, false);
  position_.assign(universe, 0);
  touched_.clear();
  members_.clear();
  log_.clear();
  ++version_;
}

void MemorySet::Insert(ElementId e) {
  if (in_[e]) return;
  in_[e] = true;
  position_[e] = members_.size();
  members_.push_back(e);
  log_.push_back(e);
  if (!touched_flag_[e]) {
    touched_flag_[e] = true;
    touched_.push_back(e);
  }
  ++version_;
}

void MemorySet::Erase(ElementId e) {
  if (!in_[e]) return;
  in_[e] = false;
  const std::size_t pos = position_[e];
  members_[pos] = members_.back();
  position_[members_[pos]] = pos;
  members_.pop_back();
  log_.push_back(e);
  if (!touched_flag_[e]) {
    touched_flag_[e] = true;
    touched_.push_back(e);
  }
  ++version_;
}

void MemorySet::Assign(std::span<const ElementId> elements) {
  for (ElementId e : elements) scratch_[e] = true;
  std::vector<ElementId> drop;
  for (ElementId e : members_) {
    if (!scratch_[e]) drop.push_back(e);
  }
  for (ElementId e : drop) Erase(e);
  for (ElementId e : elements) {
    scratch_[e] = false;
    Insert(e);
  }
}

void MemorySet::TakeLog(std::vector<ElementId>* out) {
  out->swap(log_);
  log_.clear();
}

std::vector<ElementId> MemorySet::Sorted() const {
  std::vector<ElementId> out = members_;
  std::sort(out.begin(), out.end());
  return out;
}

void MemorySet::Drain(std::vector<ElementId>* added,
                      std::vector<ElementId>* removed) {
  added->clear();
  removed->clear();
  for (ElementId e : touched_) {
    touched_flag_[e] = false;
    if (in_[e] == baseline_[e]) continue;
    (in_[e] ? added : removed)->push_back(e);
    baseline_[e] = in_[e];
  }
  touched_.clear();
  std::sort(added->begin(), added->end());
  std::sort(removed->begin(), removed->end());
}

const char* MemoryCheckName(MemoryCheck c) {
  switch (c) {
    case MemoryCheck::kOk:
      return "ok";
    case MemoryCheck::kContainment:
      return "containment";
    case MemoryCheck::kIndependence:
      return "independence";
    case MemoryCheck::kSpanning:
      return "spanning";
  }
  return "?";
}

MemoryReport ValidateMemory(const MatroidOracle& m,
                            std::span<const ElementId> accepted,
                            std::span<const ElementId> samples,
                            std::span<const ElementId> memory,
                            std::span<const ElementId> arrived) {
  std::vector<ElementId> a = Canonical(accepted);
  std::vector<ElementId> s = Canonical(samples);
  std::vector<ElementId> mem = Canonical(memory);
  for (ElementId e : a) {
    if (!std::binary_search(mem.begin(), mem.end(), e)) {
      return {MemoryCheck::kContainment,
              "accepted element " + std::to_string(e) + " missing from I"};
    }
  }
  for (ElementId e : mem) {
    if (!std::binary_search(a.begin(), a.end(), e) &&
        !std::binary_search(s.begin(), s.end(), e)) {
      return {MemoryCheck::kContainment,
              "element " + std::to_string(e) +
                  " in I is neither accepted nor a sample"};
    }
  }
  auto acc = m.NewAccumulator();
  for (ElementId e : mem) {
    if (!acc->TryAdd(e)) {
      return {MemoryCheck::kIndependence,
              "I is dependent at element " + std::to_string(e)};
    }
  }
  for (ElementId e : arrived) {
    if (acc->CanAdd(e)) {
      return {MemoryCheck::kSpanning,
              "I does not span arrived element " + std::to_string(e)};
    }
  }
  return {};
}

bool FrameworkAcceptRule(const MatroidOracle& m, const RevealedWeights& w,
                         std::span<const ElementId> accepted,
                         std::span<const ElementId> memory, ElementId e) {
  std::vector<ElementId> a = Canonical(accepted);
  auto acc = m.NewAccumulator();
  for (ElementId x : a) {
    if (!acc->TryAdd(x)) throw FrameworkFault("accepted set is dependent");
  }
  for (ElementId f : memory) {
    if (std::binary_search(a.begin(), a.end(), f)) continue;
    if (w.Precedes(f, e)) acc->TryAdd(f);
  }
  return acc->CanAdd(e);
}

GreedyFramework::GreedyFramework(std::unique_ptr<MemoryPolicy> policy,
                                 FrameworkOptions options)
    : policy_(std::move(policy)), options_(options) {}

void GreedyFramework::Start(MatroidPtr m, const RevealedWeights& w,
                            std::uint64_t /*seed*/) {
  m_ = std::move(m);
  w_ = &w;
  policy_->Bind(*m_);
  policy_->Reset();
  graphic_ = nullptr;
  if (options_.route != AcceptRoute::kGeneric) {
    graphic_ = dynamic_cast<const GraphicMatroid*>(m_.get());
    if (graphic_ == nullptr && options_.route == AcceptRoute::kGraphic) {
      throw ConfigurationError("graphic accept route needs a graphic matroid");
    }
  }
  const std::size_t n = m_->universe_size();
  past_horizon_ = false;
  samples_.clear();
  accepted_.clear();
  arrived_.clear();
  is_accepted_.assign(n, false);
  is_sample_.assign(n, false);
  memory_.Reset(n);
  forest_version_ = ~std::uint64_t{0};
  span_ = m_->NewAccumulator();
  span_version_ = memory_.version();
  checked_in_.assign(n, false);
  sample_span_ = m_->NewAccumulator();
  violations_ = {};
}

FrameworkView GreedyFramework::View() const {
  return FrameworkView{*m_, *w_, options_.horizon, samples_, accepted_,
                       memory_};
}

void GreedyFramework::AdvanceClock(Tick t) {
  if (past_horizon_ || t <= options_.horizon) return;
  past_horizon_ = true;
  std::vector<ElementId> next = policy_->AtHorizon(View());
  const std::uint64_t before = memory_.version();
  ApplyMemory(next);
  if (memory_.version() != before) Validate(kNoElement, true);
}

Decision GreedyFramework::OnArrival(ElementId e, Tick t) {
  arrived_.push_back(e);
  if (t <= options_.horizon) {
    is_sample_[e] = true;
    auto pos = std::lower_bound(
        samples_.begin(), samples_.end(), e,
        [this](ElementId a, ElementId b) { return w_->Precedes(a, b); });
    samples_.insert(pos, e);
    const std::uint64_t before = memory_.version();
    if (sample_span_->TryAdd(e)) {
      // Outside the span of the earlier samples, so no basis member leaves.
      memory_.Insert(e);
    } else {
      ApplyMemory(GreedyBasisSorted(*m_, samples_));
    }
    Validate(e, memory_.version() != before);
    return Decision::kSampleReject;
  }
  const bool accept = AcceptRule(e);
  const Decision d = accept ? Decision::kAccept : Decision::kReject;
  if (accept) {
    is_accepted_[e] = true;
    accepted_.push_back(e);
  }
  const std::uint64_t before = memory_.version();
  std::optional<std::vector<ElementId>> next =
      policy_->AfterDecision(View(), e, d);
  if (next) ApplyMemory(*next);
  Validate(e, accept || memory_.version() != before);
  return d;
}

bool GreedyFramework::AcceptRule(ElementId e) {
  if (graphic_ == nullptr) {
    return FrameworkAcceptRule(*m_, *w_, accepted_, memory_.members(), e);
  }
  if (forest_version_ != memory_.version()) {
    forest_.Build(*graphic_, memory_.members());
    forest_version_ = memory_.version();
  }
  const Edge& edge = graphic_->edge(e);
  if (!forest_.Connected(edge.u, edge.v)) return true;
  path_.clear();
  forest_.Path(edge.u, edge.v, &path_);
  for (ElementId f : path_) {
    if (!is_accepted_[f] && w_->Precedes(e, f)) return true;
  }
  return false;
}

void GreedyFramework::ApplyMemory(std::span<const ElementId> next) {
  memory_.Assign(next);
}

void GreedyFramework::Report(MemoryCheck check, const std::string& detail) {
  switch (check) {
    case MemoryCheck::kContainment:
      ++violations_.containment;
      break;
    case MemoryCheck::kIndependence:
      ++violations_.independence;
      break;
    case MemoryCheck::kSpanning:
      ++violations_.spanning;
      break;
    case MemoryCheck::kOk:
      return;
  }
  const std::string message = policy_->name() + ": " +
                              MemoryCheckName(check) + " violation: " + detail;
  if (violations_.first.empty()) violations_.first = message;
  if (options_.violations == ViolationMode::kThrow) {
    throw FrameworkFault(message);
  }
}

void GreedyFramework::Validate(ElementId arrived, bool memory_changed) {
  ++violations_.checks;
  memory_.TakeLog(&log_);
  const bool trusted = span_ != nullptr && span_version_ != ~std::uint64_t{0};
  if (!trusted) {
    FullValidate();
    return;
  }
  if (!memory_changed && span_version_ == memory_.version()) {
    if (arrived != kNoElement && span_->CanAdd(arrived)) {
      span_version_ = ~std::uint64_t{0};
      Report(MemoryCheck::kSpanning,
             "I does not span arrived element " + std::to_string(arrived));
    }
    return;
  }
  // The previous I passed, so only the net change needs checking.
  net_added_.clear();
  net_removed_.clear();
  for (ElementId x : log_) {
    const bool now = memory_.contains(x);
    if (now == checked_in_[x]) continue;
    checked_in_[x] = now;
    (now ? net_added_ : net_removed_).push_back(x);
  }
  span_version_ = ~std::uint64_t{0};
  auto fail = [this](MemoryCheck check, const std::string& detail) {
    std::fill(checked_in_.begin(), checked_in_.end(), false);
    Report(check, detail);
  };
  for (ElementId x : net_added_) {
    if (!is_accepted_[x] && !is_sample_[x]) {
      return fail(MemoryCheck::kContainment,
                  "element " + std::to_string(x) +
                      " in I is neither accepted nor a sample");
    }
  }
  for (ElementId x : net_removed_) {
    if (is_accepted_[x]) {
      return fail(MemoryCheck::kContainment,
                  "accepted element " + std::to_string(x) + " missing from I");
    }
  }
  if (arrived != kNoElement && is_accepted_[arrived] &&
      !memory_.contains(arrived)) {
    return fail(MemoryCheck::kContainment,
                "accepted element " + std::to_string(arrived) +
                    " missing from I");
  }
  if (net_removed_.empty()) {
    for (ElementId x : net_added_) {
      if (!span_->TryAdd(x)) {
        return fail(MemoryCheck::kIndependence,
                    "I is dependent at element " + std::to_string(x));
      }
    }
  } else {
    auto acc = m_->NewAccumulator();
    for (ElementId x : memory_.members()) {
      if (!acc->TryAdd(x)) {
        return fail(MemoryCheck::kIndependence,
                    "I is dependent at element " + std::to_string(x));
      }
    }
    // Everything arrived was spanned by the old I, and the old I is spanned
    // by the new I plus the removed elements.
    for (ElementId x : net_removed_) {
      if (acc->CanAdd(x)) {
        return fail(MemoryCheck::kSpanning,
                    "I does not span arrived element " + std::to_string(x));
      }
    }
    span_ = std::move(acc);
  }
  if (arrived != kNoElement && span_->CanAdd(arrived)) {
    return fail(MemoryCheck::kSpanning,
                "I does not span arrived element " + std::to_string(arrived));
  }
  span_version_ = memory_.version();
}

// From scratch, used after a recorded violation.
void GreedyFramework::FullValidate() {
  const MemoryReport report =
      ValidateMemory(*m_, accepted_, samples_, memory_.members(), arrived_);
  if (!report.ok()) {
    Report(report.failed, report.detail);
    return;
  }
  span_ = m_->NewAccumulator();
  for (ElementId x : memory_.members()) span_->TryAdd(x);
  std::fill(checked_in_.begin(), checked_in_.end(), false);
  for (ElementId x : memory_.members()) checked_in_[x] = true;
  span_version_ = memory_.version();
}

namespace {

class SupergreedyPolicy : public MemoryPolicy {
 public:
  std::string name() const override { return "supergreedy"; }

  std::vector<ElementId> AtHorizon(const FrameworkView& view) override {
    return GreedyBasisSorted(view.matroid, view.samples);
  }

  std::optional<std::vector<ElementId>> AfterDecision(
      const FrameworkView& view, ElementId, Decision d) override {
    if (d != Decision::kAccept) return std::nullopt;
    std::vector<ElementId> next =
        GreedyBasisSorted(view.matroid, view.samples, view.accepted);
    next.insert(next.end(), view.accepted.begin(), view.accepted.end());
    return next;
  }
};

const UniformMatroid& RequireUniform(const MatroidOracle& m,
                                     const std::string& policy) {
  const auto* u = dynamic_cast<const UniformMatroid*>(&m);
  if (u == nullptr || u->k() == 0) {
    throw ConfigurationError(policy + " needs a k-uniform matroid with k >= 1");
  }
  return *u;
}

class DynkinPolicy : public MemoryPolicy {
 public:
  std::string name() const override { return "dynkin"; }

  void Bind(const MatroidOracle& m) override {
    if (RequireUniform(m, name()).k() != 1) {
      throw ConfigurationError("dynkin needs a 1-uniform matroid");
    }
  }

  std::vector<ElementId> AtHorizon(const FrameworkView& view) override {
    if (view.samples.empty()) return {};
    return {view.samples.front()};
  }

  std::optional<std::vector<ElementId>> AfterDecision(
      const FrameworkView& view, ElementId, Decision d) override {
    if (d != Decision::kAccept) return std::nullopt;
    return std::vector<ElementId>(view.accepted.begin(), view.accepted.end());
  }
};

// Shared by the optimistic and pessimistic rules: I = A ∪ U, U starts as the
// k heaviest samples and loses one element when an accept overfills I.
class UniformListPolicy : public MemoryPolicy {
 public:
  explicit UniformListPolicy(bool pessimistic) : pessimistic_(pessimistic) {}

  std::string name() const override {
    return pessimistic_ ? "pessimistic" : "optimistic";
  }

  void Bind(const MatroidOracle& m) override {
    k_ = RequireUniform(m, name()).k();
  }

  void Reset() override { list_.clear(); }

  std::vector<ElementId> AtHorizon(const FrameworkView& view) override {
    const std::size_t take = std::min(k_, view.samples.size());
    list_.assign(view.samples.begin(), view.samples.begin() + take);
    return list_;
  }

  std::optional<std::vector<ElementId>> AfterDecision(
      const FrameworkView& view, ElementId e, Decision d) override {
    if (d != Decision::kAccept) return std::nullopt;
    if (view.accepted.size() + list_.size() > k_ && !list_.empty()) {
      auto victim = list_.end() - 1;
      if (pessimistic_) {
        auto lighter = std::find_if(
            list_.begin(), list_.end(),
            [&](ElementId u) { return view.weights.Precedes(e, u); });
        if (lighter != list_.end()) victim = lighter;
      }
      list_.erase(victim);
    }
    std::vector<ElementId> next(view.accepted.begin(), view.accepted.end());
    next.insert(next.end(), list_.begin(), list_.end());
    return next;
  }

 private:
  bool pessimistic_;
  std::size_t k_ = 1;
  std::vector<ElementId> list_;  // precedence order
};

class VirtualAlgorithm : public SecretaryAlgorithm {
 public:
  explicit VirtualAlgorithm(Tick horizon) : horizon_(horizon) {}

  std::string name() const override { return "virtual"; }

  void Start(MatroidPtr m, const RevealedWeights& w, std::uint64_t) override {
    k_ = RequireUniform(*m, name()).k();
    w_ = &w;
    seen_.clear();
    is_sample_.assign(m->universe_size(), false);
  }

  Decision OnArrival(ElementId e, Tick t) override {
    std::optional<ElementId> kth;
    if (seen_.size() >= k_) kth = seen_[k_ - 1];
    auto pos = std::lower_bound(
        seen_.begin(), seen_.end(), e,
        [this](ElementId a, ElementId b) { return w_->Precedes(a, b); });
    seen_.insert(pos, e);
    if (t <= horizon_) {
      is_sample_[e] = true;
      return Decision::kSampleReject;
    }
    if (!kth) return Decision::kReject;
    const bool in_top = w_->Precedes(e, *kth);
    return in_top && is_sample_[*kth] ? Decision::kAccept : Decision::kReject;
  }

  Tick horizon() const override { return horizon_; }

 private:
  Tick horizon_;
  std::size_t k_ = 1;
  const RevealedWeights* w_ = nullptr;
  std::vector<ElementId> seen_;  // precedence order
  std::vector<bool> is_sample_;
};

class SupergreedyDirect : public SecretaryAlgorithm {
 public:
  explicit SupergreedyDirect(Tick horizon) : horizon_(horizon) {}

  std::string name() const override { return "supergreedy-direct"; }

  void Start(MatroidPtr m, const RevealedWeights& w, std::uint64_t) override {
    m_ = std::move(m);
    w_ = &w;
    arrived_.clear();
    accepted_.clear();
    is_accepted_.assign(m_->universe_size(), false);
  }

  Decision OnArrival(ElementId e, Tick t) override {
    if (t <= horizon_) {
      arrived_.push_back(e);
      return Decision::kSampleReject;
    }
    auto acc = m_->NewAccumulator();
    for (ElementId a : accepted_) acc->TryAdd(a);
    bool accept = acc->CanAdd(e);
    if (accept) {
      // The span of what gets added does not depend on insertion order.
      for (ElementId f : arrived_) {
        if (!is_accepted_[f] && w_->Precedes(f, e)) acc->TryAdd(f);
      }
      accept = acc->CanAdd(e);
    }
    arrived_.push_back(e);
    if (!accept) return Decision::kReject;
    accepted_.push_back(e);
    is_accepted_[e] = true;
    return Decision::kAccept;
  }

  Tick horizon() const override { return horizon_; }

 private:
  Tick horizon_;
  MatroidPtr m_;
  const RevealedWeights* w_ = nullptr;
  std::vector<ElementId> arrived_;
  std::vector<ElementId> accepted_;
  std::vector<bool> is_accepted_;
};

}  // namespace

std::unique_ptr<MemoryPolicy> MakeSupergreedyPolicy() {
  return std::make_unique<SupergreedyPolicy>();
}
std::unique_ptr<MemoryPolicy> MakeDynkinPolicy() {
  return std::make_unique<DynkinPolicy>();
}
std::unique_ptr<MemoryPolicy> MakeOptimisticPolicy() {
  return std::make_unique<UniformListPolicy>(false);
}
std::unique_ptr<MemoryPolicy> MakePessimisticPolicy() {
  return std::make_unique<UniformListPolicy>(true);
}

std::unique_ptr<MemoryPolicy> MakePolicy(const std::string& name) {
  if (name == "supergreedy") return MakeSupergreedyPolicy();
  if (name == "dynkin") return MakeDynkinPolicy();
  if (name == "optimistic") return MakeOptimisticPolicy();
  if (name == "pessimistic") return MakePessimisticPolicy();
  throw ParameterError("unknown memory policy \"" + name + "\"");
}

std::unique_ptr<SecretaryAlgorithm> MakeVirtual(Tick horizon) {
  return std::make_unique<VirtualAlgorithm>(horizon);
}

std::unique_ptr<SecretaryAlgorithm> MakeSupergreedyDirect(Tick horizon) {
  return std::make_unique<SupergreedyDirect>(horizon);
}

}  // namespace msplab
