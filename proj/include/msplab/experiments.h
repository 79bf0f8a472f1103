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

#ifndef MSPLAB_EXPERIMENTS_H_
#define MSPLAB_EXPERIMENTS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "msplab/engine.h"
#include "msplab/framework.h"
#include "msplab/hat.h"
#include "msplab/matroid.h"
#include "msplab/partition.h"
#include "msplab/rational.h"
#include "msplab/stats.h"
#include "msplab/weights.h"

namespace msplab {

struct ExperimentConfig {
  std::string instance;      // see InstanceSource::Parse
  std::string algorithm;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  std::string weights_path;  // optional, graphic instances only
  unsigned threads = 1;      // does not affect results

  std::string ToJson() const;
};

struct TrialInstance {
  MatroidPtr matroid;
  std::shared_ptr<const WeightAssignment> weights;
  std::shared_ptr<const HatInstance> hat;  // hat instances only
  // Positive-weight members of the max-weight basis, in slot order.
  std::vector<ElementId> slots;
};

// Instance specs:
//   uniform:k:n     U(k, n) with w(e) = e + 1
//   complete:n      K_n, fresh distinct weights per trial
//   graphic:FILE    graph file, weights from the weights file if given,
//                   else fresh distinct weights per trial
//   hat:n:alpha     hat graph
//   broom:n         K_n with a broom planted per trial
class InstanceSource {
 public:
  static InstanceSource Parse(const std::string& spec,
                              const std::string& weights_path = "");

  const std::string& spec() const { return spec_; }
  bool fixed() const { return fixed_.weights != nullptr; }
  // "element" when slots are element ids, "opt_rank" when they are ranks
  // inside OPT, "leg" for broom legs.
  const std::string& slot_key() const { return slot_key_; }
  std::size_t slot_count() const { return slot_count_; }
  std::vector<std::int64_t> SlotIds() const;

  TrialInstance Make(const TrialSeed& seed) const;

 private:
  enum class Kind { kFixed, kRandomWeights, kBroom };

  std::string spec_;
  Kind kind_ = Kind::kFixed;
  MatroidPtr matroid_;
  TrialInstance fixed_;
  int broom_n_ = 0;
  std::string slot_key_ = "element";
  std::size_t slot_count_ = 0;
};

std::vector<std::string> AlgorithmNames();

// Framework policies run with recorded (not thrown) memory violations.
std::unique_ptr<SecretaryAlgorithm> MakeAlgorithm(const std::string& name,
                                                  const TrialInstance& inst,
                                                  Tick horizon);

struct ElementEstimate {
  std::int64_t id = 0;
  std::uint64_t hits = 0;
  double p = 0;
  Interval ci;
};

struct AuditCounts {
  bool framework = false;
  ViolationCounts memory;
  bool hat = false;
  HatAudit structural;
};

void MergeViolations(ViolationCounts& into, const ViolationCounts& from);

struct EstimateReport {
  ExperimentConfig config;
  std::string slot_key;
  std::uint64_t trials = 0;
  double mean = 0;  // mean of w(A)/w(OPT)
  double ci99 = 0;  // Hoeffding half-width
  double mean_utility = 0;
  double mean_opt = 0;
  std::vector<ElementEstimate> per_element;
  double min_p = 0;
  std::int64_t min_id = -1;
  Interval min_ci;
  AuditCounts audits;

  std::string ToJson() const;
};

// Utility and per-element acceptance estimates in one pass. With a CSV
// stream, writes one row per trial.
EstimateReport RunEstimate(const ExperimentConfig& cfg,
                           std::ostream* csv = nullptr);

struct HatRow {
  int n = 0;
  std::uint64_t trials = 0;
  std::uint64_t losses = 0;
  std::uint64_t late = 0;  // trials with t_inf > T
  std::uint64_t late_losses = 0;
  double loss_p = 0;
  Interval loss_ci;
  double late_loss_p = 0;
  Interval late_ci;
  double ratio = 0;
  double ratio_ci99 = 0;
  HatAudit audit;
  ViolationCounts memory;
};

struct HatReport {
  Rational alpha;
  std::string policy;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double horizon = 0;
  std::vector<HatRow> rows;
  // Each row's late-loss interval lies strictly above the previous one.
  bool late_loss_increasing = false;

  std::string ToJson() const;
};

// Called from worker threads with every finished hat trace.
using HatTraceSink =
    std::function<void(int n, std::uint64_t trial, const RunTrace& trace)>;

HatReport HatFailureExperiment(std::span<const int> ns, const Rational& alpha,
                               const std::string& policy, std::uint64_t trials,
                               std::uint64_t seed, unsigned threads = 1,
                               const HatTraceSink& sink = nullptr);

// One row per n.
void WriteHatCsv(const HatReport& report, std::ostream& os);

struct BroomReport {
  int n = 0;
  std::string distribution;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  long double c = 0;
  double ratio = 0;
  double ratio_ci99 = 0;
  std::vector<std::uint64_t> leg_hits;  // by leg role
  double min_leg_p = 0;
  int min_leg = -1;
  Interval min_leg_ci;
  std::map<int, std::uint64_t> handle_degrees;
  std::uint64_t high_degree = 0;
  double high_fraction = 0;
  Interval high_ci;
  std::uint64_t validated = 0;  // partitions passed through the triangle check

  std::string ToJson() const;
};

// distribution: "korula-pal" or "single-part". c < 0 means n^(1/8).
BroomReport BroomAttackExperiment(int n, const std::string& distribution,
                                  std::uint64_t trials, std::uint64_t seed,
                                  unsigned threads = 1, long double c = -1,
                                  std::ostream* csv = nullptr);

struct DeterministicReport {
  int n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  int part = -1;
  std::vector<ElementId> forest;
  std::vector<std::uint64_t> hits;  // by forest position
  double ratio = 0;
  double min_p = 0;
  Interval min_ci;
  double bound = 0;  // 2 sqrt(2) / sqrt(n)
  bool passed = false;  // upper end of min_ci <= bound

  std::string ToJson() const;
};

// A Korula-Pal partition drawn once from the seed (or the given one) with
// adversarial weights, then many arrival orders.
DeterministicReport DeterministicPartitionExperiment(
    int n, std::uint64_t trials, std::uint64_t seed, unsigned threads = 1,
    const EdgePartition* partition = nullptr);

struct CoinCalibration {
  double bias = 0;
  std::uint64_t reps = 0;
  std::uint64_t flips = 0;
  std::uint64_t covered = 0;
  double coverage = 0;
};

// Flips a coin of known bias through the chunked runner and counts how often
// the 99% Wilson interval covers the bias.
CoinCalibration CalibrateCoin(double bias, std::uint64_t flips,
                              std::uint64_t reps, std::uint64_t seed,
                              unsigned threads = 1);

}  // namespace msplab

#endif  // MSPLAB_EXPERIMENTS_H_
