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

#include "msplab/experiments.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "msplab/errors.h"
#include "msplab/graphs.h"
#include "msplab/mwb.h"
#include "msplab/rng.h"
#include "msplab/schedule.h"

namespace msplab {
namespace {

using nlohmann::ordered_json;

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

long ParseCount(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(text, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || value < 1) {
    throw ParameterError("bad number '" + text + "' in instance '" + spec + "'");
  }
  return value;
}

std::vector<ElementId> PositiveOpt(const MatroidOracle& m,
                                   const WeightAssignment& w, bool by_id) {
  std::vector<ElementId> opt = MaxWeightBasis(m, w);
  std::erase_if(opt, [&w](ElementId e) { return w.scaled(e) <= 0; });
  if (!by_id) SortByPrecedence(opt, w);
  return opt;
}

std::shared_ptr<const WeightAssignment> RandomDistinctWeights(
    std::size_t m, const TrialSeed& seed) {
  std::vector<std::int64_t> scaled(m);
  std::iota(scaled.begin(), scaled.end(), std::int64_t{1});
  std::mt19937_64 rng = SubStream(seed, StreamTag::kInstance);
  std::shuffle(scaled.begin(), scaled.end(), rng);
  return std::make_shared<const WeightAssignment>(
      WeightAssignment::FromScaled(std::move(scaled), 1));
}

ordered_json IntervalJson(const Interval& i) {
  return ordered_json::array({i.lo, i.hi});
}

std::string FormatDouble(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t AlgorithmSeed(const TrialSeed& ts) {
  std::mt19937_64 rng = SubStream(ts, StreamTag::kAlgorithm);
  return rng();
}

bool IsPolicy(const std::string& name) {
  return name == "supergreedy" || name == "dynkin" || name == "optimistic" ||
         name == "pessimistic";
}

}  // namespace

std::string ExperimentConfig::ToJson() const {
  ordered_json j;
  j["instance"] = instance;
  j["algorithm"] = algorithm;
  j["trials"] = trials;
  j["seed"] = seed;
  if (!weights_path.empty()) j["weights"] = weights_path;
  return j.dump();
}

InstanceSource InstanceSource::Parse(const std::string& spec,
                                     const std::string& weights_path) {
  InstanceSource src;
  src.spec_ = spec;
  const std::size_t colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? "" : spec.substr(colon + 1);
  const std::vector<std::string> args = Split(rest, ':');

  if (kind == "uniform") {
    if (args.size() != 2) throw ParameterError("expected uniform:k:n");
    const long k = ParseCount(args[0], spec);
    const long n = ParseCount(args[1], spec);
    if (k > n) throw ParameterError("uniform needs k <= n");
    src.matroid_ = std::make_shared<UniformMatroid>(n, k);
    std::vector<std::int64_t> scaled(n);
    std::iota(scaled.begin(), scaled.end(), std::int64_t{1});
    src.fixed_.weights = std::make_shared<const WeightAssignment>(
        WeightAssignment::FromScaled(std::move(scaled), 1));
  } else if (kind == "complete") {
    if (args.size() != 1) throw ParameterError("expected complete:n");
    const long n = ParseCount(args[0], spec);
    if (n < 2) throw ParameterError("complete graph needs n >= 2");
    src.matroid_ = CompleteGraph(static_cast<int>(n));
  } else if (kind == "graphic") {
    if (rest.empty()) throw ParameterError("expected graphic:FILE");
    std::ifstream in(rest);
    if (!in) throw ParameterError("cannot open graph file '" + rest + "'");
    src.matroid_ = ReadGraph(in);
    if (!weights_path.empty()) {
      std::ifstream win(weights_path);
      if (!win) {
        throw ParameterError("cannot open weights file '" + weights_path + "'");
      }
      src.fixed_.weights = std::make_shared<const WeightAssignment>(
          ReadWeights(win, src.matroid_->universe_size()));
    }
  } else if (kind == "hat") {
    if (args.size() != 2) throw ParameterError("expected hat:n:alpha");
    const long n = ParseCount(args[0], spec);
    auto hat = std::make_shared<const HatInstance>(
        BuildHat(static_cast<int>(n), Rational::Parse(args[1])));
    src.matroid_ = hat->graph;
    src.fixed_.weights =
        std::make_shared<const WeightAssignment>(hat->weights);
    src.fixed_.hat = hat;
  } else if (kind == "broom") {
    if (args.size() != 1) throw ParameterError("expected broom:n");
    const long n = ParseCount(args[0], spec);
    if (n < 4 || n % 2 != 0) throw ParameterError("broom needs even n >= 4");
    src.kind_ = Kind::kBroom;
    src.broom_n_ = static_cast<int>(n);
    src.matroid_ = CompleteGraph(static_cast<int>(n));
    src.slot_key_ = "leg";
    src.slot_count_ = n - 2;
    return src;
  } else {
    throw ParameterError("unknown instance kind '" + kind + "'");
  }
  if (!weights_path.empty() && kind != "graphic") {
    throw ParameterError("--weights only applies to graphic instances");
  }

  if (src.fixed_.weights != nullptr) {
    src.fixed_.matroid = src.matroid_;
    src.fixed_.slots = PositiveOpt(*src.matroid_, *src.fixed_.weights, true);
    src.slot_count_ = src.fixed_.slots.size();
  } else {
    src.kind_ = Kind::kRandomWeights;
    src.slot_key_ = "opt_rank";
    src.slot_count_ = Rank(*src.matroid_, src.matroid_->GroundSet());
  }
  return src;
}

std::vector<std::int64_t> InstanceSource::SlotIds() const {
  std::vector<std::int64_t> ids(slot_count_);
  if (fixed()) {
    std::copy(fixed_.slots.begin(), fixed_.slots.end(), ids.begin());
  } else {
    std::iota(ids.begin(), ids.end(), std::int64_t{0});
  }
  return ids;
}

TrialInstance InstanceSource::Make(const TrialSeed& seed) const {
  if (kind_ == Kind::kFixed) return fixed_;
  TrialInstance inst;
  inst.matroid = matroid_;
  if (kind_ == Kind::kBroom) {
    std::mt19937_64 rng = SubStream(seed, StreamTag::kInstance);
    BroomInstance b = PlantBroom(broom_n_, rng);
    inst.slots = b.legs;
    inst.weights = std::make_shared<const WeightAssignment>(std::move(b.weights));
    return inst;
  }
  inst.weights = RandomDistinctWeights(matroid_->universe_size(), seed);
  inst.slots = PositiveOpt(*matroid_, *inst.weights, false);
  return inst;
}

std::vector<std::string> AlgorithmNames() {
  return {"supergreedy", "dynkin",         "optimistic",   "pessimistic",
          "virtual",     "supergreedy-direct", "dynkin-direct", "korula-pal",
          "offline-greedy", "reject-all", "accept-all"};
}

std::unique_ptr<SecretaryAlgorithm> MakeAlgorithm(const std::string& name,
                                                  const TrialInstance& inst,
                                                  Tick horizon) {
  if (IsPolicy(name)) {
    FrameworkOptions options;
    options.horizon = horizon;
    options.violations = ViolationMode::kRecord;
    return std::make_unique<GreedyFramework>(MakePolicy(name), options);
  }
  if (name == "virtual") return MakeVirtual(horizon);
  if (name == "supergreedy-direct") return MakeSupergreedyDirect(horizon);
  if (name == "dynkin-direct") return MakeDynkin(horizon);
  if (name == "korula-pal") return MakeKorulaPal(horizon);
  if (name == "offline-greedy") return MakeOfflineGreedy(*inst.weights);
  if (name == "reject-all") return MakeRejectAll();
  if (name == "accept-all") return MakeAcceptAll();
  throw ParameterError("unknown algorithm '" + name + "'");
}

void MergeViolations(ViolationCounts& into, const ViolationCounts& from) {
  into.checks += from.checks;
  into.containment += from.containment;
  into.independence += from.independence;
  into.spanning += from.spanning;
  if (into.first.empty()) into.first = from.first;
}

namespace {

ordered_json ViolationJson(const ViolationCounts& v) {
  ordered_json j;
  j["checks"] = v.checks;
  j["containment"] = v.containment;
  j["independence"] = v.independence;
  j["spanning"] = v.spanning;
  if (!v.first.empty()) j["first"] = v.first;
  return j;
}

ordered_json HatAuditJson(const HatAudit& a) {
  ordered_json j;
  j["traces"] = a.traces;
  j["blocker_checks"] = a.blocker_checks;
  j["blocker_violations"] = a.blocker_violations;
  j["unprotected_checks"] = a.unprotected_checks;
  j["unprotected_violations"] = a.unprotected_violations;
  j["double_blockers"] = a.double_blockers;
  j["loss_checks"] = a.loss_checks;
  j["loss_mismatches"] = a.loss_mismatches;
  if (!a.first_counterexample.empty()) {
    j["first_counterexample"] = a.first_counterexample;
  }
  return j;
}

struct EstimateAcc {
  std::uint64_t trials = 0;
  double ratio = 0;
  double utility = 0;
  double opt = 0;
  std::vector<std::uint64_t> hits;
  ViolationCounts memory;
  HatAudit structural;
  std::string rows;
};

}  // namespace

std::string EstimateReport::ToJson() const {
  ordered_json j;
  j["config"] = ordered_json::parse(config.ToJson());
  j["trials"] = trials;
  j["mean"] = mean;
  j["ci99"] = ci99;
  j["mean_utility"] = mean_utility;
  j["mean_opt"] = mean_opt;
  j["per_element_key"] = slot_key;
  ordered_json per = ordered_json::array();
  for (const ElementEstimate& e : per_element) {
    per.push_back({{"id", e.id}, {"p", e.p}, {"ci99", IntervalJson(e.ci)}});
  }
  j["per_element"] = per;
  j["min_p"] = min_p;
  j["min_id"] = min_id;
  j["min_ci99"] = IntervalJson(min_ci);
  ordered_json audits = ordered_json::object();
  if (this->audits.framework) {
    audits["memory"] = ViolationJson(this->audits.memory);
  }
  if (this->audits.hat) audits["hat"] = HatAuditJson(this->audits.structural);
  j["audits"] = audits;
  return j.dump(2);
}

EstimateReport RunEstimate(const ExperimentConfig& cfg, std::ostream* csv) {
  if (cfg.trials == 0) throw ParameterError("trials must be positive");
  const InstanceSource source =
      InstanceSource::Parse(cfg.instance, cfg.weights_path);
  // Fail early on unknown names.
  {
    TrialInstance probe = source.Make(TrialSeed{cfg.seed, 0});
    MakeAlgorithm(cfg.algorithm, probe, DefaultHorizon());
  }
  const std::size_t slots = source.slot_count();
  const Tick horizon = DefaultHorizon();
  const bool audit_hat = source.fixed() && source.Make({}).hat != nullptr;

  if (csv != nullptr) {
    *csv << "trial_seed,utility,opt_utility,ratio";
    const std::string prefix = source.slot_key() == "element" ? "e"
                               : source.slot_key() == "leg"   ? "leg"
                                                              : "rank";
    for (std::int64_t id : source.SlotIds()) *csv << ',' << prefix << id;
    *csv << '\n';
  }

  auto make = [&] {
    EstimateAcc acc;
    acc.hits.assign(slots, 0);
    return acc;
  };
  auto trial = [&](EstimateAcc& acc, std::uint64_t i) {
    const TrialSeed ts{cfg.seed, i};
    const TrialInstance inst = source.Make(ts);
    const ArrivalSchedule schedule =
        DrawSchedule(inst.matroid->universe_size(), ts);
    std::unique_ptr<SecretaryAlgorithm> alg =
        MakeAlgorithm(cfg.algorithm, inst, horizon);
    const RunTrace trace =
        RunTrial(inst.matroid, *inst.weights, schedule, *alg, AlgorithmSeed(ts));
    const TrialRecord record = TraceMetrics(trace, *inst.weights, inst.slots);
    if (record.opt_utility == Rational(0)) {
      throw DegenerateInstance("w(OPT) = 0 in trial " + std::to_string(i));
    }
    if (inst.slots.size() != slots) {
      throw InvariantViolation("OPT size changed between trials");
    }
    ++acc.trials;
    acc.ratio += record.ratio;
    acc.utility += record.utility.ToDouble();
    acc.opt += record.opt_utility.ToDouble();
    for (std::size_t k = 0; k < slots; ++k) acc.hits[k] += record.indicators[k];
    if (const auto* fw = dynamic_cast<const GreedyFramework*>(alg.get())) {
      MergeViolations(acc.memory, fw->violations());
    }
    if (audit_hat) acc.structural.Merge(VerifyStructuralLemmas(trace, *inst.hat));
    if (csv != nullptr) {
      std::string& row = acc.rows;
      row += std::to_string(ts.Stream());
      row += ',' + FormatDouble(record.utility.ToDouble());
      row += ',' + FormatDouble(record.opt_utility.ToDouble());
      row += ',' + FormatDouble(record.ratio);
      for (std::uint8_t b : record.indicators) row += b ? ",1" : ",0";
      row += '\n';
    }
  };
  auto merge = [&](EstimateAcc& into, EstimateAcc& from) {
    into.trials += from.trials;
    into.ratio += from.ratio;
    into.utility += from.utility;
    into.opt += from.opt;
    for (std::size_t k = 0; k < slots; ++k) into.hits[k] += from.hits[k];
    MergeViolations(into.memory, from.memory);
    into.structural.Merge(from.structural);
    if (csv != nullptr) {
      *csv << from.rows;
      from.rows.clear();
    }
  };
  const EstimateAcc total = RunChunked<EstimateAcc>(
      cfg.trials, cfg.threads, make, trial, merge);

  EstimateReport report;
  report.config = cfg;
  report.slot_key = source.slot_key();
  report.trials = total.trials;
  const double n = static_cast<double>(total.trials);
  report.mean = total.ratio / n;
  report.ci99 = HoeffdingHalfWidth(total.trials);
  report.mean_utility = total.utility / n;
  report.mean_opt = total.opt / n;
  const std::vector<std::int64_t> ids = source.SlotIds();
  for (std::size_t k = 0; k < slots; ++k) {
    ElementEstimate e;
    e.id = ids[k];
    e.hits = total.hits[k];
    e.p = static_cast<double>(e.hits) / n;
    e.ci = WilsonInterval(e.hits, total.trials);
    if (report.min_id < 0 || e.p < report.min_p) {
      report.min_p = e.p;
      report.min_id = e.id;
      report.min_ci = e.ci;
    }
    report.per_element.push_back(e);
  }
  report.audits.framework = IsPolicy(cfg.algorithm);
  report.audits.memory = total.memory;
  report.audits.hat = audit_hat;
  report.audits.structural = total.structural;
  return report;
}

std::string HatReport::ToJson() const {
  ordered_json j;
  j["alpha"] = alpha.ToString();
  j["policy"] = policy;
  j["trials"] = trials;
  j["seed"] = seed;
  j["horizon"] = horizon;
  ordered_json rows_json = ordered_json::array();
  for (const HatRow& r : rows) {
    ordered_json row;
    row["n"] = r.n;
    row["trials"] = r.trials;
    row["losses"] = r.losses;
    row["loss_p"] = r.loss_p;
    row["loss_ci99"] = IntervalJson(r.loss_ci);
    row["late"] = r.late;
    row["late_losses"] = r.late_losses;
    row["late_loss_p"] = r.late_loss_p;
    row["late_loss_ci99"] = IntervalJson(r.late_ci);
    row["ratio"] = r.ratio;
    row["ratio_ci99"] = r.ratio_ci99;
    row["audit"] = HatAuditJson(r.audit);
    row["memory"] = ViolationJson(r.memory);
    rows_json.push_back(row);
  }
  j["rows"] = rows_json;
  j["late_loss_increasing"] = late_loss_increasing;
  return j.dump(2);
}

namespace {

struct HatAcc {
  std::uint64_t trials = 0;
  std::uint64_t losses = 0;
  std::uint64_t late = 0;
  std::uint64_t late_losses = 0;
  double ratio = 0;
  HatAudit audit;
  ViolationCounts memory;
};

}  // namespace

HatReport HatFailureExperiment(std::span<const int> ns, const Rational& alpha,
                               const std::string& policy, std::uint64_t trials,
                               std::uint64_t seed, unsigned threads,
                               const HatTraceSink& sink) {
  if (!IsPolicy(policy)) {
    throw ParameterError("'" + policy + "' is not a framework policy");
  }
  if (trials == 0) throw ParameterError("trials must be positive");
  HatReport report;
  report.alpha = alpha;
  report.policy = policy;
  report.trials = trials;
  report.seed = seed;
  const Tick horizon = DefaultHorizon();
  report.horizon = static_cast<double>(TickToReal(horizon));
  for (int n : ns) {
    const HatInstance hat = BuildHat(n, alpha);
    const std::vector<ElementId> opt = MaxWeightBasis(*hat.graph, hat.weights);
    const std::uint64_t master = Mix64(seed ^ Mix64(static_cast<std::uint64_t>(n)));
    auto trial = [&](HatAcc& acc, std::uint64_t i) {
      const TrialSeed ts{master, i};
      const ArrivalSchedule schedule = DrawSchedule(hat.weights.size(), ts);
      FrameworkOptions options;
      options.horizon = horizon;
      options.violations = ViolationMode::kRecord;
      GreedyFramework alg(MakePolicy(policy), options);
      const RunTrace trace =
          RunTrial(hat.graph, hat.weights, schedule, alg, AlgorithmSeed(ts));
      const bool loss = IsLoss(trace, hat);
      const bool late = schedule.time[HatInstance::kInfinity] > horizon;
      ++acc.trials;
      acc.losses += loss;
      acc.late += late;
      acc.late_losses += late && loss;
      acc.ratio += TraceMetrics(trace, hat.weights, opt).ratio;
      acc.audit.Merge(VerifyStructuralLemmas(trace, hat));
      MergeViolations(acc.memory, alg.violations());
      if (sink) sink(n, i, trace);
    };
    auto merge = [](HatAcc& into, const HatAcc& from) {
      into.trials += from.trials;
      into.losses += from.losses;
      into.late += from.late;
      into.late_losses += from.late_losses;
      into.ratio += from.ratio;
      into.audit.Merge(from.audit);
      MergeViolations(into.memory, from.memory);
    };
    const HatAcc total = RunChunked<HatAcc>(
        trials, threads, [] { return HatAcc{}; }, trial, merge);
    HatRow row;
    row.n = n;
    row.trials = total.trials;
    row.losses = total.losses;
    row.late = total.late;
    row.late_losses = total.late_losses;
    row.loss_p = static_cast<double>(total.losses) / total.trials;
    row.loss_ci = WilsonInterval(total.losses, total.trials);
    row.late_loss_p =
        total.late ? static_cast<double>(total.late_losses) / total.late : 0;
    row.late_ci = WilsonInterval(total.late_losses, total.late);
    row.ratio = total.ratio / total.trials;
    row.ratio_ci99 = HoeffdingHalfWidth(total.trials);
    row.audit = total.audit;
    row.memory = total.memory;
    report.rows.push_back(row);
  }
  report.late_loss_increasing = report.rows.size() >= 2;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (!(report.rows[i - 1].late_ci.hi < report.rows[i].late_ci.lo)) {
      report.late_loss_increasing = false;
    }
  }
  return report;
}

void WriteHatCsv(const HatReport& report, std::ostream& os) {
  os << "n,trials,losses,loss_p,late,late_losses,late_loss_p,ratio,"
        "blocker_violations,unprotected_violations,double_blockers,"
        "loss_mismatches,memory_violations\n";
  for (const HatRow& r : report.rows) {
    os << r.n << ',' << r.trials << ',' << r.losses << ','
       << FormatDouble(r.loss_p) << ',' << r.late << ',' << r.late_losses
       << ',' << FormatDouble(r.late_loss_p) << ',' << FormatDouble(r.ratio)
       << ',' << r.audit.blocker_violations << ','
       << r.audit.unprotected_violations << ',' << r.audit.double_blockers
       << ',' << r.audit.loss_mismatches << ',' << r.memory.total() << '\n';
  }
}

std::string BroomReport::ToJson() const {
  ordered_json j;
  j["n"] = n;
  j["distribution"] = distribution;
  j["trials"] = trials;
  j["seed"] = seed;
  j["c"] = static_cast<double>(c);
  j["ratio"] = ratio;
  j["ratio_ci99"] = ratio_ci99;
  ordered_json legs = ordered_json::array();
  for (std::size_t k = 0; k < leg_hits.size(); ++k) {
    legs.push_back({{"id", k},
                    {"p", static_cast<double>(leg_hits[k]) / trials}});
  }
  j["per_element_key"] = "leg";
  j["per_element"] = legs;
  j["min_leg_p"] = min_leg_p;
  j["min_leg"] = min_leg;
  j["min_leg_ci99"] = IntervalJson(min_leg_ci);
  ordered_json degrees = ordered_json::object();
  for (auto [d, count] : handle_degrees) degrees[std::to_string(d)] = count;
  j["handle_degrees"] = degrees;
  j["high_degree"] = high_degree;
  j["high_fraction"] = high_fraction;
  j["high_ci99"] = IntervalJson(high_ci);
  j["validated_partitions"] = validated;
  return j.dump(2);
}

namespace {

struct BroomAcc {
  std::uint64_t trials = 0;
  double ratio = 0;
  std::vector<std::uint64_t> leg_hits;
  std::map<int, std::uint64_t> degrees;
  std::uint64_t high = 0;
  std::uint64_t validated = 0;
  std::string rows;
};

constexpr std::uint64_t kValidatedPartitions = 8;

}  // namespace

BroomReport BroomAttackExperiment(int n, const std::string& distribution,
                                  std::uint64_t trials, std::uint64_t seed,
                                  unsigned threads, long double c,
                                  std::ostream* csv) {
  if (distribution != "korula-pal" && distribution != "single-part") {
    throw ParameterError("unknown partition distribution '" + distribution + "'");
  }
  if (n < 4 || n % 2 != 0) throw ParameterError("broom needs even n >= 4");
  if (trials == 0) throw ParameterError("trials must be positive");
  if (c < 0) c = std::pow(static_cast<long double>(n), 0.125L);
  const std::size_t legs = n - 2;
  const std::size_t m = static_cast<std::size_t>(n) * (n - 1) / 2;
  const Tick horizon = DefaultHorizon();
  const EdgePartition single = EdgePartition::SinglePart(n);

  if (csv != nullptr) {
    *csv << "trial_seed,utility,opt_utility,ratio";
    for (std::size_t k = 0; k < legs; ++k) *csv << ",leg" << k;
    *csv << '\n';
  }
  auto make = [&] {
    BroomAcc acc;
    acc.leg_hits.assign(legs, 0);
    return acc;
  };
  auto trial = [&](BroomAcc& acc, std::uint64_t i) {
    const TrialSeed ts{seed, i};
    EdgePartition sampled;
    if (distribution == "korula-pal") {
      std::mt19937_64 rng = SubStream(ts, StreamTag::kPartition);
      sampled = KorulaPalPartition(n, rng);
    }
    const EdgePartition& p = distribution == "korula-pal" ? sampled : single;
    if (i < kValidatedPartitions) {
      if (auto t = FindShatteredTriangle(p)) {
        throw DistributionFault("sampled partition shatters triangle " +
                                std::to_string((*t)[0] + 1) + "," +
                                std::to_string((*t)[1] + 1) + "," +
                                std::to_string((*t)[2] + 1));
      }
      ++acc.validated;
    }
    std::mt19937_64 broom_rng = SubStream(ts, StreamTag::kInstance);
    const BroomInstance broom = PlantBroom(n, broom_rng);
    const std::vector<Tick> times = DrawTimes(m, ts);
    std::vector<ElementId> accepted;
    try {
      accepted = RunPartitionDynkin(p, broom.weights, times, horizon);
    } catch (const ValidityBreach& e) {
      throw DistributionFault(std::string("invalid sampled partition: ") +
                              e.what());
    }
    std::sort(accepted.begin(), accepted.end());
    std::size_t won = 0;
    std::string indicators;
    for (std::size_t k = 0; k < legs; ++k) {
      const bool hit = std::binary_search(accepted.begin(), accepted.end(),
                                          broom.legs[k]);
      acc.leg_hits[k] += hit;
      won += hit;
      if (csv != nullptr) indicators += hit ? ",1" : ",0";
    }
    const int part = p.part[broom.handle];
    int degree = -1;
    for (int x = 0; x < n; ++x) {
      if (x != broom.u && p.part[CompleteEdgeId(n, broom.u, x)] == part) ++degree;
      if (x != broom.v && p.part[CompleteEdgeId(n, broom.v, x)] == part) ++degree;
    }
    ++acc.degrees[degree];
    acc.high += degree >= c;
    ++acc.trials;
    const double ratio = static_cast<double>(won) / legs;
    acc.ratio += ratio;
    if (csv != nullptr) {
      acc.rows += std::to_string(ts.Stream()) + ',' + std::to_string(won) +
                  ',' + std::to_string(legs) + ',' + FormatDouble(ratio) +
                  indicators + '\n';
    }
  };
  auto merge = [&](BroomAcc& into, BroomAcc& from) {
    into.trials += from.trials;
    into.ratio += from.ratio;
    for (std::size_t k = 0; k < legs; ++k) into.leg_hits[k] += from.leg_hits[k];
    for (auto [d, count] : from.degrees) into.degrees[d] += count;
    into.high += from.high;
    into.validated += from.validated;
    if (csv != nullptr) {
      *csv << from.rows;
      from.rows.clear();
    }
  };
  const BroomAcc total = RunChunked<BroomAcc>(trials, threads, make, trial,
                                              merge, 256);
  BroomReport r;
  r.n = n;
  r.distribution = distribution;
  r.trials = total.trials;
  r.seed = seed;
  r.c = c;
  r.ratio = total.ratio / total.trials;
  r.ratio_ci99 = HoeffdingHalfWidth(total.trials);
  r.leg_hits = total.leg_hits;
  for (std::size_t k = 0; k < legs; ++k) {
    if (r.min_leg < 0 || total.leg_hits[k] < total.leg_hits[r.min_leg]) {
      r.min_leg = static_cast<int>(k);
    }
  }
  r.min_leg_p = static_cast<double>(total.leg_hits[r.min_leg]) / total.trials;
  r.min_leg_ci = WilsonInterval(total.leg_hits[r.min_leg], total.trials);
  r.handle_degrees = total.degrees;
  r.high_degree = total.high;
  r.high_fraction = static_cast<double>(total.high) / total.trials;
  r.high_ci = WilsonInterval(total.high, total.trials);
  r.validated = total.validated;
  return r;
}

std::string DeterministicReport::ToJson() const {
  ordered_json j;
  j["n"] = n;
  j["trials"] = trials;
  j["seed"] = seed;
  j["part"] = part;
  ordered_json per = ordered_json::array();
  for (std::size_t k = 0; k < forest.size(); ++k) {
    per.push_back({{"id", forest[k]},
                   {"p", static_cast<double>(hits[k]) / trials}});
  }
  j["per_element"] = per;
  j["ratio"] = ratio;
  j["min_p"] = min_p;
  j["min_ci99"] = IntervalJson(min_ci);
  j["bound"] = bound;
  j["passed"] = passed;
  return j.dump(2);
}

DeterministicReport DeterministicPartitionExperiment(
    int n, std::uint64_t trials, std::uint64_t seed, unsigned threads,
    const EdgePartition* partition) {
  if (trials == 0) throw ParameterError("trials must be positive");
  EdgePartition p;
  if (partition != nullptr) {
    p = *partition;
    n = p.n;
  } else {
    std::mt19937_64 rng = SubStream(Mix64(seed), StreamTag::kPartition);
    p = KorulaPalPartition(n, rng);
  }
  if (!ValidatePartitionTriangles(p)) {
    throw ParameterError("partition is not valid");
  }
  const AdversaryWeights adv = DeterministicAdversaryWeights(p);
  const std::size_t k = adv.forest.size();
  const Tick horizon = DefaultHorizon();
  struct Acc {
    std::uint64_t trials = 0;
    double ratio = 0;
    std::vector<std::uint64_t> hits;
  };
  auto make = [&] {
    Acc acc;
    acc.hits.assign(k, 0);
    return acc;
  };
  auto trial = [&](Acc& acc, std::uint64_t i) {
    const std::vector<Tick> times = DrawTimes(p.edge_count(), TrialSeed{seed, i});
    std::vector<ElementId> accepted =
        RunPartitionDynkin(p, adv.weights, times, horizon);
    std::sort(accepted.begin(), accepted.end());
    std::size_t won = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const bool hit =
          std::binary_search(accepted.begin(), accepted.end(), adv.forest[j]);
      acc.hits[j] += hit;
      won += hit;
    }
    acc.ratio += static_cast<double>(won) / k;
    ++acc.trials;
  };
  auto merge = [&](Acc& into, const Acc& from) {
    into.trials += from.trials;
    into.ratio += from.ratio;
    for (std::size_t j = 0; j < k; ++j) into.hits[j] += from.hits[j];
  };
  const Acc total = RunChunked<Acc>(trials, threads, make, trial, merge);
  DeterministicReport r;
  r.n = n;
  r.trials = total.trials;
  r.seed = seed;
  r.part = adv.part;
  r.forest = adv.forest;
  r.hits = total.hits;
  r.ratio = total.ratio / total.trials;
  std::size_t argmin = 0;
  for (std::size_t j = 1; j < k; ++j) {
    if (total.hits[j] < total.hits[argmin]) argmin = j;
  }
  r.min_p = static_cast<double>(total.hits[argmin]) / total.trials;
  r.min_ci = WilsonInterval(total.hits[argmin], total.trials);
  r.bound = 2.0 * std::sqrt(2.0) / std::sqrt(static_cast<double>(n));
  r.passed = r.min_ci.hi <= r.bound;
  return r;
}

CoinCalibration CalibrateCoin(double bias, std::uint64_t flips,
                              std::uint64_t reps, std::uint64_t seed,
                              unsigned threads) {
  if (!(bias >= 0 && bias <= 1)) throw ParameterError("bias must lie in [0, 1]");
  if (flips == 0 || reps == 0) throw ParameterError("counts must be positive");
  CoinCalibration out;
  out.bias = bias;
  out.reps = reps;
  out.flips = flips;
  const long double cut = static_cast<long double>(bias) * 18446744073709551616.0L;
  for (std::uint64_t rep = 0; rep < reps; ++rep) {
    const std::uint64_t master = Mix64(seed ^ Mix64(rep));
    auto trial = [&](std::uint64_t& heads, std::uint64_t i) {
      std::mt19937_64 rng = SubStream(TrialSeed{master, i}, StreamTag::kAlgorithm);
      heads += static_cast<long double>(rng()) < cut;
    };
    const std::uint64_t heads = RunChunked<std::uint64_t>(
        flips, threads, [] { return std::uint64_t{0}; }, trial,
        [](std::uint64_t& a, std::uint64_t b) { a += b; });
    out.covered += WilsonInterval(heads, flips).Contains(bias);
  }
  out.coverage = static_cast<double>(out.covered) / reps;
  return out;
}

}  // namespace msplab
