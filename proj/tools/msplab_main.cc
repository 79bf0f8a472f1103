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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "msplab/engine.h"
#include "msplab/errors.h"
#include "msplab/experiments.h"
#include "msplab/hat.h"
#include "msplab/partition.h"
#include "msplab/recurrence.h"
#include "msplab/rng.h"
#include "msplab/schedule.h"
#include "msplab/stats.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitParameter = 2;
constexpr int kExitFault = 3;

// Holds either the requested file or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw msplab::ParameterError("cannot write '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::uint64_t ResolveSeed(std::uint64_t flag) {
  const char* env = std::getenv("MSPLAB_SEED");
  if (env == nullptr || *env == '\0') return flag;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 0);
  if (end == env || *end != '\0') {
    throw msplab::ParameterError("MSPLAB_SEED is not an integer");
  }
  return v;
}

msplab::EdgePartition LoadPartition(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw msplab::ParameterError("cannot open '" + path + "'");
  return msplab::ReadPartition(in, n);
}

ordered_json IntervalJson(const msplab::Interval& i) {
  return ordered_json::array({i.lo, i.hi});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo lab for matroid secretary algorithms"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  unsigned threads = msplab::DefaultThreads();
  std::string out_path;
  std::string emit = "json";

  // simulate
  std::string sim_matroid;
  std::string sim_alg;
  std::string sim_weights;
  std::uint64_t sim_trial = 0;
  auto* simulate = app.add_subcommand("simulate", "run one trial and print its trace");
  simulate->add_option("--matroid", sim_matroid, "instance spec")->required();
  simulate->add_option("--alg", sim_alg, "algorithm")->required();
  simulate->add_option("--weights", sim_weights, "weights file (graphic)");
  simulate->add_option("--seed", seed, "master seed");
  simulate->add_option("--trial", sim_trial, "trial index");
  simulate->add_option("--out", out_path, "output path (default stdout)");

  // estimate
  msplab::ExperimentConfig cfg;
  auto* estimate = app.add_subcommand("estimate", "estimate competitiveness");
  estimate->add_option("--matroid", cfg.instance, "instance spec")->required();
  estimate->add_option("--alg", cfg.algorithm, "algorithm")->required();
  estimate->add_option("--weights", cfg.weights_path, "weights file (graphic)");
  estimate->add_option("--trials", cfg.trials, "trial count");
  estimate->add_option("--seed", seed, "master seed");
  estimate->add_option("--threads", threads, "worker threads");
  estimate->add_option("--emit", emit, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  estimate->add_option("--out", out_path, "output path (default stdout)");

  // hat
  std::vector<int> hat_ns{50, 200, 800};
  std::string hat_alpha = "5";
  std::string hat_policy = "supergreedy";
  std::uint64_t hat_trials = 10000;
  auto* hat = app.add_subcommand("hat", "failure of framework policies on hat graphs");
  hat->add_option("--n", hat_ns, "claw counts")->delimiter(',');
  hat->add_option("--alpha", hat_alpha, "weight ratio, > 1");
  hat->add_option("--policy", hat_policy, "framework policy");
  hat->add_option("--trials", hat_trials, "trials per n");
  hat->add_option("--seed", seed, "master seed");
  hat->add_option("--threads", threads, "worker threads");
  hat->add_option("--emit", emit, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  hat->add_option("--out", out_path, "output path (default stdout)");
  std::string trace_dir;
  std::uint64_t trace_count = 10;
  hat->add_option("--trace-dir", trace_dir, "write JSONL traces here");
  hat->add_option("--trace-count", trace_count, "traces to keep per n");

  // broom
  int broom_n = 256;
  std::string dist = "korula-pal";
  std::uint64_t broom_trials = 100000;
  double broom_c = -1;
  auto add_broom_options = [&](CLI::App* cmd) {
    cmd->add_option("--n", broom_n, "vertex count (even)");
    cmd->add_option("--dist", dist, "korula-pal or single-part");
    cmd->add_option("--trials", broom_trials, "trial count");
    cmd->add_option("--seed", seed, "master seed");
    cmd->add_option("--C", broom_c, "high-degree threshold (default n^(1/8))");
    cmd->add_option("--threads", threads, "worker threads");
    cmd->add_option("--emit", emit, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", out_path, "output path (default stdout)");
  };
  auto* broom = app.add_subcommand("broom", "broom attack on a partition distribution");
  add_broom_options(broom);

  // partition
  auto* partition = app.add_subcommand("partition", "edge partitions of K_n");
  partition->require_subcommand(1);
  std::string part_file;
  int part_n = 0;
  double part_c = 2;
  auto* check = partition->add_subcommand("check", "validate a partition file");
  check->add_option("--file", part_file, "partition file")->required();
  check->add_option("--n", part_n, "vertex count (default: largest vertex)");
  auto* attack = partition->add_subcommand("attack", "broom attack");
  add_broom_options(attack);
  auto* degrees = partition->add_subcommand("degrees", "edge degrees of a partition");
  degrees->add_option("--file", part_file, "partition file")->required();
  degrees->add_option("--n", part_n, "vertex count (default: largest vertex)");
  degrees->add_option("--C", part_c, "low-degree threshold");
  int adv_n = 64;
  std::uint64_t adv_trials = 100000;
  auto* adversary = partition->add_subcommand(
      "adversary", "fixed partition against adversarial weights");
  adversary->add_option("--n", adv_n, "vertex count");
  adversary->add_option("--file", part_file, "partition file (default: sampled)");
  adversary->add_option("--trials", adv_trials, "trial count");
  adversary->add_option("--seed", seed, "master seed");
  adversary->add_option("--threads", threads, "worker threads");
  adversary->add_option("--out", out_path, "output path (default stdout)");

  // recurrence
  double eps = 0.375;
  std::int64_t big_n = 1000000;
  auto* recurrence = app.add_subcommand("recurrence", "low-degree recurrence numerics");
  recurrence->add_option("--eps", eps, "epsilon in (0, 1/2)");
  recurrence->add_option("--N", big_n, "largest n");

  // bounds
  std::vector<double> bound_ns{1e4, 1e6};
  std::uint64_t bound_trials = 100000;
  auto* bounds = app.add_subcommand("bounds", "failure-probability bound functions");
  bounds->add_option("--n", bound_ns, "values of n")->delimiter(',');
  bounds->add_option("--trials", bound_trials, "trials for the sampling check");
  bounds->add_option("--seed", seed, "master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (app.get_subcommands().empty()) std::cerr << app.help();
    return kExitParameter;
  }

  try {
    seed = ResolveSeed(seed);
    if (*simulate) {
      const auto source = msplab::InstanceSource::Parse(sim_matroid, sim_weights);
      const msplab::TrialSeed ts{seed, sim_trial};
      const msplab::TrialInstance inst = source.Make(ts);
      const auto schedule =
          msplab::DrawSchedule(inst.matroid->universe_size(), ts);
      auto alg = msplab::MakeAlgorithm(sim_alg, inst, msplab::DefaultHorizon());
      std::mt19937_64 rng = msplab::SubStream(ts, msplab::StreamTag::kAlgorithm);
      msplab::RunTrace trace =
          msplab::RunTrial(inst.matroid, *inst.weights, schedule, *alg, rng());
      trace.instance = sim_matroid;
      Output out(out_path);
      msplab::WriteTraceJsonl(trace, out.stream());
      const auto record = msplab::TraceMetrics(trace, *inst.weights, inst.slots);
      std::cerr << "utility " << record.utility.ToString() << " of "
                << record.opt_utility.ToString() << " (ratio " << record.ratio
                << ")\n";
    } else if (*estimate) {
      cfg.seed = seed;
      cfg.threads = threads;
      Output out(out_path);
      if (emit == "csv") {
        const auto report = msplab::RunEstimate(cfg, &out.stream());
        std::cerr << "mean " << report.mean << " +- " << report.ci99
                  << ", min p " << report.min_p << '\n';
      } else {
        out.stream() << msplab::RunEstimate(cfg).ToJson() << '\n';
      }
    } else if (*hat) {
      msplab::HatTraceSink sink;
      if (!trace_dir.empty()) {
        std::filesystem::create_directories(trace_dir);
        sink = [&](int n, std::uint64_t trial, const msplab::RunTrace& trace) {
          if (trial >= trace_count) return;
          std::ofstream f(trace_dir + "/hat_n" + std::to_string(n) + "_trial" +
                          std::to_string(trial) + ".jsonl");
          msplab::WriteTraceJsonl(trace, f);
        };
      }
      const auto report = msplab::HatFailureExperiment(
          hat_ns, msplab::Rational::Parse(hat_alpha), hat_policy, hat_trials,
          seed, threads, sink);
      Output out(out_path);
      if (emit == "csv") {
        msplab::WriteHatCsv(report, out.stream());
      } else {
        out.stream() << report.ToJson() << '\n';
      }
    } else if (*broom || *attack) {
      Output out(out_path);
      const auto report = msplab::BroomAttackExperiment(
          broom_n, dist, broom_trials, seed, threads, broom_c,
          emit == "csv" ? &out.stream() : nullptr);
      if (emit == "csv") {
        std::cerr << "ratio " << report.ratio << ", min leg p "
                  << report.min_leg_p << ", high-degree handles "
                  << report.high_fraction << '\n';
      } else {
        out.stream() << report.ToJson() << '\n';
      }
    } else if (*check) {
      const auto p = LoadPartition(part_file, part_n);
      if (auto t = msplab::FindShatteredTriangle(p)) {
        std::cout << "invalid: triangle " << (*t)[0] + 1 << ' ' << (*t)[1] + 1
                  << ' ' << (*t)[2] + 1 << " has edges in three parts\n";
      } else {
        std::cout << "valid\n";
      }
    } else if (*degrees) {
      const auto p = LoadPartition(part_file, part_n);
      const std::vector<int> deg = msplab::EdgeDegrees(p);
      std::map<int, std::size_t> histogram;
      for (int d : deg) ++histogram[d];
      ordered_json j;
      j["n"] = p.n;
      j["C"] = part_c;
      j["edges"] = deg.size();
      j["low_degree"] = msplab::CountLowDegree(p, part_c);
      ordered_json h = ordered_json::object();
      for (auto [d, c] : histogram) h[std::to_string(d)] = c;
      j["degree_histogram"] = h;
      std::cout << j.dump(2) << '\n';
    } else if (*adversary) {
      std::unique_ptr<msplab::EdgePartition> given;
      if (!part_file.empty()) {
        given = std::make_unique<msplab::EdgePartition>(LoadPartition(part_file, 0));
      }
      const auto report = msplab::DeterministicPartitionExperiment(
          adv_n, adv_trials, seed, threads, given.get());
      Output out(out_path);
      out.stream() << report.ToJson() << '\n';
    } else if (*recurrence) {
      const auto r = msplab::RecurrenceCheck(big_n, eps);
      ordered_json j;
      j["N"] = r.big_n;
      j["eps"] = eps;
      j["a"] = static_cast<double>(r.params.a);
      j["C"] = static_cast<double>(r.params.c);
      j["b"] = static_cast<double>(r.params.b);
      j["condition_holds"] = r.condition_holds;
      j["first_violation"] = r.first_violation
                                 ? ordered_json(*r.first_violation)
                                 : ordered_json(nullptr);
      j["worst_log_margin"] = static_cast<double>(r.worst_log_margin);
      j["base_case"] = r.base_case;
      if (r.base_case) j["base_value"] = static_cast<double>(r.base_value);
      j["bound"] = static_cast<double>(r.bound);
      j["target"] = static_cast<double>(r.target);
      j["bound_within_target"] = r.bound_within_target;
      std::cout << j.dump(2) << '\n';
    } else if (*bounds) {
      ordered_json rows = ordered_json::array();
      for (double n : bound_ns) {
        const auto p = msplab::BoundParams::Defaults(n);
        const auto scan = msplab::ScanFailureBounds(p);
        const auto lemma = msplab::EmpiricalLemmaCheck(
            p, bound_trials, seed, msplab::DefaultHorizon());
        ordered_json row;
        row["n"] = n;
        row["x"] = static_cast<double>(p.x);
        row["ell"] = static_cast<double>(p.ell);
        row["minmax"] = static_cast<double>(scan.value);
        row["argmin"] = static_cast<double>(scan.argmin);
        row["f_non_increasing"] = scan.f_non_increasing;
        row["g_non_decreasing"] = scan.g_non_decreasing;
        row["lemma_estimate"] = static_cast<double>(lemma.estimate);
        row["lemma_bound"] = static_cast<double>(lemma.bound);
        row["lemma_sigma"] = static_cast<double>(lemma.sigma);
        row["lemma_passed"] = lemma.passed;
        rows.push_back(row);
      }
      std::cout << rows.dump(2) << '\n';
    }
  } catch (const msplab::AlgorithmFault& e) {
    std::cerr << "algorithm fault: " << e.what() << '\n';
    msplab::WriteTraceJsonl(e.prefix(), std::cerr);
    return kExitFault;
  } catch (const msplab::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const msplab::ConfigurationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const msplab::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const msplab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
