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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "msplab/engine.h"
#include "msplab/errors.h"
#include "msplab/experiments.h"
#include "msplab/hat.h"
#include "msplab/matroid.h"
#include "msplab/mwb.h"
#include "msplab/partition.h"
#include "msplab/recurrence.h"
#include "msplab/rng.h"
#include "msplab/schedule.h"
#include "msplab/weights.h"

namespace py = pybind11;

namespace {

msplab::WeightAssignment MakeWeights(const std::vector<std::int64_t>& scaled,
                                     std::int64_t den) {
  return msplab::WeightAssignment::FromScaled(scaled, den);
}

msplab::EdgePartition MakePartition(int n, const std::vector<int>& part) {
  return msplab::EdgePartition{n, part};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Matroid secretary simulation lab";

  static py::exception<msplab::Error> error(m, "Error");
  py::register_exception<msplab::ParameterError>(m, "ParameterError",
                                                 error.ptr());
  py::register_exception<msplab::AlgorithmFault>(m, "AlgorithmFault",
                                                 error.ptr());

  py::class_<msplab::MatroidOracle, std::shared_ptr<msplab::MatroidOracle>>(
      m, "Matroid")
      .def_property_readonly("universe_size",
                             &msplab::MatroidOracle::universe_size)
      .def("describe", &msplab::MatroidOracle::Describe)
      .def("is_independent",
           [](const msplab::MatroidOracle& self,
              const std::vector<msplab::ElementId>& s) {
             return msplab::IsIndependent(self, s);
           })
      .def("rank", [](const msplab::MatroidOracle& self,
                      const std::vector<msplab::ElementId>& s) {
        return msplab::Rank(self, s);
      });

  py::class_<msplab::GraphicMatroid, msplab::MatroidOracle,
             std::shared_ptr<msplab::GraphicMatroid>>(m, "GraphicMatroid")
      .def(py::init([](int vertices,
                       const std::vector<std::pair<int, int>>& edges) {
             std::vector<msplab::Edge> list;
             for (auto [u, v] : edges) list.push_back({u, v});
             return std::make_shared<msplab::GraphicMatroid>(vertices,
                                                             std::move(list));
           }),
           py::arg("vertices"), py::arg("edges"));

  py::class_<msplab::UniformMatroid, msplab::MatroidOracle,
             std::shared_ptr<msplab::UniformMatroid>>(m, "UniformMatroid")
      .def(py::init<std::size_t, std::size_t>(), py::arg("n"), py::arg("k"));

  m.def(
      "max_weight_basis",
      [](const msplab::MatroidOracle& mat, const std::vector<std::int64_t>& w,
         std::int64_t den) {
        return msplab::MaxWeightBasis(mat, MakeWeights(w, den));
      },
      py::arg("matroid"), py::arg("weights"), py::arg("denominator") = 1);
  m.def(
      "brute_force_mwb",
      [](const msplab::MatroidOracle& mat, const std::vector<std::int64_t>& w,
         std::int64_t den) {
        return msplab::BruteForceMwb(mat, MakeWeights(w, den));
      },
      py::arg("matroid"), py::arg("weights"), py::arg("denominator") = 1);

  m.def("algorithms", &msplab::AlgorithmNames);

  m.def(
      "_estimate",
      [](const std::string& instance, const std::string& algorithm,
         std::uint64_t trials, std::uint64_t seed, unsigned threads,
         const std::string& weights) {
        msplab::ExperimentConfig cfg;
        cfg.instance = instance;
        cfg.algorithm = algorithm;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.threads = threads;
        cfg.weights_path = weights;
        py::gil_scoped_release release;
        return msplab::RunEstimate(cfg).ToJson();
      },
      py::arg("instance"), py::arg("algorithm"), py::arg("trials"),
      py::arg("seed") = 0, py::arg("threads") = 1, py::arg("weights") = "");

  m.def(
      "_simulate",
      [](const std::string& instance, const std::string& algorithm,
         std::uint64_t seed, std::uint64_t trial) {
        const auto source = msplab::InstanceSource::Parse(instance);
        const msplab::TrialSeed ts{seed, trial};
        const msplab::TrialInstance inst = source.Make(ts);
        const auto schedule =
            msplab::DrawSchedule(inst.matroid->universe_size(), ts);
        auto alg =
            msplab::MakeAlgorithm(algorithm, inst, msplab::DefaultHorizon());
        std::mt19937_64 rng =
            msplab::SubStream(ts, msplab::StreamTag::kAlgorithm);
        msplab::RunTrace trace =
            msplab::RunTrial(inst.matroid, *inst.weights, schedule, *alg, rng());
        std::ostringstream os;
        msplab::WriteTraceJsonl(trace, os);
        return os.str();
      },
      py::arg("instance"), py::arg("algorithm"), py::arg("seed") = 0,
      py::arg("trial") = 0);

  m.def(
      "_hat_experiment",
      [](const std::vector<int>& ns, const std::string& alpha,
         const std::string& policy, std::uint64_t trials, std::uint64_t seed,
         unsigned threads) {
        const msplab::Rational a = msplab::Rational::Parse(alpha);
        py::gil_scoped_release release;
        return msplab::HatFailureExperiment(ns, a, policy, trials, seed,
                                            threads)
            .ToJson();
      },
      py::arg("ns"), py::arg("alpha") = "5", py::arg("policy") = "supergreedy",
      py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("threads") = 1);

  m.def(
      "_broom_attack",
      [](int n, const std::string& distribution, std::uint64_t trials,
         std::uint64_t seed, unsigned threads) {
        py::gil_scoped_release release;
        return msplab::BroomAttackExperiment(n, distribution, trials, seed,
                                             threads)
            .ToJson();
      },
      py::arg("n"), py::arg("distribution") = "korula-pal",
      py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("threads") = 1);

  m.def(
      "_deterministic_attack",
      [](int n, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
        py::gil_scoped_release release;
        return msplab::DeterministicPartitionExperiment(n, trials, seed, threads)
            .ToJson();
      },
      py::arg("n"), py::arg("trials") = 1000, py::arg("seed") = 0,
      py::arg("threads") = 1);

  m.def(
      "korula_pal_partition",
      [](int n, std::uint64_t seed) {
        std::mt19937_64 rng = msplab::SubStream(seed, msplab::StreamTag::kPartition);
        return msplab::KorulaPalPartition(n, rng).part;
      },
      py::arg("n"), py::arg("seed") = 0);
  m.def(
      "shattered_triangle",
      [](int n, const std::vector<int>& part) {
        return msplab::FindShatteredTriangle(MakePartition(n, part));
      },
      py::arg("n"), py::arg("part"));
  m.def(
      "partition_is_valid",
      [](int n, const std::vector<int>& part) {
        return msplab::ValidatePartitionTriangles(MakePartition(n, part));
      },
      py::arg("n"), py::arg("part"));
  m.def(
      "edge_degrees",
      [](int n, const std::vector<int>& part) {
        return msplab::EdgeDegrees(MakePartition(n, part));
      },
      py::arg("n"), py::arg("part"));
  m.def(
      "count_low_degree",
      [](int n, const std::vector<int>& part, double c) {
        return msplab::CountLowDegree(MakePartition(n, part), c);
      },
      py::arg("n"), py::arg("part"), py::arg("c"));

  m.def(
      "recurrence_check",
      [](std::int64_t big_n, double eps) {
        const auto r = msplab::RecurrenceCheck(big_n, eps);
        py::dict d;
        d["N"] = r.big_n;
        d["a"] = static_cast<double>(r.params.a);
        d["C"] = static_cast<double>(r.params.c);
        d["b"] = static_cast<double>(r.params.b);
        d["condition_holds"] = r.condition_holds;
        d["first_violation"] = r.first_violation;
        d["bound"] = static_cast<double>(r.bound);
        d["target"] = static_cast<double>(r.target);
        d["bound_within_target"] = r.bound_within_target;
        return d;
      },
      py::arg("N"), py::arg("eps"));
  m.def(
      "convex_extremum",
      [](std::int64_t n, const std::string& gamma, double a) {
        return static_cast<double>(
            msplab::ConvexExtremum(n, msplab::Rational::Parse(gamma), a));
      },
      py::arg("n"), py::arg("gamma"), py::arg("a"));

  m.def(
      "failure_bounds",
      [](double n, double y) {
        const auto b = msplab::EvalFailureBounds(
            msplab::BoundParams::Defaults(n), y);
        return std::make_pair(static_cast<double>(b.f), static_cast<double>(b.g));
      },
      py::arg("n"), py::arg("y"));
  m.def(
      "scan_failure_bounds",
      [](double n) {
        const auto s = msplab::ScanFailureBounds(msplab::BoundParams::Defaults(n));
        py::dict d;
        d["minmax"] = static_cast<double>(s.value);
        d["argmin"] = static_cast<double>(s.argmin);
        d["f_non_increasing"] = s.f_non_increasing;
        d["g_non_decreasing"] = s.g_non_decreasing;
        return d;
      },
      py::arg("n"));
}
