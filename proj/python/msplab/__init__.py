# Copyright 2026 The Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Simulation lab for online selection on matroids."""

import json

from msplab._core import (
    AlgorithmFault,
    Error,
    GraphicMatroid,
    Matroid,
    ParameterError,
    UniformMatroid,
    algorithms,
    brute_force_mwb,
    convex_extremum,
    count_low_degree,
    edge_degrees,
    failure_bounds,
    korula_pal_partition,
    max_weight_basis,
    partition_is_valid,
    recurrence_check,
    scan_failure_bounds,
    shattered_triangle,
)
from msplab import _core


def estimate(instance, algorithm, trials, seed=0, threads=1, weights=""):
    """Runs a Monte Carlo estimate and returns the report as a dict."""
    return json.loads(
      _core._estimate(instance, algorithm, trials, seed, threads, weights))


def simulate(instance, algorithm, seed=0, trial=0):
    """Runs one trial and returns its trace, one dict per arrival."""
    text = _core._simulate(instance, algorithm, seed, trial)
    return [json.loads(line) for line in text.splitlines() if line]


def hat_experiment(ns, alpha="5", policy="supergreedy", trials=1000, seed=0,
                   threads=1):
    return json.loads(
      _core._hat_experiment(list(ns), str(alpha), policy, trials, seed,
                            threads))


def broom_attack(n, distribution="korula-pal", trials=1000, seed=0, threads=1):
    return json.loads(
      _core._broom_attack(n, distribution, trials, seed, threads))


def deterministic_attack(n, trials=1000, seed=0, threads=1):
    return json.loads(_core._deterministic_attack(n, trials, seed, threads))
