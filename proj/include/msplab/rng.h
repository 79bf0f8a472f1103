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

#ifndef MSPLAB_RNG_H_
#define MSPLAB_RNG_H_

#include <cstdint>
#include <random>

namespace msplab {

// splitmix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct TrialSeed {
  std::uint64_t master = 0;
  std::uint64_t trial_index = 0;

  // Stream seed = Mix64(master XOR trial_index).
  std::uint64_t Stream() const { return Mix64(master ^ trial_index); }
};

// Independent sub-streams of one trial, one per purpose.
enum class StreamTag : std::uint64_t {
  kSchedule = 1,
  kAlgorithm = 2,
  kPartition = 3,
  kInstance = 4,
};

inline std::mt19937_64 SubStream(std::uint64_t stream, StreamTag tag) {
  return std::mt19937_64(
      Mix64(stream ^ Mix64(static_cast<std::uint64_t>(tag))));
}

inline std::mt19937_64 SubStream(const TrialSeed& seed, StreamTag tag) {
  return SubStream(seed.Stream(), tag);
}

// Uniform integer in [0, bound) without modulo bias.
inline std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound) {
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

}  // namespace msplab

#endif  // MSPLAB_RNG_H_
