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

#ifndef MSPLAB_STATS_H_
#define MSPLAB_STATS_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace msplab {

inline constexpr double kZ99 = 2.5758293035489;

// Two-sided Hoeffding half-width for the mean of n variables in [0, 1].
double HoeffdingHalfWidth(std::uint64_t n, double level = 0.99);

struct Interval {
  double lo = 0;
  double hi = 1;
  bool Contains(double x) const { return lo <= x && x <= hi; }
};

Interval WilsonInterval(std::uint64_t successes, std::uint64_t n,
                        double z = kZ99);

// Runs trials [0, trials) in fixed-size chunks. Every chunk gets a fresh
// accumulator; results are merged in chunk order, so the outcome does not
// depend on the thread count.
template <typename Acc, typename MakeAcc, typename Trial, typename Merge>
Acc RunChunked(std::uint64_t trials, unsigned threads, MakeAcc make_acc,
               Trial trial, Merge merge, std::uint64_t chunk = 1024) {
  const std::uint64_t chunks = (trials + chunk - 1) / chunk;
  std::vector<Acc> parts;
  parts.reserve(chunks);
  for (std::uint64_t c = 0; c < chunks; ++c) parts.push_back(make_acc());
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        const std::uint64_t end = std::min(trials, (c + 1) * chunk);
        for (std::uint64_t i = c * chunk; i < end; ++i) trial(parts[c], i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = chunks;
        return;
      }
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1 || chunks <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  Acc total = make_acc();
  for (Acc& part : parts) merge(total, part);
  return total;
}

unsigned DefaultThreads();

}  // namespace msplab

#endif  // MSPLAB_STATS_H_
