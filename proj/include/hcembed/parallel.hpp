// Copyright 2026 The hcembed Authors.
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "hcembed/rng.hpp"

namespace hcembed {

/// HCEMBED_THREADS if set and positive, else the hardware concurrency.
unsigned default_thread_count();

/**
 * Runs f(rng, count) over ceil(total / chunk) chunks and sums the results in
 * chunk order. Chunk i always receives root.stream(i) and the same count, so
 * the result does not depend on the number of threads.
 */
template <typename Acc, typename F>
Acc parallel_chunked_sum(std::uint64_t total, std::uint64_t chunk, const Rng& root, F&& f,
                         unsigned threads = 0) {
  if (total == 0) return Acc{};
  chunk = std::max<std::uint64_t>(chunk, 1);
  const std::uint64_t chunks = (total + chunk - 1) / chunk;
  std::vector<Acc> partial(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      Rng rng = root.stream(c);
      const std::uint64_t count = std::min(chunk, total - c * chunk);
      partial[c] = f(rng, count);
    }
  };
  if (threads == 0) threads = default_thread_count();
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  Acc sum{};
  for (const Acc& a : partial) sum += a;
  return sum;
}

}  // namespace hcembed
