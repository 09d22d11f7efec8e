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

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace hcembed {

/**
 * Counter-based generator (Philox4x32-10) with hierarchical streams.
 *
 * The output is a pure function of (seed, stream id, position), so work that
 * fans out over trials or worker chunks derives one child stream per unit via
 * stream(i) and stays reproducible regardless of scheduling. Bounded integers
 * and doubles are produced by our own routines rather than <random>
 * distributions, whose output differs between standard libraries.
 */
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream_id = 0);

  /// Independent child stream; the same index always yields the same stream.
  Rng stream(std::uint64_t index) const;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();
  bool bernoulli(double p) { return uniform01() < p; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint32_t, 2> key_{};
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  unsigned pos_ = 4;
};

/// One Philox4x32-10 block, exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// SplitMix64 finalizer; used for seed and stream-id mixing.
std::uint64_t mix64(std::uint64_t x);

/// First k entries of a uniform random permutation of [0, n) (partial Fisher-Yates).
std::vector<std::uint32_t> sample_distinct(std::uint32_t n, std::uint32_t k, Rng& rng);

/// Uniform ordered k-tuple of distinct elements of items.
std::vector<std::uint32_t> sample_distinct_from(std::span<const std::uint32_t> items, std::size_t k,
                                                Rng& rng);

}  // namespace hcembed
