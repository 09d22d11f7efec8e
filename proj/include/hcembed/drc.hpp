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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hcembed/bigraph.hpp"
#include "hcembed/embedding.hpp"
#include "hcembed/rng.hpp"

namespace hcembed {

inline constexpr std::uint64_t kDefaultTupleCap = 10'000'000;

struct DrcParams {
  unsigned s = 1;
  unsigned r = 1;
  Rational beta;
  Rational alpha;
};

/// base^e, or cap + 1 if that exceeds cap.
std::uint64_t checked_power(std::uint64_t base, unsigned e, std::uint64_t cap);

/// hist[c] = number of ordered r-tuples (repeats allowed) from base whose
/// common lower neighbourhood has exactly c vertices.
std::vector<std::uint64_t> tuple_cn_histogram(const BipartiteGraph& g, std::span<const VertexId> base,
                                              unsigned r);

/// Sum over uppers of (deg / lower_count)^s: the expected size of CN(X_1..X_s)
/// for i.i.d. uniform lowers X_i.
Rational expected_cn_size_exact(const BipartiteGraph& g, unsigned s);

/// Expected number of ordered r-tuples (repeats allowed) of CN(X_1..X_s) whose
/// common neighbourhood has at most beta^r * lower_count vertices.
/// Requires 0 < beta <= alpha <= density(g), alpha <= 1, and upper_count^r <= cap.
Rational expected_bad_tuples_exact(const BipartiteGraph& g, const DrcParams& params,
                                   std::uint64_t cap = kDefaultTupleCap);

/// |CN(X_1..X_s)| for one draw of s i.i.d. uniform lowers.
std::size_t sample_cn_size(const BipartiteGraph& g, unsigned s, Rng& rng);

/// Outcome of a randomized embedder. Failures are data: the stage of the last
/// failed trial plus per-stage counters.
struct EmbedReport {
  std::optional<CubeEmbedding> embedding;
  std::string failure_stage;
  std::map<std::string, std::uint64_t> counters;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> notes;

  bool success() const { return embedding.has_value(); }
  std::uint64_t count(const std::string& key) const {
    auto it = counters.find(key);
    return it == counters.end() ? 0 : it->second;
  }
};

struct DrcOptions {
  std::uint32_t trials = 1;
  std::uint64_t seed = 0;
  std::uint32_t resample_budget = 32;
  /// Keep running after the first success (counters then cover every trial).
  bool run_all_trials = false;
};

/// s = floor(log(U / 2^n) / log(1 / alpha)) clamped to [1, 64]; notes record any clamp.
unsigned drc_sample_count(const BipartiteGraph& g, unsigned n, std::vector<std::string>* notes = nullptr);

/// Randomized Q_n embedder: odd class into A = CN(X_1..X_s) on the upper side,
/// even class by greedy_extend. Requires 1 <= n <= 24, trials >= 1 and
/// upper_count >= 2^(n-1).
EmbedReport drc_embed_cube(const BipartiteGraph& g, unsigned n, const DrcOptions& options);

}  // namespace hcembed
