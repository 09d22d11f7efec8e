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

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hcembed/bigraph.hpp"
#include "hcembed/embedding.hpp"
#include "hcembed/rng.hpp"

namespace hcembed {

enum class BruteStatus { Found, Impossible, Timeout };
const char* brute_status_name(BruteStatus s);

struct BruteOptions {
  std::chrono::milliseconds budget{10'000};
  std::uint64_t node_limit = 0;  // 0: no limit
  std::uint32_t max_pattern_vertices = 16;
};

struct BruteResult {
  BruteStatus status = BruteStatus::Timeout;
  std::optional<PatternEmbedding> embedding;
  std::uint64_t nodes = 0;
};

/// Exact backtracking search for a copy of `pattern` in g, trying both
/// orientations. Vertices are placed most-constrained first (placed neighbours,
/// then degree); every unplaced neighbour keeps a non-empty candidate set.
BruteResult brute_force_embed(const BipartiteGraph& g, const BipartiteGraph& pattern, const BruteOptions& options = {});

struct BruteCubeResult {
  BruteStatus status = BruteStatus::Timeout;
  std::optional<CubeEmbedding> embedding;
  std::uint64_t nodes = 0;
};

BruteCubeResult brute_force_embed_cube(const BipartiteGraph& g, unsigned n, const BruteOptions& options = {});

struct ChernoffRow {
  double t = 0.0;
  double empirical = 0.0;   // fraction of samples with |S - pn| >= t
  double exact_tail = 0.0;  // binomial P(|S - pn| >= t)
  double bound = 0.0;       // 2 exp(-c t^2 / (p n))
  bool flagged = false;     // empirical > bound
};

struct ChernoffTable {
  double p = 0.0;
  std::uint32_t n_vars = 0;
  std::uint64_t samples = 0;  // 0 for exhaustive tables
  double c = 0.25;
  std::vector<ChernoffRow> rows;
  bool any_flag() const;
};

/// p n times {0.1, 0.25, 0.5, 0.75, 1}.
std::vector<double> default_chernoff_grid(double p, std::uint32_t n_vars);

/// P(|Binomial(n, p) - p n| >= t).
double binomial_two_sided_tail(std::uint32_t n, double p, double t);

/// Requires 0 < p < 1 and every t in (0, p n].
ChernoffTable chernoff_empirical(double p, std::uint32_t n_vars, std::span<const double> t_grid,
                                 std::uint64_t samples, const Rng& rng, double c = 0.25);

/// Enumerates all 2^n outcomes (n <= 24) and weights them exactly.
ChernoffTable chernoff_exhaustive(double p, std::uint32_t n_vars, std::span<const double> t_grid, double c = 0.25);

/// Every edge independently with probability `density`.
BipartiteGraph gen_random_bipartite(std::uint32_t upper_count, std::uint32_t lower_count, double density, Rng& rng);

}  // namespace hcembed
