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
#include <string>
#include <vector>

#include "hcembed/bigraph.hpp"
#include "hcembed/blocks.hpp"
#include "hcembed/rng.hpp"

namespace hcembed {

struct GammaParams {
  double epsilon = 1.0;
  unsigned n = 2;
};

/// Concrete sizes of a Γ-style host: k_blocks lower blocks of block_size vertices.
struct GammaShape {
  std::uint32_t k_blocks = 2;
  std::uint32_t block_size = 1;
  std::uint32_t upper_count = 1;
};

/// block_size = ceil(2^(n - eps n / 2)), k_blocks = 2 block_size, upper_count = 2 block_size^2.
GammaShape gamma_shape(const GammaParams& params);

/// Each upper vertex picks a uniform (k_blocks / 2)-subset of blocks and is
/// joined to every lower of those blocks. delta = 0 and gamma is the smallest
/// fraction of uppers attached to a block. Requires k_blocks even, >= 2.
BlockGraph generate_gamma(const GammaShape& shape, Rng& rng);

struct CoveringReport {
  std::vector<VertexId> S;
  std::vector<std::uint64_t> block_hits;  // |{v in S : v adjacent to block i}|
  std::vector<double> deltas;             // block_hits / |S|
  std::vector<std::uint32_t> T_blocks;    // in order of selection
  std::uint64_t T_vertices = 0;
  bool budget_hit = false;  // stopped by the block budget with excluded_sum > 1/2
  double excluded_sum = 0.0;    // sum over blocks outside T of delta_i^arity
  double analytic_bound = 0.0;  // 1 - excluded_sum
  std::uint64_t samples = 0;
  std::uint64_t covered = 0;
  double empirical = 0.0;
  double std_error = 0.0;
  std::uint64_t cut_edges = 0;  // edges leaving S
  bool identity_ok = false;     // sum_i block_hits_i * block_size == cut_edges
};

/// Greedy covering set T for a uniform S of the given size, with a Monte Carlo
/// check of the fraction of arity-tuples from S whose CN lies inside T.
CoveringReport covering_property_estimate(const BipartiteGraph& g, const BlockStructure& bs, std::uint32_t s_size,
                                          unsigned arity, std::uint64_t tuple_samples, std::uint32_t t_block_budget,
                                          const Rng& rng);

struct DefeatOptions {
  unsigned u = 2;
  unsigned w = 2;
  std::uint32_t drc_resample_budget = 1;
  std::uint32_t block_selection_budget = 1;
  bool force_blocks = true;
};

struct DefeatReport {
  std::uint32_t trials = 0;
  std::uint64_t drc_successes = 0;
  std::uint64_t block_successes = 0;
  std::map<std::string, std::uint64_t> drc_counters;
  std::map<std::string, std::uint64_t> block_counters;
  std::string drc_precondition;    // non-empty when the embedder refused to run
  std::string block_precondition;
  double drc_seconds = 0.0;
  double block_seconds = 0.0;
};

/// Runs the naive and the block-aware embedder for the same number of trials.
DefeatReport drc_defeat_experiment(const BipartiteGraph& g, const BlockStructure& bs, unsigned n, std::uint32_t trials,
                                   const Rng& rng, const DefeatOptions& options = {});

}  // namespace hcembed
