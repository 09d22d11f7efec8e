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
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hcembed/bigraph.hpp"
#include "hcembed/drc.hpp"
#include "hcembed/rng.hpp"

namespace hcembed {

/// Compatible collections (S_l^up, S_l^down) with parameters (delta, gamma, k, g).
struct BlockStructure {
  double delta = 0.0;
  double gamma = 0.0;
  std::uint32_t k = 0;
  std::uint32_t g_size = 0;
  std::vector<VertexSet> lower_blocks;
  std::vector<VertexSet> upper_sets;
};

struct BlockViolation {
  unsigned bullet = 0;  // 1: block sizes / partition, 2: upper set size, 3: stray edge, 4: density
  std::uint32_t block = 0;
  std::string detail;
};

struct BlockValidation {
  std::vector<BlockViolation> violations;
  bool ok() const { return violations.empty(); }
  bool bullet_ok(unsigned bullet) const;
};

/// Checks all four block-structure conditions exactly.
BlockValidation validate_block_structure(const BipartiteGraph& g, const BlockStructure& bs);

struct BlockGraph {
  BipartiteGraph graph;
  BlockStructure blocks;
};

/// Lower block l is [l g, (l + 1) g). Each S_l^up is a uniform ceil(gamma U)-subset;
/// in-block edges appear with probability 1 - delta / 2, then missing edges are
/// added until every block has density >= 1 - delta.
BlockGraph generate_block_graph(std::uint32_t k, std::uint32_t g_size, std::uint32_t upper_count, double gamma,
                                double delta, Rng& rng);

/// Block index of each lower vertex, or ~0u if it is in no block.
std::vector<std::uint32_t> block_of_lowers(const BlockStructure& bs, std::uint32_t lower_count);

/// Membership in M(r, w; y) given cn = CN(y).
bool is_m_tuple(const BlockStructure& bs, const VertexSet& cn, unsigned r, unsigned w,
                std::span<const VertexId> x);

struct MTupleSample {
  std::optional<std::vector<VertexId>> tuple;
  bool family_empty = false;
  std::uint64_t draws = 0;
};

/// Uniform element of M(r, w; y) by rejection from the product structure.
/// Requires g_size >= r - w >= 2 and k >= w + 1.
MTupleSample sample_m_tuple(const BipartiteGraph& g, const BlockStructure& bs, unsigned r, unsigned w,
                            std::span<const VertexId> y, Rng& rng, std::uint64_t budget = 1'000'000);

/// Exact expected number of tuples of M(r, w; Y_1..Y_u) with |CN| <= s for
/// i.i.d. uniform uppers Y_i, by enumeration.
Rational expected_small_m_tuples_exact(const BipartiteGraph& g, const BlockStructure& bs, unsigned r, unsigned w,
                                       unsigned u, const Rational& s);
/// (s / U)^u k! / (k - w - 1)! g^w g! / (g - r + w)!
Rational small_m_tuple_bound(const BlockStructure& bs, std::uint32_t upper_count, unsigned r, unsigned w,
                             unsigned u, const Rational& s);

struct ConditionEvent {
  std::vector<std::uint32_t> good_blocks;  // L, ascending
  VertexSet cn;
  bool accepted = false;
};

/// Good blocks for a fixed y: |CN(y) ∩ S_l^down| >= g (1 - delta)^(u + 1), accepted when
/// |L| >= k (delta / 2) (gamma (1 - delta))^u, with u = |y|.
ConditionEvent condition_event(const BipartiteGraph& g, const BlockStructure& bs, std::span<const VertexId> y);

/// (delta / 2) (gamma (1 - delta))^u
long double selection_probability_bound(const BlockStructure& bs, unsigned u);

struct Selection {
  std::vector<VertexId> y;
  std::vector<std::uint32_t> good_blocks;
  VertexSet cn;
};

struct SelectionResult {
  std::optional<Selection> selection;
  std::uint32_t trials_used = 0;
  std::uint32_t accepted = 0;      // draws meeting the event
  std::uint32_t too_few_blocks = 0;  // accepted draws with |L| < min_blocks
  double bound = 0.0;
};

/// Draws u i.i.d. uniform uppers per trial until the event holds and at least
/// min_blocks blocks are good. Requires u >= 1, g_size >= r - w >= 2, k >= w + 1.
SelectionResult select_condition_vertices(const BipartiteGraph& g, const BlockStructure& bs, unsigned u,
                                          unsigned r, unsigned w, std::uint32_t trials, const Rng& rng,
                                          std::uint32_t min_blocks = 0);

/// Fraction of draws (of u uniform uppers each) meeting the selection event.
struct SelectionRate {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double rate() const { return trials ? double(hits) / double(trials) : 0.0; }
};
SelectionRate estimate_selection_rate(const BipartiteGraph& g, const BlockStructure& bs, unsigned u,
                                      std::uint64_t trials, const Rng& rng);

struct BlockFeasibility {
  long double good_block_floor = 0;  // k (delta / 2) (gamma (1 - delta))^u
  long double trimmed_size = 0;      // g (1 - delta)^(u + 1)
  long double union_bound = 0;       // left side of the union-bound condition
  bool blocks_ok = false;            // good_block_floor >= 2^w
  bool size_ok = false;              // trimmed_size >= 2^(n - w)
  bool union_ok = false;             // union_bound < 2^(1 - n)
  bool feasible() const { return blocks_ok && size_ok && union_ok; }
};

BlockFeasibility block_feasibility(const BlockStructure& bs, std::uint32_t upper_count, unsigned n, unsigned u,
                                   unsigned w);

struct BlockEmbedOptions {
  std::uint32_t trials = 1;
  std::uint64_t seed = 0;
  std::uint32_t selection_budget = 256;
  bool force = false;  // run even when the feasibility check fails
  bool run_all_trials = false;
};

struct BlockEmbedReport : EmbedReport {
  BlockFeasibility feasibility;
  std::vector<std::uint32_t> facet_blocks;  // Z_b of the successful trial
};

/// Requires n - w >= 2, u >= 1 and k >= w + 1.
BlockEmbedReport block_embed_cube(const BipartiteGraph& g, const BlockStructure& bs, unsigned n, unsigned u,
                                  unsigned w, const BlockEmbedOptions& options);

// Sidecar format: "k g_size delta gamma", then per block "up: ids" and "down: ids".
void format_blocks(const BlockStructure& bs, std::ostream& out);
BlockStructure parse_blocks(std::istream& in, std::uint32_t upper_count, std::uint32_t lower_count);
void write_blocks(const BlockStructure& bs, const std::string& path);
BlockStructure read_blocks(const std::string& path, std::uint32_t upper_count, std::uint32_t lower_count);

}  // namespace hcembed
