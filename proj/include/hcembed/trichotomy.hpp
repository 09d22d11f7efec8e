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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hcembed/bigraph.hpp"
#include "hcembed/blocks.hpp"
#include "hcembed/condensation.hpp"
#include "hcembed/embedding.hpp"
#include "hcembed/harness.hpp"
#include "hcembed/rng.hpp"

namespace hcembed {

/// Positive root of 64 x^2 + 25 x - 1.
double c_prime_root();

struct ParameterSchedule {
  double mu = 1e-10;
  double alpha = 0.5;
  double alpha0 = 0.1;
  double c_prime = 0.0;
  double c = 0.0;  // c_prime - 100 mu
  double c_chernoff = 0.25;
  double C_standard = 1.0;
  double c_condense = 1.0 / 16.0;

  unsigned n = 0;
  unsigned r = 0;
  std::uint64_t m = 0;  // 2^(n-1)
  std::uint32_t upper_count = 0;
  std::uint32_t lower_count = 0;

  double M = 0.0;
  double p = 0.0;
  unsigned u = 0;
  unsigned w = 0;
  double h = 0.0;

  std::uint32_t g_size = 0;  // ceil(c_condense p M)
  std::uint32_t k = 0;       // ceil(mu alpha lower_count / g_size)
  double block_delta = 0.0;  // 1 - (c_condense p M / (-h log2(p / 2)))^(1/r)
  double block_gamma = 0.0;  // (1 - mu)^3 alpha^2

  std::vector<std::string> audit;
};

using ScheduleOverride = std::pair<std::string, double>;

/// Parses "key=value". Keys: mu alpha alpha0 c_chernoff C_standard c_condense M p u w h r.
ScheduleOverride parse_override(const std::string& text);

/// Evaluates the parameter formulas at the given sizes. Degenerate values are
/// clamped and each clamp, like each override, is logged in `audit`.
ParameterSchedule build_schedule(unsigned n, std::uint32_t upper_count, std::uint32_t lower_count,
                                 std::span<const ScheduleOverride> overrides = {});

struct ExpectationDensify {
  VertexSet lowers;
  Rational expectation;  // sum over lowers of p_v^r
  Rational threshold;    // h / (2 lower_count)
  double density_bound = 0.0;
  Density measured;
  bool size_ok = false;     // |S| >= h / 2
  bool density_ok = false;  // measured^r >= threshold
};

/// With p_v = deg(v) / upper_count, returns S = {v : p_v^r >= h / (2 lower_count)}
/// when sum p_v^r >= h, otherwise nothing. Requires h > 0 and r >= 1.
std::optional<ExpectationDensify> densify_from_expectation(const BipartiteGraph& g, unsigned r, double h);

struct CondensationDensifyOptions {
  std::uint64_t outer_samples = 512;
  std::uint64_t inner_samples = 256;
  unsigned max_class = 40;
  std::uint64_t condensation_samples = 4096;
  /// Estimate to test the precondition with; computed when absent.
  std::optional<CondensationEstimate> estimate;
};

struct CondensationDensify {
  std::vector<VertexId> y;  // r uppers from CN(v1, v2)
  VertexSet upper_base;     // CN(v1, v2)
  VertexSet lowers;         // S
  unsigned i0 = 0;
  double class_score = 0.0;  // 2^-i0 * fraction of outer tuples in class i0
  double bar = 0.0;          // p / (-2 log2(p / 4))
  std::uint64_t cn_y_size = 0;
  double cn_y_bound = 0.0;   // h (-2 log2(p / 4)) / (2^i0 p)
  Rational threshold;        // p M / (-8 h log2(p / 4))
  double density_bound = 0.0;
  Density measured;
  double size_floor = 0.0;   // 2^(-i0-2) M
  bool size_ok = false;
  bool density_ok = false;
};

struct CondensationDensifyResult {
  std::optional<CondensationDensify> result;
  std::string failure;
  std::vector<std::uint64_t> class_histogram;  // outer tuples per dyadic class; last entry: zero estimate
  Rational expectation;
};

/// Dyadic-class search over sampled r-tuples of CN(v1, v2). Requires a
/// decisively condensed estimate and sum_v q_v^r <= h over CN(v1, v2).
CondensationDensifyResult densify_from_condensation(const BipartiteGraph& g, VertexId v1, VertexId v2, unsigned r,
                                                    double M, double p, double h, const Rng& rng,
                                                    const CondensationDensifyOptions& options = {});

struct NonCondensedCertificate {
  std::uint32_t iteration = 0;
  VertexSet removed_lowers;  // G^(l) is g with edges at these lowers removed
  StandardPairCertificate pair;
  CondensationEstimate estimate;
  double p = 0.0;
  double M = 0.0;
  unsigned r = 0;
  std::uint64_t check_seed = 0;
};

struct DenseSubgraphCertificate {
  std::uint32_t iteration = 0;
  VertexSet removed_lowers;
  VertexId v1 = 0;
  VertexId v2 = 0;
  VertexSet uppers;
  VertexSet lowers;
  Density measured;
  double claimed_bound = 0.0;  // (h / (2 lower_count))^(1/r)
  double h = 0.0;
  unsigned r = 0;
  double upper_floor_stated = 0.0;  // alpha^2 / 2 * upper_count
  double upper_floor_built = 0.0;   // (1 - mu) ((1 - mu) alpha)^2 * upper_count
};

struct BlockCertificate {
  BipartiteGraph graph{1, 1};        // same uppers as g; lowers relabelled block by block
  std::vector<VertexId> lower_ids;   // lower of graph -> lower of g
  BlockStructure blocks;
  std::vector<std::pair<VertexId, VertexId>> pairs;  // standard pair of each iteration
};

using TrichotomyCertificate = std::variant<NonCondensedCertificate, DenseSubgraphCertificate, BlockCertificate>;

/// "non-condensed", "dense-subgraph" or "block-structured".
const char* certificate_kind(const TrichotomyCertificate& c);

struct RecheckResult {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/// Re-derives every claim of a certificate from g with bigraph primitives.
RecheckResult recheck_certificate(const BipartiteGraph& g, const TrichotomyCertificate& cert,
                                  const ParameterSchedule& schedule);

struct TrichotomyBudgets {
  std::uint32_t pair_attempts = 100;
  std::uint64_t tuple_samples = 20000;
  std::uint64_t condensation_samples = 2048;
  std::uint64_t condensation_max_samples = 65536;
  std::uint64_t outer_samples = 512;
  std::uint64_t inner_samples = 256;
  std::uint32_t max_iterations = 4096;
};

struct IterationRecord {
  std::uint32_t iteration = 0;
  double density = 0.0;
  double density_floor = 0.0;
  VertexId v1 = 0;
  VertexId v2 = 0;
  std::uint64_t cn_size = 0;
  double p_hat = 0.0;
  double radius = 0.0;
  std::uint64_t samples = 0;
  double expectation = 0.0;
  std::string branch;
  std::uint64_t raw_block_size = 0;  // |S| before trimming or padding
};

struct TrichotomyReport {
  std::optional<TrichotomyCertificate> certificate;
  std::string failure_stage;
  std::uint32_t failure_iteration = 0;
  std::vector<IterationRecord> iterations;
  std::vector<std::string> notes;
};

/// Iterates standard pair, condensation test, expectation test and block
/// extraction until one of the three outcomes is certified. Every certificate
/// is re-checked before it is returned. Requires density(g) >= alpha and
/// ((1 - mu) alpha)^2 upper_count >= r^2.
TrichotomyReport trichotomy_drive(const BipartiteGraph& g, const ParameterSchedule& schedule,
                                  const TrichotomyBudgets& budgets, const Rng& rng);

struct AutoEmbedReport {
  TrichotomyReport trichotomy;
  std::string branch;  // certificate kind, or empty
  std::optional<CubeEmbedding> embedding;
  std::string embedder_stage;  // failure stage of the dispatched embedder
  std::vector<std::string> notes;
  bool fallback_used = false;
  std::optional<BruteStatus> fallback_status;
};

struct AutoEmbedOptions {
  std::uint32_t embedder_trials = 8;
  unsigned brute_force_max_n = 4;
  BruteOptions brute;
};

/// Runs the driver, then the embedder matching the certificate; falls back to
/// exhaustive search for small n when that fails. The embedding is verified on g.
AutoEmbedReport embed_auto(const BipartiteGraph& g, unsigned n, const ParameterSchedule& schedule,
                           const TrichotomyBudgets& budgets, std::uint64_t seed, const AutoEmbedOptions& options = {});

/// Symmetric 2-colouring of K_n stored as a full n x n matrix (diagonal ignored).
struct EdgeColoring {
  std::uint32_t n = 0;
  std::vector<std::uint8_t> color;
  std::uint8_t at(std::uint32_t i, std::uint32_t j) const { return color[std::size_t{i} * n + j]; }
};

struct RamseyReduction {
  BipartiteGraph graph{1, 1};
  std::uint8_t color = 0;
  std::uint64_t cut_edges[2] = {0, 0};
};

/// Splits 0..N/2-1 against N/2..N-1 and keeps the majority colour across the cut
/// (ties go to colour 0). Requires N even.
RamseyReduction ramsey_reduce(const EdgeColoring& coloring);

}  // namespace hcembed
