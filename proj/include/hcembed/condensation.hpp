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
#include <string>
#include <utility>
#include <vector>

#include "hcembed/bigraph.hpp"
#include "hcembed/drc.hpp"
#include "hcembed/embedding.hpp"
#include "hcembed/rng.hpp"

namespace hcembed {

/// Measured evidence that (v1, v2) is a standard pair.
struct StandardPairCertificate {
  VertexId v1 = 0;
  VertexId v2 = 0;
  double alpha0 = 0.0;
  double alpha = 0.0;
  double mu = 0.0;
  unsigned r = 0;
  double C_standard = 1.0;
  double K = 0.0;  // C_standard * r^3
  double delta_tilde = 0.0;  // mu / r
  double L = 0.0;  // 2 / (delta_tilde * alpha^2)
  std::uint64_t cn_size = 0;
  std::uint32_t upper_count = 0;
  std::uint32_t lower_count = 0;
  std::vector<double> beta_grid;
  std::vector<double> bad_tuple_bounds;
  std::vector<double> bad_tuple_counts;  // exact counts, or sampled upper confidence ends
  bool counts_exact = true;
};

/// beta_l = alpha (1 - ((alpha - alpha0) / alpha) (l / r)), l = 0..r-1.
std::vector<double> standard_beta_grid(double alpha, double alpha0, unsigned r);

struct StandardPairOptions {
  double alpha0 = 0.1;
  double mu = 0.05;
  unsigned r = 2;
  std::uint32_t attempts = 100;
  /// Density lower bound to certify against; defaults to density(g).
  std::optional<double> alpha;
  double C_standard = 1.0;
  std::uint64_t exact_cap = kDefaultTupleCap;
  std::uint64_t tuple_samples = 20000;
};

struct StandardPairResult {
  std::optional<StandardPairCertificate> certificate;
  std::string failure;  // condition that rejected the best candidate
  std::optional<StandardPairCertificate> best;
  std::uint32_t attempts_used = 0;
};

/// Samples (X1, X2) i.i.d. uniform lowers until both measured conditions hold.
/// Requires alpha > alpha0 and ((1 - mu) alpha)^2 * upper_count >= r^2.
StandardPairResult find_standard_pair(const BipartiteGraph& g, const StandardPairOptions& options,
                                      const Rng& rng);

struct BadTupleCount {
  double count = 0.0;
  bool exact = true;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double radius = 0.0;  // Wilson half-width scaled to a count
};

/// Ordered r-tuples (repeats allowed) from base with |CN| <= threshold_size.
BadTupleCount bad_tuple_count_exact(const BipartiteGraph& g, const VertexSet& base, unsigned r,
                                    double threshold_size, std::uint64_t cap = kDefaultTupleCap);
BadTupleCount bad_tuple_count_sampled(const BipartiteGraph& g, const VertexSet& base, unsigned r,
                                      double threshold_size, std::uint64_t samples, const Rng& rng);

struct CondensationEstimate {
  double p_hat = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double M = 0.0;
  double wilson_radius = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 1.0;
};

/// Fraction of independent pairs of r-tuples (Y, Y~) drawn with replacement
/// from CN(v1, v2) whose common neighbourhoods share at least M lowers.
CondensationEstimate estimate_condensation(const BipartiteGraph& g, VertexId v1, VertexId v2, unsigned r,
                                           double M, std::uint64_t samples, const Rng& rng);

/// Decision helpers: p = 1 can only be met by p_hat = 1.
bool decisively_condensed(const CondensationEstimate& e, double p);
bool decisively_non_condensed(const CondensationEstimate& e, double p);

struct HEmbedOptions {
  std::uint32_t resample_budget = 64;
  double c_chernoff = 0.25;
  unsigned min_r = 3;
  bool tile = true;
};

struct HEmbedReport {
  std::optional<PatternEmbedding> embedding;  // embedding of the caller's H
  std::string failure_stage;
  std::map<std::string, std::uint64_t> counters;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> notes;

  // Phase data for the (possibly tiled) instance that was embedded.
  std::uint32_t m = 0;
  std::vector<std::uint32_t> Q;  // placement order: ascending |CN|
  std::vector<std::uint32_t> W;
  std::vector<std::uint32_t> R;
  std::vector<std::uint64_t> cn_sizes;
  double beta0_r_D = 0.0;  // beta0^r * lower_count
  VerifyResult verification;

  bool success() const { return embedding.has_value(); }
};

/// Disjoint union of `copies` copies of h.
BipartiteGraph tile_pattern(const BipartiteGraph& h, std::uint32_t copies);

/// Embeds an r-regular bipartite H (uppers to CN(v1, v2), lowers to lowers)
/// in three phases: a resampled m-tuple, deterministic placement of Q and W,
/// then random candidates for R.
HEmbedReport embed_regular_noncondensed(const BipartiteGraph& g, const StandardPairCertificate& cert,
                                        const BipartiteGraph& h, double M, double p, const Rng& rng,
                                        const HEmbedOptions& options = {});

}  // namespace hcembed
