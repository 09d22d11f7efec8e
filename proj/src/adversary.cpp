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

#include "hcembed/adversary.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "hcembed/drc.hpp"
#include "hcembed/errors.hpp"
#include "hcembed/exact.hpp"
#include "hcembed/parallel.hpp"
#include "hcembed/stats.hpp"

namespace hcembed {

GammaShape gamma_shape(const GammaParams& p) {
  if (!(p.epsilon > 0.0 && p.epsilon <= 1.0)) throw InputError("gamma_shape: epsilon must lie in (0, 1]");
  if (p.n < 1) throw InputError("gamma_shape: n must be positive");
  const double side = std::ceil(std::exp2(p.n - p.epsilon * p.n / 2.0));
  if (2.0 * side * side > double(1 << 24)) throw InputError("gamma_shape: host too large");
  const auto b = static_cast<std::uint32_t>(side);
  return {2 * b, b, 2 * b * b};
}

BlockGraph generate_gamma(const GammaShape& s, Rng& rng) {
  if (s.k_blocks < 2 || s.k_blocks % 2 != 0) throw InputError("generate_gamma: k_blocks must be even and >= 2");
  if (s.block_size == 0 || s.upper_count == 0) throw InputError("generate_gamma: empty part");
  const std::uint64_t lowers = std::uint64_t{s.k_blocks} * s.block_size;
  if (lowers > (std::uint64_t{1} << 24)) throw InputError("generate_gamma: too many lowers");

  const auto lower_count = static_cast<std::uint32_t>(lowers);
  BlockStructure bs;
  bs.k = s.k_blocks;
  bs.g_size = s.block_size;
  bs.delta = 0.0;
  std::vector<BitVec> block_bits;
  for (std::uint32_t l = 0; l < s.k_blocks; ++l) {
    VertexSet lo = VertexSet::none(Side::Lower, lower_count);
    for (std::uint32_t j = 0; j < s.block_size; ++j) lo.bits.set(l * s.block_size + j);
    block_bits.push_back(lo.bits);
    bs.lower_blocks.push_back(std::move(lo));
    bs.upper_sets.push_back(VertexSet::none(Side::Upper, s.upper_count));
  }
  std::vector<BitVec> rows;
  rows.reserve(s.upper_count);
  for (VertexId u = 0; u < s.upper_count; ++u) {
    BitVec row(lower_count);
    for (std::uint32_t l : sample_distinct(s.k_blocks, s.k_blocks / 2, rng)) {
      row |= block_bits[l];
      bs.upper_sets[l].bits.set(u);
    }
    rows.push_back(std::move(row));
  }
  std::size_t smallest = s.upper_count;
  for (const auto& up : bs.upper_sets) smallest = std::min(smallest, up.count());
  double gamma = static_cast<double>(smallest) / s.upper_count;
  if (rational_from_double(gamma) * rational_u64(s.upper_count) > rational_u64(smallest))
    gamma = std::nextafter(gamma, 0.0);
  bs.gamma = gamma;
  return {BipartiteGraph(lower_count, std::move(rows)), std::move(bs)};
}

CoveringReport covering_property_estimate(const BipartiteGraph& g, const BlockStructure& bs, std::uint32_t s_size,
                                          unsigned arity, std::uint64_t tuple_samples, std::uint32_t t_block_budget,
                                          const Rng& rng) {
  if (s_size == 0 || s_size > g.upper_count()) throw InputError("covering: |S| must lie in 1..upper_count");
  if (arity == 0) throw InputError("covering: arity must be positive");
  if (bs.lower_blocks.size() != bs.k) throw InputError("covering: malformed block structure");
  CoveringReport rep;
  Rng pick = rng.stream(0);
  rep.S = sample_distinct(g.upper_count(), s_size, pick);
  std::sort(rep.S.begin(), rep.S.end());

  rep.block_hits.assign(bs.k, 0);
  std::uint64_t hit_cells = 0;
  for (VertexId v : rep.S) {
    rep.cut_edges += g.row(v).count();
    for (std::uint32_t l = 0; l < bs.k; ++l)
      if (g.row(v).and_count(bs.lower_blocks[l].bits) != 0) ++rep.block_hits[l];
  }
  for (std::uint32_t l = 0; l < bs.k; ++l) {
    rep.deltas.push_back(static_cast<double>(rep.block_hits[l]) / s_size);
    hit_cells += rep.block_hits[l] * bs.lower_blocks[l].count();
  }
  rep.identity_ok = hit_cells == rep.cut_edges;

  std::vector<std::uint32_t> order(bs.k);
  for (std::uint32_t l = 0; l < bs.k; ++l) order[l] = l;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return rep.block_hits[a] > rep.block_hits[b]; });
  long double excluded = 0.0L;
  for (double d : rep.deltas) excluded += std::pow(static_cast<long double>(d), static_cast<long double>(arity));
  BitVec t_bits(g.lower_count());
  for (std::uint32_t l : order) {
    if (excluded <= 0.5L) break;
    if (rep.T_blocks.size() >= t_block_budget) {
      rep.budget_hit = true;
      break;
    }
    rep.T_blocks.push_back(l);
    t_bits |= bs.lower_blocks[l].bits;
    excluded -= std::pow(static_cast<long double>(rep.deltas[l]), static_cast<long double>(arity));
  }
  rep.T_vertices = t_bits.count();
  rep.excluded_sum = static_cast<double>(std::max(0.0L, excluded));
  rep.analytic_bound = 1.0 - rep.excluded_sum;

  rep.samples = tuple_samples;
  if (tuple_samples > 0) {
    rep.covered = parallel_chunked_sum<std::uint64_t>(tuple_samples, 2048, rng.stream(1), [&](Rng& local,
                                                                                              std::uint64_t count) {
      std::uint64_t ok = 0;
      BitVec cn(g.lower_count());
      for (std::uint64_t i = 0; i < count; ++i) {
        cn = BitVec::full(g.lower_count());
        for (unsigned a = 0; a < arity; ++a) cn &= g.row(rep.S[local.uniform_below(rep.S.size())]);
        if (cn.is_subset_of(t_bits)) ++ok;
      }
      return ok;
    });
    rep.empirical = static_cast<double>(rep.covered) / static_cast<double>(tuple_samples);
    rep.std_error = proportion_stderr(rep.empirical, tuple_samples);
  }
  return rep;
}

DefeatReport drc_defeat_experiment(const BipartiteGraph& g, const BlockStructure& bs, unsigned n, std::uint32_t trials,
                                   const Rng& rng, const DefeatOptions& opt) {
  DefeatReport rep;
  rep.trials = trials;
  if (trials == 0) throw InputError("defeat: trials must be positive");
  const bool too_large = n < 1 || n > kMaxCubeDim || (std::uint64_t{1} << (n - 1)) > g.upper_count();
  if (too_large) {
    rep.drc_precondition = "2^(n-1) exceeds the upper part";
    rep.block_precondition = rep.drc_precondition;
    return rep;
  }
  using Clock = std::chrono::steady_clock;

  auto t0 = Clock::now();
  try {
    DrcOptions d;
    d.trials = trials;
    d.seed = rng.stream(0).next_u64();
    d.resample_budget = opt.drc_resample_budget;
    d.run_all_trials = true;
    const EmbedReport r = drc_embed_cube(g, n, d);
    rep.drc_counters = r.counters;
    rep.drc_successes = r.count("success");
  } catch (const InputError& e) {
    rep.drc_precondition = e.what();
  }
  rep.drc_seconds = std::chrono::duration<double>(Clock::now() - t0).count();

  t0 = Clock::now();
  try {
    BlockEmbedOptions b;
    b.trials = trials;
    b.seed = rng.stream(1).next_u64();
    b.selection_budget = opt.block_selection_budget;
    b.force = opt.force_blocks;
    b.run_all_trials = true;
    const BlockEmbedReport r = block_embed_cube(g, bs, n, opt.u, opt.w, b);
    rep.block_counters = r.counters;
    rep.block_successes = r.count("success");
    if (r.failure_stage.rfind("precondition", 0) == 0) rep.block_precondition = r.failure_stage;
  } catch (const InputError& e) {
    rep.block_precondition = e.what();
  }
  rep.block_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

}  // namespace hcembed
