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

#include "hcembed/drc.hpp"

#include <cmath>

#include "hcembed/errors.hpp"
#include "hcembed/exact.hpp"

namespace hcembed {

namespace {

constexpr unsigned kMaxSamples = 64;

}  // namespace

std::uint64_t checked_power(std::uint64_t base, unsigned e, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (base != 0 && out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

std::vector<std::uint64_t> tuple_cn_histogram(const BipartiteGraph& g, std::span<const VertexId> base,
                                              unsigned r) {
  std::vector<std::uint64_t> hist(g.lower_count() + 1, 0);
  if (base.empty() || r == 0) {
    if (r == 0) hist[g.lower_count()] = 1;
    return hist;
  }
  std::vector<BitVec> level(r + 1, BitVec::full(g.lower_count()));
  std::vector<std::size_t> idx(r, 0);
  const std::size_t n = base.size();
  unsigned depth = 0;
  while (true) {
    if (depth == r) {
      ++hist[level[r].count()];
      while (depth > 0 && idx[depth - 1] + 1 == n) --depth;
      if (depth == 0) return hist;
      ++idx[depth - 1];
      level[depth] = level[depth - 1];
      level[depth] &= g.row(base[idx[depth - 1]]);
      continue;
    }
    idx[depth] = 0;
    level[depth + 1] = level[depth];
    level[depth + 1] &= g.row(base[0]);
    ++depth;
  }
}

Rational expected_cn_size_exact(const BipartiteGraph& g, unsigned s) {
  if (s < 1) throw InputError("expected_cn_size_exact: s must be >= 1");
  std::vector<std::uint64_t> by_degree(g.lower_count() + 1, 0);
  for (VertexId u = 0; u < g.upper_count(); ++u) ++by_degree[g.row(u).count()];
  Rational sum = 0;
  for (std::size_t d = 1; d < by_degree.size(); ++d)
    if (by_degree[d] != 0) sum += rational_u64(by_degree[d]) * rational_pow(rational_u64(d, g.lower_count()), s);
  return sum;
}

Rational expected_bad_tuples_exact(const BipartiteGraph& g, const DrcParams& p, std::uint64_t cap) {
  if (p.s < 1 || p.r < 1) throw InputError("expected_bad_tuples_exact: s and r must be >= 1");
  if (!(p.beta > 0) || p.beta > p.alpha || p.alpha > 1)
    throw InputError("expected_bad_tuples_exact: need 0 < beta <= alpha <= 1");
  if (p.alpha > density(g).exact)
    throw InputError("expected_bad_tuples_exact: alpha exceeds the graph density");
  if (checked_power(g.upper_count(), p.r, cap) > cap)
    throw CapExceeded("expected_bad_tuples_exact: upper_count^r exceeds the enumeration cap; "
                      "use sampled bad-tuple counting instead");

  std::vector<VertexId> all(g.upper_count());
  for (VertexId u = 0; u < g.upper_count(); ++u) all[u] = u;
  const auto hist = tuple_cn_histogram(g, all, p.r);
  const Rational threshold = rational_pow(p.beta, p.r) * rational_u64(g.lower_count());
  Rational sum = 0;
  for (std::size_t c = 1; c < hist.size(); ++c) {
    if (hist[c] == 0 || rational_u64(c) > threshold) continue;
    sum += rational_u64(hist[c]) * rational_pow(rational_u64(c, g.lower_count()), p.s);
  }
  return sum;
}

std::size_t sample_cn_size(const BipartiteGraph& g, unsigned s, Rng& rng) {
  BitVec cn = BitVec::full(g.upper_count());
  for (unsigned i = 0; i < s; ++i) cn &= g.column(static_cast<VertexId>(rng.uniform_below(g.lower_count())));
  return cn.count();
}

unsigned drc_sample_count(const BipartiteGraph& g, unsigned n, std::vector<std::string>* notes) {
  const double alpha = density(g).value;
  const double ratio = static_cast<double>(g.upper_count()) / std::ldexp(1.0, static_cast<int>(n));
  auto note = [&](const std::string& msg) {
    if (notes) notes->push_back(msg);
  };
  if (alpha <= 0.0) {
    note("s clamped to 1 (density is 0)");
    return 1;
  }
  if (alpha >= 1.0) {
    note("s clamped to " + std::to_string(kMaxSamples) + " (density is 1)");
    return kMaxSamples;
  }
  const double raw = std::floor(std::log(ratio) / std::log(1.0 / alpha));
  if (raw < 1.0) {
    note("s clamped to 1 (formula gives " + std::to_string(static_cast<long long>(raw)) + ")");
    return 1;
  }
  if (raw > kMaxSamples) {
    note("s clamped to " + std::to_string(kMaxSamples));
    return kMaxSamples;
  }
  return static_cast<unsigned>(raw);
}

EmbedReport drc_embed_cube(const BipartiteGraph& g, unsigned n, const DrcOptions& opt) {
  if (n < 1 || n > kMaxCubeDim) throw InputError("drc_embed_cube: n must be in [1, 24]");
  if (opt.trials == 0) throw InputError("drc_embed_cube: trials must be positive");
  const std::uint32_t half = std::uint32_t{1} << (n - 1);
  if (g.upper_count() < half) throw InputError("drc_embed_cube: upper_count < 2^(n-1)");

  EmbedReport rep;
  const unsigned s = drc_sample_count(g, n, &rep.notes);
  const double beta = 2.0 / std::pow(static_cast<double>(g.lower_count()), 1.0 / n);
  rep.params.emplace_back("s", std::to_string(s));
  rep.params.emplace_back("beta", std::to_string(beta));
  rep.params.emplace_back("alpha", std::to_string(density(g).value));
  rep.params.emplace_back("resample_budget", std::to_string(opt.resample_budget));

  const Rng root(opt.seed);
  for (std::uint32_t t = 0; t < opt.trials; ++t) {
    Rng rng = root.stream(t);
    ++rep.counters["trials"];
    BitVec a;
    bool big_enough = false;
    for (std::uint32_t attempt = 0; attempt < std::max<std::uint32_t>(opt.resample_budget, 1); ++attempt) {
      a = BitVec::full(g.upper_count());
      for (unsigned i = 0; i < s; ++i) a &= g.column(static_cast<VertexId>(rng.uniform_below(g.lower_count())));
      ++rep.counters["samples drawn"];
      if (a.count() >= half) {
        big_enough = true;
        break;
      }
    }
    if (!big_enough) {
      ++rep.counters["A too small"];
      rep.failure_stage = "A too small";
      continue;
    }
    const auto ids = a.to_indices();
    const auto odd_images = sample_distinct_from(ids, half, rng);
    GreedyResult gr = greedy_extend(g, n, Side::Upper, odd_images);
    if (!gr.embedding) {
      ++rep.counters["greedy stuck"];
      rep.failure_stage = "greedy stuck";
      continue;
    }
    if (!verify_embedding(g, *gr.embedding).ok()) {
      ++rep.counters["verify failed"];
      rep.failure_stage = "verify failed";
      continue;
    }
    ++rep.counters["success"];
    if (!rep.embedding) rep.embedding = std::move(gr.embedding);
    if (!opt.run_all_trials) break;
  }
  if (rep.embedding) rep.failure_stage.clear();
  return rep;
}

}  // namespace hcembed
