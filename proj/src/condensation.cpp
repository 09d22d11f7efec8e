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

#include "hcembed/condensation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hcembed/errors.hpp"
#include "hcembed/parallel.hpp"
#include "hcembed/stats.hpp"

namespace hcembed {

namespace {

constexpr double kGuard = 1e-9;
constexpr std::uint64_t kChunk = 2048;

std::vector<double> bad_bounds(const StandardPairCertificate& c) {
  std::vector<double> out;
  for (double beta : c.beta_grid)
    out.push_back(c.L * c.r * std::pow(beta, 2.0 * c.r) * std::pow(static_cast<double>(c.upper_count), c.r));
  return out;
}

struct Hist {
  std::vector<std::uint64_t> h;
  Hist& operator+=(const Hist& o) {
    if (h.size() < o.h.size()) h.resize(o.h.size(), 0);
    for (std::size_t i = 0; i < o.h.size(); ++i) h[i] += o.h[i];
    return *this;
  }
};

// Histogram of |CN| over `samples` uniform r-tuples from base.
std::vector<std::uint64_t> sampled_histogram(const BipartiteGraph& g, const std::vector<VertexId>& base,
                                             unsigned r, std::uint64_t samples, const Rng& rng) {
  return parallel_chunked_sum<Hist>(samples, kChunk, rng, [&](Rng& local, std::uint64_t count) {
           Hist out{std::vector<std::uint64_t>(g.lower_count() + 1, 0)};
           BitVec cn(g.lower_count());
           for (std::uint64_t i = 0; i < count; ++i) {
             cn = BitVec::full(g.lower_count());
             for (unsigned k = 0; k < r; ++k) cn &= g.row(base[local.uniform_below(base.size())]);
             ++out.h[cn.count()];
           }
           return out;
         }).h;
}

std::uint64_t count_at_most(const std::vector<std::uint64_t>& hist, double threshold) {
  std::uint64_t sum = 0;
  for (std::size_t c = 0; c < hist.size() && static_cast<double>(c) <= threshold; ++c) sum += hist[c];
  return sum;
}

}  // namespace

std::vector<double> standard_beta_grid(double alpha, double alpha0, unsigned r) {
  std::vector<double> grid(r);
  for (unsigned l = 0; l < r; ++l) grid[l] = alpha * (1.0 - ((alpha - alpha0) / alpha) * (double(l) / r));
  return grid;
}

StandardPairResult find_standard_pair(const BipartiteGraph& g, const StandardPairOptions& opt,
                                      const Rng& rng) {
  const double alpha = opt.alpha.value_or(density(g).value);
  if (!(alpha > opt.alpha0) || opt.alpha0 <= 0.0) throw InputError("find_standard_pair: need alpha > alpha0 > 0");
  if (!(opt.mu > 0.0) || opt.r < 1) throw InputError("find_standard_pair: need mu > 0 and r >= 1");
  const double U = g.upper_count();
  if (std::pow((1.0 - opt.mu) * alpha, 2) * U < double(opt.r) * opt.r)
    throw InputError("find_standard_pair: ((1 - mu) alpha)^2 |V^up| < r^2");

  StandardPairCertificate tmpl;
  tmpl.alpha0 = opt.alpha0;
  tmpl.alpha = alpha;
  tmpl.mu = opt.mu;
  tmpl.r = opt.r;
  tmpl.C_standard = opt.C_standard;
  tmpl.K = opt.C_standard * std::pow(double(opt.r), 3);
  tmpl.delta_tilde = opt.mu / opt.r;
  tmpl.L = 2.0 / (tmpl.delta_tilde * alpha * alpha);
  tmpl.upper_count = g.upper_count();
  tmpl.lower_count = g.lower_count();
  tmpl.beta_grid = standard_beta_grid(alpha, opt.alpha0, opt.r);
  tmpl.bad_tuple_bounds = bad_bounds(tmpl);
  const double need_cn = (1.0 - tmpl.delta_tilde) * alpha * alpha * U;

  StandardPairResult res;
  bool best_passed_size = false;
  for (std::uint32_t attempt = 0; attempt < opt.attempts; ++attempt) {
    Rng local = rng.stream(attempt);
    StandardPairCertificate c = tmpl;
    c.v1 = static_cast<VertexId>(local.uniform_below(g.lower_count()));
    c.v2 = static_cast<VertexId>(local.uniform_below(g.lower_count()));
    BitVec a = g.column(c.v1);
    a &= g.column(c.v2);
    c.cn_size = a.count();
    res.attempts_used = attempt + 1;

    if (static_cast<double>(c.cn_size) < need_cn) {
      if (!best_passed_size && (!res.best || c.cn_size > res.best->cn_size)) {
        res.best = c;
        res.failure = "common neighbourhood below (1 - mu/r) alpha^2 |V^up|";
      }
      continue;
    }

    const auto ids = a.to_indices();
    std::vector<std::uint64_t> hist;
    const double total = std::pow(static_cast<double>(ids.size()), opt.r);
    c.counts_exact = checked_power(ids.size(), opt.r, opt.exact_cap) <= opt.exact_cap;
    std::uint64_t sampled = 0;
    if (c.counts_exact) {
      hist = tuple_cn_histogram(g, ids, opt.r);
    } else {
      sampled = opt.tuple_samples;
      hist = sampled_histogram(g, ids, opt.r, sampled, local.stream(1));
    }
    bool ok = true;
    std::size_t failed_level = 0;
    for (std::size_t l = 0; l < c.beta_grid.size(); ++l) {
      const double threshold = std::pow(c.beta_grid[l], opt.r) * g.lower_count();
      const std::uint64_t hits = count_at_most(hist, threshold);
      const double count =
          c.counts_exact ? static_cast<double>(hits) : wilson_interval(hits, sampled).high * total;
      c.bad_tuple_counts.push_back(count);
      if (ok && count > c.bad_tuple_bounds[l]) {
        ok = false;
        failed_level = l;
      }
    }
    if (ok) {
      res.certificate = c;
      res.best = c;
      res.failure.clear();
      return res;
    }
    best_passed_size = true;
    res.best = c;
    res.failure = "bad tuple count above bound at beta_" + std::to_string(failed_level);
  }
  if (res.failure.empty()) res.failure = "no attempts";
  return res;
}

BadTupleCount bad_tuple_count_exact(const BipartiteGraph& g, const VertexSet& base, unsigned r,
                                    double threshold_size, std::uint64_t cap) {
  if (base.side != Side::Upper) throw InputError("bad_tuple_count: base must be a set of uppers");
  const auto ids = base.ids();
  if (checked_power(ids.size(), r, cap) > cap)
    throw CapExceeded("bad_tuple_count: |base|^r exceeds the enumeration cap");
  const auto hist = tuple_cn_histogram(g, ids, r);
  BadTupleCount out;
  out.count = static_cast<double>(count_at_most(hist, threshold_size));
  return out;
}

BadTupleCount bad_tuple_count_sampled(const BipartiteGraph& g, const VertexSet& base, unsigned r,
                                      double threshold_size, std::uint64_t samples, const Rng& rng) {
  if (base.side != Side::Upper) throw InputError("bad_tuple_count: base must be a set of uppers");
  if (samples == 0) throw InputError("bad_tuple_count: need at least one sample");
  const auto ids = base.ids();
  if (ids.empty()) return {};
  const auto hist = sampled_histogram(g, ids, r, samples, rng);
  const double total = std::pow(static_cast<double>(ids.size()), r);
  BadTupleCount out;
  out.exact = false;
  out.samples = samples;
  out.hits = count_at_most(hist, threshold_size);
  out.count = total * static_cast<double>(out.hits) / static_cast<double>(samples);
  out.radius = total * wilson_interval(out.hits, samples).radius;
  return out;
}

CondensationEstimate estimate_condensation(const BipartiteGraph& g, VertexId v1, VertexId v2, unsigned r,
                                           double M, std::uint64_t samples, const Rng& rng) {
  const VertexId pair[2] = {v1, v2};
  const auto base = common_neighborhood(g, Side::Lower, pair).ids();
  if (base.empty()) throw InputError("estimate_condensation: CN(v1, v2) is empty");
  if (samples == 0) throw InputError("estimate_condensation: need at least one sample");
  const std::uint64_t hits = parallel_chunked_sum<std::uint64_t>(
      samples, kChunk, rng, [&](Rng& local, std::uint64_t count) {
        std::uint64_t h = 0;
        BitVec a(g.lower_count()), b(g.lower_count());
        for (std::uint64_t i = 0; i < count; ++i) {
          a = BitVec::full(g.lower_count());
          b = BitVec::full(g.lower_count());
          for (unsigned k = 0; k < r; ++k) a &= g.row(base[local.uniform_below(base.size())]);
          for (unsigned k = 0; k < r; ++k) b &= g.row(base[local.uniform_below(base.size())]);
          if (static_cast<double>(a.and_count(b)) >= M) ++h;
        }
        return h;
      });
  CondensationEstimate e;
  e.samples = samples;
  e.hits = hits;
  e.M = M;
  e.p_hat = static_cast<double>(hits) / static_cast<double>(samples);
  const WilsonInterval w = wilson_interval(hits, samples);
  e.wilson_radius = w.radius;
  e.wilson_low = w.low;
  e.wilson_high = w.high;
  return e;
}

bool decisively_condensed(const CondensationEstimate& e, double p) {
  if (e.samples == 0) return false;
  if (p >= 1.0) return e.hits == e.samples;
  return e.p_hat - e.wilson_radius >= p;
}

bool decisively_non_condensed(const CondensationEstimate& e, double p) {
  return e.samples > 0 && e.p_hat + e.wilson_radius < p;
}

BipartiteGraph tile_pattern(const BipartiteGraph& h, std::uint32_t copies) {
  if (copies == 0) throw InputError("tile_pattern: need at least one copy");
  GraphBuilder b(h.upper_count() * copies, h.lower_count() * copies);
  const auto edges = h.edges();
  for (std::uint32_t c = 0; c < copies; ++c)
    for (auto [u, v] : edges) b.add_edge(c * h.upper_count() + u, c * h.lower_count() + v);
  return std::move(b).build();
}

HEmbedReport embed_regular_noncondensed(const BipartiteGraph& g, const StandardPairCertificate& cert,
                                        const BipartiteGraph& h, double M, double p, const Rng& rng,
                                        const HEmbedOptions& opt) {
  const std::uint32_t m0 = h.upper_count();
  if (h.lower_count() != m0) throw InputError("embed_regular_noncondensed: H must have m + m vertices");
  const unsigned r = cert.r;
  for (VertexId v = 0; v < m0; ++v)
    if (h.degree(Side::Upper, v) != r || h.degree(Side::Lower, v) != r)
      throw InputError("embed_regular_noncondensed: H is not r-regular for the certificate's r");
  if (r < opt.min_r) throw InputError("embed_regular_noncondensed: r below the configured minimum");
  if (cert.v1 >= g.lower_count() || cert.v2 >= g.lower_count())
    throw InputError("embed_regular_noncondensed: certificate does not match the graph");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("embed_regular_noncondensed: p must lie in [0, 1]");

  BitVec base_bits = g.column(cert.v1);
  base_bits &= g.column(cert.v2);
  const auto base = base_bits.to_indices();
  if (base.size() < m0) throw InputError("embed_regular_noncondensed: |CN(v1, v2)| < m");

  HEmbedReport rep;
  const double D = g.lower_count();
  const double alpha = cert.alpha;
  const double K = cert.K;

  std::uint32_t copies = 1;
  const double target = std::pow(alpha, r) * D;
  if (opt.tile && m0 < target) {
    copies = static_cast<std::uint32_t>(std::ceil(target / m0));
    if (std::uint64_t{copies} * m0 > base.size()) {
      copies = static_cast<std::uint32_t>(base.size() / m0);
      rep.notes.push_back("tiling capped at " + std::to_string(copies) + " copies by |CN(v1, v2)|");
    }
  }
  const BipartiteGraph ht = copies == 1 ? h : tile_pattern(h, copies);
  const std::uint32_t m = m0 * copies;
  rep.m = m;
  rep.params.emplace_back("m", std::to_string(m));
  rep.params.emplace_back("copies", std::to_string(copies));
  rep.params.emplace_back("r", std::to_string(r));
  rep.params.emplace_back("M", std::to_string(M));
  rep.params.emplace_back("p", std::to_string(p));

  std::vector<std::vector<VertexId>> I(m);
  for (VertexId j = 0; j < m; ++j) I[j] = ht.column(j).to_indices();

  // Phase 1: resample the m-tuple until conditions (a) and (b) hold.
  std::vector<VertexId> y;
  std::vector<BitVec> cn(m);
  std::vector<std::uint64_t> sizes(m);
  std::vector<std::vector<std::uint32_t>> heavy(m);  // heavy[j] = indices with overlap >= M
  bool accepted = false;
  const double pair_cap = std::pow(3.0, 7) * p * double(m) * m * (1.0 + kGuard);
  for (std::uint32_t attempt = 0; attempt < opt.resample_budget && !accepted; ++attempt) {
    Rng local = rng.stream(attempt);
    ++rep.counters["phase1 attempts"];
    y = sample_distinct_from(base, m, local);
    for (VertexId j = 0; j < m; ++j) {
      cn[j] = BitVec::full(g.lower_count());
      for (VertexId i : I[j]) cn[j] &= g.row(y[i]);
      sizes[j] = cn[j].count();
    }
    bool cond_a = true;
    for (double beta : cert.beta_grid) {
      const double thr = std::pow(beta, r) * D;
      const auto bad = std::count_if(sizes.begin(), sizes.end(), [&](std::uint64_t c) { return double(c) <= thr; });
      if (double(bad) > m * K * std::pow(beta, 2.0 * r) * std::pow(alpha, -2.0 * r)) cond_a = false;
    }
    if (!cond_a) {
      ++rep.counters["phase1 (a) rejected"];
      continue;
    }
    std::uint64_t heavy_pairs = 0;
    for (VertexId j = 0; j < m; ++j) heavy[j].clear();
    for (VertexId j1 = 0; j1 < m; ++j1) {
      for (VertexId j2 = j1; j2 < m; ++j2) {
        if (double(cn[j1].and_count(cn[j2])) < M) continue;
        heavy[j1].push_back(j2);
        if (j1 != j2) heavy[j2].push_back(j1);
        heavy_pairs += j1 == j2 ? 1 : 2;
      }
    }
    if (double(heavy_pairs) > pair_cap) {
      ++rep.counters["phase1 (b) rejected"];
      continue;
    }
    rep.counters["heavy pairs"] = heavy_pairs;
    accepted = true;
  }
  if (!accepted) {
    rep.failure_stage = "resample budget";
    return rep;
  }
  rep.cn_sizes = sizes;

  // Phase 2: partition into Q, W, R and place Q then W deterministically.
  rep.beta0_r_D = std::pow(alpha, 2.0 * r) * D * D / (4.0 * m * K);
  const double w_need = std::sqrt(p) * m * (1.0 - kGuard);
  for (VertexId j = 0; j < m; ++j) {
    if (double(sizes[j]) <= rep.beta0_r_D)
      rep.Q.push_back(j);
    else if (double(heavy[j].size()) >= w_need)
      rep.W.push_back(j);
    else
      rep.R.push_back(j);
  }
  std::stable_sort(rep.Q.begin(), rep.Q.end(), [&](std::uint32_t a, std::uint32_t b) { return sizes[a] < sizes[b]; });
  rep.counters["|Q|"] = rep.Q.size();
  rep.counters["|W|"] = rep.W.size();
  rep.counters["|R|"] = rep.R.size();

  std::vector<VertexId> lower_image(m);
  BitVec used(g.lower_count());
  for (const auto* part : {&rep.Q, &rep.W}) {
    for (std::uint32_t j : *part) {
      BitVec cand = cn[j];
      cand.subtract(used);
      const std::size_t pick = cand.find_first();
      if (pick == BitVec::npos) {
        rep.failure_stage = "Q/W greedy stuck";
        return rep;
      }
      used.set(pick);
      lower_image[j] = static_cast<VertexId>(pick);
    }
  }

  // Phase 3: h random candidates per R index, then distinct representatives in order.
  const std::uint64_t h_raw = static_cast<std::uint64_t>(std::ceil(10.0 / opt.c_chernoff * std::log(D)));
  rep.params.emplace_back("h", std::to_string(h_raw));
  Rng phase3 = rng.stream(std::uint64_t{1} << 40);
  const BitVec fixed = used;
  std::vector<std::vector<VertexId>> candidates(m);
  for (std::uint32_t j : rep.R) {
    BitVec avail = cn[j];
    avail.subtract(fixed);
    const auto pool = avail.to_indices();
    if (pool.empty()) continue;
    const std::uint64_t draws = std::clamp<std::uint64_t>(h_raw, 1, pool.size());
    for (std::uint64_t t = 0; t < draws; ++t) candidates[j].push_back(pool[phase3.uniform_below(pool.size())]);
  }
  for (std::uint32_t j : rep.R) {
    bool placed = false;
    for (VertexId z : candidates[j]) {
      if (used.test(z)) continue;
      used.set(z);
      lower_image[j] = z;
      placed = true;
      break;
    }
    if (!placed) {
      rep.failure_stage = "no fresh representative";
      return rep;
    }
  }

  PatternEmbedding tiled{Side::Upper, y, lower_image};
  const VerifyResult vt = verify_pattern_embedding(g, ht, tiled);
  if (!vt.ok()) {
    rep.failure_stage = "verify failed";
    rep.verification = vt;
    return rep;
  }
  PatternEmbedding first{Side::Upper, std::vector<VertexId>(y.begin(), y.begin() + m0),
                         std::vector<VertexId>(lower_image.begin(), lower_image.begin() + m0)};
  rep.verification = verify_pattern_embedding(g, h, first);
  if (!rep.verification.ok()) {
    rep.failure_stage = "verify failed";
    return rep;
  }
  rep.embedding = std::move(first);
  return rep;
}

}  // namespace hcembed
