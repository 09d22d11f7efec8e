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

#include "hcembed/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hcembed/errors.hpp"
#include "hcembed/exact.hpp"
#include "hcembed/parallel.hpp"

namespace hcembed {

namespace {

constexpr std::uint32_t kNoBlock = ~std::uint32_t{0};

Rational falling(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  mpz_class out = 1;
  for (std::uint64_t i = 0; i < k; ++i) out *= integer_u64(n - i);
  return Rational(out);
}

mpz_class ceil_of(const Rational& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

void check_lemma_shape(const BlockStructure& bs, unsigned r, unsigned w) {
  if (r < w + 2 || bs.g_size < r - w) throw InputError("need g >= r - w >= 2");
  if (bs.k < w + 1) throw InputError("need k >= w + 1");
}

VertexSet cn_of_uppers(const BipartiteGraph& g, std::span<const VertexId> y) {
  return common_neighborhood(g, Side::Upper, y);
}

}  // namespace

bool BlockValidation::bullet_ok(unsigned bullet) const {
  return std::none_of(violations.begin(), violations.end(),
                      [&](const BlockViolation& v) { return v.bullet == bullet; });
}

BlockValidation validate_block_structure(const BipartiteGraph& g, const BlockStructure& bs) {
  BlockValidation res;
  auto fail = [&](unsigned bullet, std::uint32_t block, std::string msg) {
    res.violations.push_back({bullet, block, std::move(msg)});
  };
  if (bs.lower_blocks.size() != bs.k || bs.upper_sets.size() != bs.k) {
    fail(1, 0, "expected " + std::to_string(bs.k) + " lower blocks and upper sets");
    return res;
  }
  if (bs.k == 0) {
    fail(1, 0, "no blocks");
    return res;
  }
  for (std::uint32_t l = 0; l < bs.k; ++l) {
    const VertexSet& lo = bs.lower_blocks[l];
    const VertexSet& up = bs.upper_sets[l];
    if (lo.side != Side::Lower || lo.bits.size() != g.lower_count() || up.side != Side::Upper ||
        up.bits.size() != g.upper_count()) {
      fail(1, l, "block sets do not match the graph");
      return res;
    }
  }

  BitVec covered(g.lower_count());
  for (std::uint32_t l = 0; l < bs.k; ++l) {
    const auto& lo = bs.lower_blocks[l].bits;
    if (lo.count() != bs.g_size)
      fail(1, l, "lower block has " + std::to_string(lo.count()) + " vertices, expected " + std::to_string(bs.g_size));
    if (lo.and_count(covered) != 0) fail(1, l, "lower block overlaps an earlier block");
    covered |= lo;
  }
  if (covered.count() != g.lower_count()) fail(1, 0, "lower blocks do not cover V^down");

  const Rational gamma_u = rational_from_double(bs.gamma) * rational_u64(g.upper_count());
  const Rational one_minus_delta = Rational(1) - rational_from_double(bs.delta);
  for (std::uint32_t l = 0; l < bs.k; ++l) {
    const auto& up = bs.upper_sets[l].bits;
    const auto& lo = bs.lower_blocks[l].bits;
    const std::size_t up_n = up.count();
    if (up_n == 0 || rational_u64(up_n) < gamma_u)
      fail(2, l, "upper set has " + std::to_string(up_n) + " vertices, below gamma |V^up|");

    std::uint64_t stray = 0;
    std::uint64_t inside = 0;
    lo.for_each_set([&](VertexId v) {
      const BitVec& col = g.column(v);
      const std::size_t in = col.and_count(up);
      inside += in;
      stray += col.count() - in;
    });
    if (stray != 0) fail(3, l, std::to_string(stray) + " edges leave the block's upper set");

    const std::uint64_t cells = std::uint64_t{up_n} * lo.count();
    if (cells == 0 || rational_u64(inside, cells) < one_minus_delta)
      fail(4, l, "block density " + std::to_string(cells ? double(inside) / double(cells) : 0.0) + " below 1 - delta");
  }
  return res;
}

BlockGraph generate_block_graph(std::uint32_t k, std::uint32_t g_size, std::uint32_t upper_count, double gamma,
                                double delta, Rng& rng) {
  if (k == 0 || g_size == 0) throw InputError("generate_block_graph: need k * g_size >= 1");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InputError("generate_block_graph: gamma must lie in (0, 1]");
  if (!(delta >= 0.0 && delta < 1.0)) throw InputError("generate_block_graph: delta must lie in [0, 1)");
  const mpz_class s_exact = ceil_of(rational_from_double(gamma) * rational_u64(upper_count));
  if (s_exact < 1 || s_exact > upper_count) throw InputError("generate_block_graph: ceil(gamma U) out of range");
  const auto s_up = static_cast<std::uint32_t>(s_exact.get_ui());
  const std::uint64_t lower_count = std::uint64_t{k} * g_size;
  if (lower_count > (std::uint64_t{1} << 24)) throw InputError("generate_block_graph: too many lowers");

  const mpz_class need_exact =
      ceil_of((Rational(1) - rational_from_double(delta)) * rational_u64(std::uint64_t{s_up} * g_size));
  const std::uint64_t need = need_exact.get_ui();
  const double keep = 1.0 - delta / 2.0;

  GraphBuilder b(upper_count, static_cast<std::uint32_t>(lower_count));
  BlockStructure bs;
  bs.delta = delta;
  bs.gamma = gamma;
  bs.k = k;
  bs.g_size = g_size;
  for (std::uint32_t l = 0; l < k; ++l) {
    const auto ups = sample_distinct(upper_count, s_up, rng);
    VertexSet up = VertexSet::of(Side::Upper, upper_count, ups);
    VertexSet lo = VertexSet::none(Side::Lower, lower_count);
    const VertexId first = l * g_size;
    for (VertexId v = first; v < first + g_size; ++v) lo.bits.set(v);

    std::uint64_t have = 0;
    std::vector<std::uint64_t> missing;
    const auto up_ids = up.ids();
    for (std::uint32_t i = 0; i < up_ids.size(); ++i) {
      for (std::uint32_t j = 0; j < g_size; ++j) {
        if (rng.bernoulli(keep)) {
          b.add_edge(up_ids[i], first + j);
          ++have;
        } else {
          missing.push_back(std::uint64_t{i} * g_size + j);
        }
      }
    }
    if (have < need) {
      std::vector<std::uint32_t> order(missing.size());
      for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
      for (std::uint32_t idx : sample_distinct_from(order, need - have, rng)) {
        const std::uint64_t cell = missing[idx];
        b.add_edge(up_ids[cell / g_size], first + static_cast<VertexId>(cell % g_size));
      }
    }
    bs.upper_sets.push_back(std::move(up));
    bs.lower_blocks.push_back(std::move(lo));
  }
  return {std::move(b).build(), std::move(bs)};
}

std::vector<std::uint32_t> block_of_lowers(const BlockStructure& bs, std::uint32_t lower_count) {
  std::vector<std::uint32_t> out(lower_count, kNoBlock);
  for (std::uint32_t l = 0; l < bs.lower_blocks.size(); ++l)
    bs.lower_blocks[l].bits.for_each_set([&](VertexId v) {
      if (v < lower_count) out[v] = l;
    });
  return out;
}

bool is_m_tuple(const BlockStructure& bs, const VertexSet& cn, unsigned r, unsigned w,
                std::span<const VertexId> x) {
  if (x.size() != r || w + 1 > r) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!cn.contains(x[i])) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (x[i] == x[j]) return false;
  }
  auto block_of = [&](VertexId v) -> std::uint32_t {
    for (std::uint32_t l = 0; l < bs.lower_blocks.size(); ++l)
      if (bs.lower_blocks[l].contains(v)) return l;
    return kNoBlock;
  };
  const std::uint32_t l0 = block_of(x[0]);
  if (l0 == kNoBlock) return false;
  for (unsigned i = 1; i < r - w; ++i)
    if (block_of(x[i]) != l0) return false;
  std::vector<std::uint32_t> seen{l0};
  for (unsigned a = 0; a < w; ++a) {
    const std::uint32_t la = block_of(x[r - w + a]);
    if (la == kNoBlock || std::find(seen.begin(), seen.end(), la) != seen.end()) return false;
    seen.push_back(la);
  }
  return true;
}

MTupleSample sample_m_tuple(const BipartiteGraph& g, const BlockStructure& bs, unsigned r, unsigned w,
                            std::span<const VertexId> y, Rng& rng, std::uint64_t budget) {
  check_lemma_shape(bs, r, w);
  if (bs.lower_blocks.size() != bs.k) throw InputError("sample_m_tuple: malformed block structure");
  const VertexSet cn = cn_of_uppers(g, y);
  const unsigned head = r - w;

  std::vector<std::size_t> avail(bs.k);
  for (std::uint32_t l = 0; l < bs.k; ++l) avail[l] = bs.lower_blocks[l].bits.and_count(cn.bits);
  const auto nonempty = static_cast<std::size_t>(std::count_if(avail.begin(), avail.end(), [](auto a) { return a > 0; }));
  bool possible = false;
  for (std::uint32_t l = 0; l < bs.k && !possible; ++l)
    if (avail[l] >= head && nonempty - 1 >= w) possible = true;
  MTupleSample out;
  if (!possible) {
    out.family_empty = true;
    return out;
  }

  std::vector<std::vector<VertexId>> members(bs.k);
  for (std::uint32_t l = 0; l < bs.k; ++l) members[l] = bs.lower_blocks[l].ids();
  std::vector<std::uint32_t> all_blocks(bs.k);
  for (std::uint32_t l = 0; l < bs.k; ++l) all_blocks[l] = l;

  while (out.draws < budget) {
    ++out.draws;
    const auto blocks = sample_distinct_from(all_blocks, w + 1, rng);
    std::vector<VertexId> x = sample_distinct_from(members[blocks[0]], head, rng);
    for (unsigned a = 1; a <= w; ++a) {
      const auto& mem = members[blocks[a]];
      x.push_back(mem[rng.uniform_below(mem.size())]);
    }
    if (std::all_of(x.begin(), x.end(), [&](VertexId v) { return cn.contains(v); })) {
      out.tuple = std::move(x);
      return out;
    }
  }
  return out;
}

Rational expected_small_m_tuples_exact(const BipartiteGraph& g, const BlockStructure& bs, unsigned r, unsigned w,
                                       unsigned u, const Rational& s) {
  check_lemma_shape(bs, r, w);
  std::vector<std::vector<VertexId>> members(bs.k);
  for (std::uint32_t l = 0; l < bs.k; ++l) members[l] = bs.lower_blocks[l].ids();
  const unsigned head = r - w;
  const Rational inv_u = rational_u64(1, g.upper_count());
  std::vector<std::uint64_t> hist(g.upper_count() + 1, 0);

  std::vector<VertexId> x;
  std::vector<std::uint32_t> used_blocks;
  // Recursive enumeration of every tuple satisfying the first two membership conditions.
  auto rec = [&](auto&& self, BitVec cn) -> void {
    const std::size_t pos = x.size();
    if (pos == r) {
      ++hist[cn.count()];
      return;
    }
    if (pos < head) {
      const std::uint32_t lo = pos == 0 ? 0 : used_blocks[0];
      const std::uint32_t hi = pos == 0 ? bs.k : used_blocks[0] + 1;
      for (std::uint32_t l = lo; l < hi; ++l) {
        if (pos == 0) used_blocks.push_back(l);
        for (VertexId v : members[l]) {
          if (std::find(x.begin(), x.end(), v) != x.end()) continue;
          BitVec next = cn;
          next &= g.column(v);
          x.push_back(v);
          self(self, std::move(next));
          x.pop_back();
        }
        if (pos == 0) used_blocks.pop_back();
      }
      return;
    }
    for (std::uint32_t l = 0; l < bs.k; ++l) {
      if (std::find(used_blocks.begin(), used_blocks.end(), l) != used_blocks.end()) continue;
      used_blocks.push_back(l);
      for (VertexId v : members[l]) {
        BitVec next = cn;
        next &= g.column(v);
        x.push_back(v);
        self(self, std::move(next));
        x.pop_back();
      }
      used_blocks.pop_back();
    }
  };
  rec(rec, BitVec::full(g.upper_count()));

  Rational sum = 0;
  for (std::size_t c = 1; c < hist.size(); ++c) {
    if (hist[c] == 0 || rational_u64(c) > s) continue;
    sum += rational_u64(hist[c]) * rational_pow(rational_u64(c) * inv_u, u);
  }
  return sum;
}

Rational small_m_tuple_bound(const BlockStructure& bs, std::uint32_t upper_count, unsigned r, unsigned w,
                             unsigned u, const Rational& s) {
  check_lemma_shape(bs, r, w);
  Rational g_pow_w = rational_pow(rational_u64(bs.g_size), w);
  return rational_pow(s / rational_u64(upper_count), u) * falling(bs.k, w + 1) * g_pow_w *
         falling(bs.g_size, r - w);
}

long double selection_probability_bound(const BlockStructure& bs, unsigned u) {
  const long double d = bs.delta;
  return d / 2.0L * std::pow(static_cast<long double>(bs.gamma) * (1.0L - d), static_cast<long double>(u));
}

ConditionEvent condition_event(const BipartiteGraph& g, const BlockStructure& bs, std::span<const VertexId> y) {
  const auto u = static_cast<unsigned>(y.size());
  const long double d = bs.delta;
  const long double good_size = bs.g_size * std::pow(1.0L - d, static_cast<long double>(u + 1));
  const long double need = bs.k * selection_probability_bound(bs, u);
  ConditionEvent ev;
  ev.cn = cn_of_uppers(g, y);
  for (std::uint32_t l = 0; l < bs.lower_blocks.size(); ++l)
    if (static_cast<long double>(bs.lower_blocks[l].bits.and_count(ev.cn.bits)) >= good_size)
      ev.good_blocks.push_back(l);
  ev.accepted = static_cast<long double>(ev.good_blocks.size()) >= need;
  return ev;
}

SelectionResult select_condition_vertices(const BipartiteGraph& g, const BlockStructure& bs, unsigned u,
                                          unsigned r, unsigned w, std::uint32_t trials, const Rng& rng,
                                          std::uint32_t min_blocks) {
  if (u < 1) throw InputError("select_condition_vertices: u must be >= 1");
  check_lemma_shape(bs, r, w);
  SelectionResult res;
  res.bound = static_cast<double>(selection_probability_bound(bs, u));
  std::vector<VertexId> y(u);
  for (std::uint32_t t = 0; t < trials; ++t) {
    Rng local = rng.stream(t);
    for (auto& v : y) v = static_cast<VertexId>(local.uniform_below(g.upper_count()));
    ++res.trials_used;
    ConditionEvent ev = condition_event(g, bs, y);
    if (!ev.accepted) continue;
    ++res.accepted;
    if (ev.good_blocks.size() < min_blocks) {
      ++res.too_few_blocks;
      continue;
    }
    res.selection = Selection{y, std::move(ev.good_blocks), std::move(ev.cn)};
    return res;
  }
  return res;
}

SelectionRate estimate_selection_rate(const BipartiteGraph& g, const BlockStructure& bs, unsigned u,
                                      std::uint64_t trials, const Rng& rng) {
  if (u < 1) throw InputError("estimate_selection_rate: u must be >= 1");
  const std::uint64_t hits = parallel_chunked_sum<std::uint64_t>(trials, 1024, rng, [&](Rng& local, std::uint64_t n) {
    std::uint64_t h = 0;
    std::vector<VertexId> y(u);
    for (std::uint64_t i = 0; i < n; ++i) {
      for (auto& v : y) v = static_cast<VertexId>(local.uniform_below(g.upper_count()));
      if (condition_event(g, bs, y).accepted) ++h;
    }
    return h;
  });
  return {trials, hits};
}

BlockFeasibility block_feasibility(const BlockStructure& bs, std::uint32_t upper_count, unsigned n, unsigned u,
                                   unsigned w) {
  BlockFeasibility f;
  const long double d = bs.delta;
  const long double gd = static_cast<long double>(bs.gamma) * (1.0L - d);
  const long double gdu = std::pow(gd, static_cast<long double>(u));
  const long double one_d = std::pow(1.0L - d, static_cast<long double>(u + 1));
  f.good_block_floor = bs.k * (d / 2.0L) * gdu;
  f.trimmed_size = bs.g_size * one_d;
  f.blocks_ok = f.good_block_floor >= std::ldexp(1.0L, static_cast<int>(w));
  f.size_ok = f.trimmed_size >= std::ldexp(1.0L, static_cast<int>(n - w));
  const long double ratio = std::ldexp(1.0L, static_cast<int>(n) - 1) / upper_count;
  f.union_bound = 64.0L / ((d / 4.0L) * gdu) * std::pow(ratio, static_cast<long double>(u)) *
                  std::pow(one_d, -static_cast<long double>(n)) *
                  std::pow((d / 2.0L) * gdu, -static_cast<long double>(w + 1));
  f.union_ok = f.union_bound < std::ldexp(1.0L, 1 - static_cast<int>(n));
  return f;
}

BlockEmbedReport block_embed_cube(const BipartiteGraph& g, const BlockStructure& bs, unsigned n, unsigned u,
                                  unsigned w, const BlockEmbedOptions& opt) {
  if (n < 2 || n > kMaxCubeDim || w > n - 2) throw InputError("block_embed_cube: need 2 <= n <= 24 and n - w >= 2");
  if (u < 1) throw InputError("block_embed_cube: u must be >= 1");
  if (bs.k < w + 1) throw InputError("block_embed_cube: need k >= w + 1");
  if (opt.trials == 0) throw InputError("block_embed_cube: trials must be positive");
  if (bs.lower_blocks.size() != bs.k) throw InputError("block_embed_cube: malformed block structure");

  BlockEmbedReport rep;
  rep.feasibility = block_feasibility(bs, g.upper_count(), n, u, w);
  const auto& f = rep.feasibility;
  rep.params.emplace_back("n", std::to_string(n));
  rep.params.emplace_back("u", std::to_string(u));
  rep.params.emplace_back("w", std::to_string(w));
  rep.params.emplace_back("good_block_floor", std::to_string(static_cast<double>(f.good_block_floor)));
  rep.params.emplace_back("trimmed_size", std::to_string(static_cast<double>(f.trimmed_size)));
  rep.params.emplace_back("union_bound", std::to_string(static_cast<double>(f.union_bound)));
  rep.params.emplace_back("feasible", f.feasible() ? "yes" : "no");
  if (!f.feasible()) {
    rep.notes.push_back(std::string("feasibility check failed:") + (f.blocks_ok ? "" : " good-block count") +
                        (f.size_ok ? "" : " trimmed size") + (f.union_ok ? "" : " union bound"));
    if (!opt.force) {
      rep.failure_stage = "precondition: infeasible parameters";
      return rep;
    }
    rep.notes.push_back("proceeding anyway (forced)");
  }

  const std::uint32_t facets = std::uint32_t{1} << w;
  const std::uint32_t class_size = std::uint32_t{1} << (n - w - 1);
  const auto trimmed = static_cast<std::uint32_t>(std::ceil(f.trimmed_size));
  const FacetPartition fp = facet_partition(n, w);
  const auto order = [n, w](CubeMask v) { return ordered_neighbors_by_facet(n, w, v); };
  const unsigned r_shape = std::max(n, w + 2);

  const Rng root(opt.seed);
  for (std::uint32_t t = 0; t < opt.trials; ++t) {
    Rng trial = root.stream(t);
    ++rep.counters["trials"];
    const SelectionResult sel =
        select_condition_vertices(g, bs, u, r_shape, w, opt.selection_budget, trial.stream(0), facets);
    rep.counters["selection draws"] += sel.trials_used;
    rep.counters["selection accepted"] += sel.accepted;
    if (!sel.selection) {
      const char* stage = sel.too_few_blocks > 0 ? "insufficient good blocks" : "selection";
      ++rep.counters[stage];
      rep.failure_stage = stage;
      continue;
    }
    const Selection& s = *sel.selection;

    if (trimmed < class_size) {
      ++rep.counters["trimmed block too small"];
      rep.failure_stage = "trimmed block too small";
      continue;
    }
    std::vector<std::vector<VertexId>> tilde(bs.k);
    for (std::uint32_t l : s.good_blocks) {
      BitVec part = bs.lower_blocks[l].bits;
      part &= s.cn.bits;
      auto ids = part.to_indices();
      ids.resize(std::min<std::size_t>(ids.size(), trimmed));
      tilde[l] = std::move(ids);
    }

    Rng pick = trial.stream(1);
    const auto z = sample_distinct_from(s.good_blocks, facets, pick);
    std::vector<VertexId> odd_images(std::size_t{1} << (n - 1));
    for (std::uint32_t b = 0; b < facets; ++b) {
      const auto images = sample_distinct_from(tilde[z[b]], class_size, pick);
      for (std::uint32_t i = 0; i < class_size; ++i) odd_images[parity_class_index(fp.classes[b][i])] = images[i];
    }

    GreedyResult gr = greedy_extend(g, n, Side::Lower, odd_images, order);
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
    if (!rep.embedding) {
      rep.embedding = std::move(gr.embedding);
      rep.facet_blocks = z;
    }
    if (!opt.run_all_trials) break;
  }
  if (rep.embedding) rep.failure_stage.clear();
  return rep;
}

void format_blocks(const BlockStructure& bs, std::ostream& out) {
  std::ostringstream head;
  head.precision(17);
  head << bs.k << ' ' << bs.g_size << ' ' << bs.delta << ' ' << bs.gamma;
  out << head.str() << '\n';
  for (std::uint32_t l = 0; l < bs.k; ++l) {
    out << "up:";
    bs.upper_sets[l].bits.for_each_set([&](VertexId v) { out << ' ' << v; });
    out << "\ndown:";
    bs.lower_blocks[l].bits.for_each_set([&](VertexId v) { out << ' ' << v; });
    out << '\n';
  }
}

BlockStructure parse_blocks(std::istream& in, std::uint32_t upper_count, std::uint32_t lower_count) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      line = line.substr(0, line.find('#'));
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next()) throw ParseError(line_no, "missing header");
  BlockStructure bs;
  {
    std::istringstream ss(line);
    std::string extra;
    if (!(ss >> bs.k >> bs.g_size >> bs.delta >> bs.gamma) || (ss >> extra))
      throw ParseError(line_no, "header must be 'k g_size delta gamma'");
    if (bs.k == 0 || bs.k > lower_count) throw ParseError(line_no, "block count out of range");
  }
  auto read_set = [&](const char* tag, Side side, std::uint32_t size) {
    if (!next()) throw ParseError(line_no, std::string("missing '") + tag + "' line");
    std::istringstream ss(line);
    std::string label;
    ss >> label;
    if (label != tag) throw ParseError(line_no, std::string("expected '") + tag + "'");
    VertexSet set = VertexSet::none(side, size);
    long long id = 0;
    while (ss >> id) {
      if (id < 0 || id >= size) throw ParseError(line_no, "vertex id out of range");
      set.bits.set(static_cast<std::size_t>(id));
    }
    if (!ss.eof()) throw ParseError(line_no, "malformed vertex list");
    return set;
  };
  for (std::uint32_t l = 0; l < bs.k; ++l) {
    bs.upper_sets.push_back(read_set("up:", Side::Upper, upper_count));
    bs.lower_blocks.push_back(read_set("down:", Side::Lower, lower_count));
  }
  if (next()) throw ParseError(line_no, "unexpected trailing content");
  return bs;
}

void write_blocks(const BlockStructure& bs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  format_blocks(bs, out);
  if (!out) throw IoError("write failed: " + path);
}

BlockStructure read_blocks(const std::string& path, std::uint32_t upper_count, std::uint32_t lower_count) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_blocks(in, upper_count, lower_count);
}

}  // namespace hcembed
