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

#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "hcembed/blocks.hpp"
#include "hcembed/errors.hpp"
#include "hcembed/exact.hpp"
#include "hcembed/hypercube.hpp"
#include "support.hpp"

using namespace hcembed;

namespace {

BlockStructure make_blocks(std::uint32_t U, std::uint32_t D, double delta, double gamma,
                           const std::vector<std::vector<VertexId>>& ups,
                           const std::vector<std::vector<VertexId>>& downs) {
  BlockStructure bs;
  bs.delta = delta;
  bs.gamma = gamma;
  bs.k = static_cast<std::uint32_t>(ups.size());
  bs.g_size = static_cast<std::uint32_t>(downs.front().size());
  for (std::size_t l = 0; l < ups.size(); ++l) {
    bs.upper_sets.push_back(VertexSet::of(Side::Upper, U, ups[l]));
    bs.lower_blocks.push_back(VertexSet::of(Side::Lower, D, downs[l]));
  }
  return bs;
}

// two disjoint K_{2,2}: uppers {0,1} x lowers {0,1}, uppers {2,3} x lowers {2,3}
BipartiteGraph twin_bicliques(bool cross_edge) {
  std::vector<std::pair<VertexId, VertexId>> e = {{0, 0}, {0, 1}, {1, 0}, {1, 1},
                                                  {2, 2}, {2, 3}, {3, 2}, {3, 3}};
  if (cross_edge) e.emplace_back(0, 2);
  return BipartiteGraph::from_edges(4, 4, e);
}

BlockStructure twin_structure(double gamma) {
  return make_blocks(4, 4, 0.0, gamma, {{0, 1}, {2, 3}}, {{0, 1}, {2, 3}});
}

// Independent restatement of the M-tuple definition.
bool m_tuple_oracle(const BipartiteGraph& g, const BlockStructure& bs, unsigned r, unsigned w,
                    const std::vector<VertexId>& y, const std::vector<VertexId>& x) {
  if (x.size() != r) return false;
  if (std::set<VertexId>(x.begin(), x.end()).size() != r) return false;
  auto block = [&](VertexId v) {
    for (std::uint32_t l = 0; l < bs.k; ++l)
      if (bs.lower_blocks[l].contains(v)) return l;
    return bs.k;
  };
  const auto head = block(x[0]);
  for (unsigned i = 1; i < r - w; ++i)
    if (block(x[i]) != head) return false;
  std::set<std::uint32_t> tails;
  for (unsigned i = r - w; i < r; ++i) {
    const auto b = block(x[i]);
    if (b == head || !tails.insert(b).second) return false;
  }
  for (VertexId v : x)
    for (VertexId u : y)
      if (!g.has_edge(u, v)) return false;
  return true;
}

}  // namespace

TEST_CASE("block validator") {
  CHECK(validate_block_structure(twin_bicliques(false), twin_structure(0.5)).ok());
  const auto cross = validate_block_structure(twin_bicliques(true), twin_structure(0.5));
  CHECK_FALSE(cross.bullet_ok(3));
  CHECK(cross.bullet_ok(1));
  REQUIRE(cross.violations.size() == 1);
  CHECK(cross.violations[0].block == 1);
  CHECK_FALSE(validate_block_structure(twin_bicliques(false), twin_structure(0.9)).bullet_ok(2));

  auto overlap = twin_structure(0.5);
  overlap.lower_blocks[1] = overlap.lower_blocks[0];
  CHECK_FALSE(validate_block_structure(twin_bicliques(false), overlap).bullet_ok(1));

  // drop one edge: block 0 density 3/4 < 1 - 0.2
  const std::pair<VertexId, VertexId> seven[] = {{0, 0}, {0, 1}, {1, 0}, {2, 2}, {2, 3}, {3, 2}, {3, 3}};
  auto thin = twin_structure(0.5);
  thin.delta = 0.2;
  CHECK_FALSE(validate_block_structure(BipartiteGraph::from_edges(4, 4, seven), thin).bullet_ok(4));
  thin.delta = 0.25;
  CHECK(validate_block_structure(BipartiteGraph::from_edges(4, 4, seven), thin).ok());
}

TEST_CASE("block generator") {
  Rng rng(1);
  const auto full = generate_block_graph(4, 8, 64, 0.25, 0.0, rng);
  CHECK(validate_block_structure(full.graph, full.blocks).ok());
  for (std::uint32_t l = 0; l < 4; ++l) {
    std::uint64_t inside = 0;
    full.blocks.upper_sets[l].bits.for_each_set(
        [&](VertexId u) { inside += full.graph.row(u).and_count(full.blocks.lower_blocks[l].bits); });
    CHECK(inside == full.blocks.upper_sets[l].count() * 8);
    CHECK(full.blocks.upper_sets[l].count() == 16);
  }

  const auto one = generate_block_graph(1, 10, 20, 0.5, 0.1, rng);
  CHECK(validate_block_structure(one.graph, one.blocks).ok());
  CHECK(density(one.graph).exact >= Rational(1, 2) * Rational(9, 10));

  const auto big = generate_block_graph(16, 32, 4096, 0.25, 0.05, rng);
  CHECK(validate_block_structure(big.graph, big.blocks).ok());

  CHECK_THROWS_AS(generate_block_graph(0, 4, 8, 0.5, 0.1, rng), InputError);
  CHECK_THROWS_AS(generate_block_graph(2, 4, 8, 0.0, 0.1, rng), InputError);
  CHECK_THROWS_AS(generate_block_graph(2, 4, 8, 0.5, 1.0, rng), InputError);
}

TEST_CASE("generated graphs always validate") {
  const Rng root(2);
  for (std::uint64_t i = 0; i < 40; ++i) {
    Rng rng = root.stream(i);
    const auto k = 1 + static_cast<std::uint32_t>(rng.uniform_below(8));
    const auto gs = 1 + static_cast<std::uint32_t>(rng.uniform_below(12));
    const auto U = 1 + static_cast<std::uint32_t>(rng.uniform_below(60));
    const double gamma = 0.05 + 0.95 * rng.uniform01();
    const double delta = 0.5 * rng.uniform01();
    const auto bg = generate_block_graph(k, gs, U, gamma, delta, rng);
    CHECK(validate_block_structure(bg.graph, bg.blocks).ok());
  }
}

TEST_CASE("m-tuple sampling") {
  Rng rng(3);
  const auto bg = generate_block_graph(4, 6, 24, 0.5, 0.0, rng);
  const auto lower_block = block_of_lowers(bg.blocks, bg.graph.lower_count());
  for (int i = 0; i < 50; ++i) {
    const auto s = sample_m_tuple(bg.graph, bg.blocks, 3, 1, {}, rng);
    REQUIRE(s.tuple);
    CHECK(lower_block[(*s.tuple)[0]] == lower_block[(*s.tuple)[1]]);
    CHECK(m_tuple_oracle(bg.graph, bg.blocks, 3, 1, {}, *s.tuple));
  }
  CHECK_THROWS_AS(sample_m_tuple(bg.graph, bg.blocks, 3, 2, {}, rng), InputError);

  const auto host = generate_block_graph(8, 16, 256, 0.3, 0.05, rng);
  int found = 0;
  for (int i = 0; i < 40; ++i) {
    const std::vector<VertexId> y = {static_cast<VertexId>(rng.uniform_below(256)),
                                     static_cast<VertexId>(rng.uniform_below(256))};
    const auto s = sample_m_tuple(host.graph, host.blocks, 4, 1, y, rng, 200000);
    if (!s.tuple) continue;
    ++found;
    CHECK(m_tuple_oracle(host.graph, host.blocks, 4, 1, y, *s.tuple));
    CHECK(is_m_tuple(host.blocks, common_neighborhood(host.graph, Side::Upper, y), 4, 1, *s.tuple));
  }
  CHECK(found > 0);
}

TEST_CASE("m-tuple predicate agrees with the oracle") {
  Rng rng(4);
  const auto bg = generate_block_graph(3, 3, 6, 0.5, 0.2, rng);
  const std::vector<VertexId> y = {0};
  const auto cn = common_neighborhood(bg.graph, Side::Upper, y);
  for (VertexId a = 0; a < 9; ++a)
    for (VertexId b = 0; b < 9; ++b)
      for (VertexId c = 0; c < 9; ++c) {
        const std::vector<VertexId> x = {a, b, c};
        CHECK(is_m_tuple(bg.blocks, cn, 3, 1, x) == m_tuple_oracle(bg.graph, bg.blocks, 3, 1, y, x));
      }
}

TEST_CASE("selection of conditioning vertices") {
  Rng rng(5);
  const auto bg = generate_block_graph(4, 16, 64, 0.5, 0.01, rng);
  const auto sel = select_condition_vertices(bg.graph, bg.blocks, 1, 3, 1, 20, Rng(6));
  REQUIRE(sel.selection);
  CHECK(sel.trials_used <= 5);
  CHECK_FALSE(sel.selection->good_blocks.empty());
  // every reported block really is good
  const double floor = 16 * std::pow(1 - 0.01, 2);
  for (auto l : sel.selection->good_blocks)
    CHECK(double(sel.selection->cn.bits.and_count(bg.blocks.lower_blocks[l].bits)) >= floor);

  CHECK_THROWS_AS(select_condition_vertices(bg.graph, bg.blocks, 0, 3, 1, 20, Rng(6)), InputError);

  const auto k = BipartiteGraph::complete(6, 6);
  const auto one = make_blocks(6, 6, 0.0, 1.0, {{0, 1, 2, 3, 4, 5}}, {{0, 1, 2, 3, 4, 5}});
  const auto s1 = select_condition_vertices(k, one, 2, 3, 0, 1, Rng(7));
  REQUIRE(s1.selection);
  CHECK(s1.selection->good_blocks == std::vector<std::uint32_t>{0});
}

TEST_CASE("selection probability bound closed form") {
  BlockStructure bs;
  bs.delta = 0.1;
  bs.gamma = 0.4;
  CHECK(double(selection_probability_bound(bs, 2)) == doctest::Approx(0.05 * std::pow(0.4 * 0.9, 2)));
}

TEST_CASE("small m-tuple bound on micro instances") {
  Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    const auto bg = generate_block_graph(3, 3, 5, 0.6, 0.3, rng);
    for (unsigned u = 1; u <= 2; ++u)
      for (std::uint32_t s = 0; s <= 5; ++s)
        CHECK(expected_small_m_tuples_exact(bg.graph, bg.blocks, 3, 1, u, s) <=
              small_m_tuple_bound(bg.blocks, 5, 3, 1, u, s));
  }
  // bound = (s/U)^u * k!/(k-w-1)! * g^w * g!/(g-r+w)!
  BlockStructure bs;
  bs.k = 4;
  bs.g_size = 4;
  CHECK(small_m_tuple_bound(bs, 8, 3, 1, 2, 4) == Rational(1, 4) * 12 * 4 * 12);
}

TEST_CASE("block embedder small cases") {
  const auto k = BipartiteGraph::complete(4, 4);
  const auto one = make_blocks(4, 4, 0.0, 1.0, {{0, 1, 2, 3}}, {{0, 1, 2, 3}});
  BlockEmbedOptions o;
  o.trials = 4;
  o.seed = 1;
  const auto refused = block_embed_cube(k, one, 2, 1, 0, o);
  CHECK(refused.failure_stage == "precondition: infeasible parameters");
  o.force = true;
  const auto r = block_embed_cube(k, one, 2, 1, 0, o);
  REQUIRE(r.success());
  CHECK(verify_embedding(k, *r.embedding).ok());

  // two blocks, each with its own half of the uppers: two independent uppers never see two good blocks
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId u = 0; u < 8; ++u)
    for (VertexId v = 0; v < 4; ++v) e.emplace_back(u, u < 4 ? v : v + 4);
  const auto split = BipartiteGraph::from_edges(8, 8, e);
  const auto halves = make_blocks(8, 8, 0.0, 0.5, {{0, 1, 2, 3}, {4, 5, 6, 7}}, {{0, 1, 2, 3}, {4, 5, 6, 7}});
  REQUIRE(validate_block_structure(split, halves).ok());
  o.selection_budget = 8;
  const auto starved = block_embed_cube(split, halves, 3, 2, 1, o);
  CHECK_FALSE(starved.success());
  CHECK(starved.failure_stage == "insufficient good blocks");
  CHECK(starved.count("insufficient good blocks") == 4);
}

TEST_CASE("facet classes land in distinct single blocks") {
  Rng rng(9);
  const auto bg = generate_block_graph(16, 32, 2048, 0.3, 0.02, rng);
  BlockEmbedOptions o;
  o.trials = 8;
  o.seed = 10;
  o.force = true;
  const unsigned n = 4, w = 1;
  const auto r = block_embed_cube(bg.graph, bg.blocks, n, 2, w, o);
  REQUIRE(r.success());
  CHECK(verify_embedding(bg.graph, *r.embedding).ok());
  const auto lower_block = block_of_lowers(bg.blocks, bg.graph.lower_count());
  const auto fp = facet_partition(n, w);
  std::set<std::uint32_t> used;
  for (const auto& cls : fp.classes) {
    std::set<std::uint32_t> here;
    for (CubeMask v : cls) {
      REQUIRE(r.embedding->image[v].side == Side::Lower);
      here.insert(lower_block[r.embedding->image[v].id]);
    }
    CHECK(here.size() == 1);
    used.insert(*here.begin());
  }
  CHECK(used.size() == fp.classes.size());
}

TEST_CASE("block sidecar round trip") {
  Rng rng(11);
  const auto bg = generate_block_graph(3, 4, 10, 0.4, 0.1, rng);
  std::stringstream ss;
  format_blocks(bg.blocks, ss);
  const auto back = parse_blocks(ss, 10, 12);
  CHECK(back.k == 3);
  CHECK(back.g_size == 4);
  CHECK(back.delta == bg.blocks.delta);
  CHECK(back.gamma == bg.blocks.gamma);
  for (std::uint32_t l = 0; l < 3; ++l) {
    CHECK(back.upper_sets[l] == bg.blocks.upper_sets[l]);
    CHECK(back.lower_blocks[l] == bg.blocks.lower_blocks[l]);
  }
  std::istringstream bad("2 2 0 0.5\nup: 0\ndown: 0 1\n");
  CHECK_THROWS_AS(parse_blocks(bad, 4, 4), ParseError);
  std::istringstream range("1 2 0 0.5\nup: 9\ndown: 0 1\n");
  CHECK_THROWS_AS(parse_blocks(range, 4, 2), ParseError);
}
