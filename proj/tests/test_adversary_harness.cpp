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

#include "hcembed/adversary.hpp"
#include "hcembed/drc.hpp"
#include "hcembed/errors.hpp"
#include "hcembed/harness.hpp"
#include "hcembed/hypercube.hpp"
#include "hcembed/report.hpp"
#include "support.hpp"

using namespace hcembed;

TEST_CASE("gamma shape") {
  const auto s = gamma_shape({1.0, 4});
  CHECK(s.block_size == 4);
  CHECK(s.k_blocks == 8);
  CHECK(s.upper_count == 32);
}

TEST_CASE("gamma host with two blocks is two bicliques") {
  Rng rng(3);
  const auto bg = generate_gamma({2, 5, 40}, rng);
  CHECK(bg.graph.lower_count() == 10);
  for (VertexId u = 0; u < 40; ++u) {
    CHECK(bg.graph.degree(Side::Upper, u) == 5);
    const bool first = bg.graph.has_edge(u, 0);
    for (VertexId v = 0; v < 10; ++v) CHECK(bg.graph.has_edge(u, v) == ((v < 5) == first));
  }
  CHECK(density(bg.graph).exact == Rational(1, 2));
}

TEST_CASE("gamma hosts are half dense and pass the structural checks") {
  const Rng root(41);
  for (std::uint64_t i = 0; i < 6; ++i) {
    Rng rng = root.stream(i);
    const std::uint32_t k = 2 * (1 + static_cast<std::uint32_t>(rng.uniform_below(8)));
    const GammaShape shape{k, 1 + static_cast<std::uint32_t>(rng.uniform_below(8)), 16 + static_cast<std::uint32_t>(rng.uniform_below(200))};
    const auto bg = generate_gamma(shape, rng);
    CHECK(density(bg.graph).exact == Rational(1, 2));
    CHECK(bg.blocks.delta == 0);
    const auto v = validate_block_structure(bg.graph, bg.blocks);
    CHECK(v.bullet_ok(1));
    CHECK(v.bullet_ok(3));
    CHECK(v.bullet_ok(4));
  }
  Rng rng(5);
  const auto big = generate_gamma({16, 8, 512}, rng);
  const auto v = validate_block_structure(big.graph, big.blocks);
  CHECK(v.bullet_ok(1));
  CHECK(v.bullet_ok(3));
  CHECK_THROWS_AS(generate_gamma({3, 2, 8}, rng), InputError);
}

TEST_CASE("covering estimate") {
  Rng rng(7);
  const auto bg = generate_gamma({8, 4, 64}, rng);
  const auto one = covering_property_estimate(bg.graph, bg.blocks, 1, 3, 2000, 8, Rng(8));
  CHECK(one.S.size() == 1);
  CHECK(one.empirical == 1.0);
  CHECK(one.identity_ok);
  CHECK(one.T_vertices == one.T_blocks.size() * 4);

  const auto two = covering_property_estimate(bg.graph, bg.blocks, 16, 6, 20000, 8, Rng(9));
  CHECK(two.identity_ok);
  CHECK(two.S.size() == 16);
  CHECK(std::set<VertexId>(two.S.begin(), two.S.end()).size() == 16);
  double sum = 0;
  for (std::size_t i = 0; i < two.deltas.size(); ++i) {
    CHECK(two.deltas[i] == doctest::Approx(double(two.block_hits[i]) / 16));
    sum += two.deltas[i];
  }
  // every upper touches half the blocks
  CHECK(sum == doctest::Approx(4.0));
  CHECK(two.analytic_bound == doctest::Approx(1 - two.excluded_sum));
  CHECK(two.empirical >= 0.5);
  CHECK(two.empirical + 4 * two.std_error >= two.analytic_bound);
}

TEST_CASE("covering on two blocks with arity one") {
  Rng rng(17);
  const auto bg = generate_gamma({2, 3, 30}, rng);
  const auto rep = covering_property_estimate(bg.graph, bg.blocks, 30, 1, 0, 4, Rng(18));
  REQUIRE(rep.deltas.size() == 2);
  CHECK(rep.block_hits[0] + rep.block_hits[1] == 30);
  // the heavier block goes in first and leaves the lighter one, at most 1/2
  REQUIRE(rep.T_blocks.size() == 1);
  CHECK(rep.block_hits[rep.T_blocks[0]] >= rep.block_hits[1 - rep.T_blocks[0]]);
  CHECK(rep.excluded_sum == doctest::Approx(std::min(rep.deltas[0], rep.deltas[1])));
  CHECK(rep.T_vertices == 3);
  CHECK_FALSE(rep.budget_hit);
}

TEST_CASE("defeat experiment") {
  Rng rng(11);
  const auto small = generate_gamma({2, 4, 8}, rng);
  const auto pre = drc_defeat_experiment(small.graph, small.blocks, 5, 3, Rng(12));
  CHECK_FALSE(pre.drc_precondition.empty());
  CHECK_FALSE(pre.block_precondition.empty());
  CHECK(pre.drc_successes == 0);
  CHECK(pre.block_successes == 0);

  const auto easy = generate_gamma({8, 8, 128}, rng);
  DefeatOptions o;
  o.u = 1;
  o.w = 1;
  o.drc_resample_budget = 32;
  o.block_selection_budget = 32;
  const auto both = drc_defeat_experiment(easy.graph, easy.blocks, 3, 2, Rng(13), o);
  CHECK(both.trials == 2);
  CHECK(both.drc_successes == 2);
  CHECK(both.block_successes == 2);
}

TEST_CASE("brute force oracle") {
  const auto k22 = BipartiteGraph::complete(2, 2);
  const auto q2 = brute_force_embed_cube(k22, 2);
  REQUIRE(q2.status == BruteStatus::Found);
  CHECK(verify_embedding(k22, *q2.embedding).ok());

  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto tree = testing::random_tree(2 + i % 7, 2 + i % 5, rng);
    CHECK(brute_force_embed_cube(tree, 2).status == BruteStatus::Impossible);
  }

  Rng hr(16);
  const auto host = gen_random_bipartite(16, 16, 0.8, hr);
  const auto q3 = brute_force_embed_cube(host, 3);
  CHECK(q3.status == BruteStatus::Found);
  REQUIRE(q3.embedding);
  CHECK(verify_embedding(host, *q3.embedding).ok());
  DrcOptions o;
  o.trials = 8;
  o.seed = 3;
  const auto drc = drc_embed_cube(host, 3, o);
  if (drc.embedding) CHECK(verify_embedding(host, *drc.embedding).ok());

  BruteOptions capped;
  capped.node_limit = 1;
  const auto k = BipartiteGraph::complete(9, 9);
  const auto stopped = brute_force_embed(testing::random_tree(9, 9, rng), cube_as_bipartite(3), capped);
  CHECK(stopped.status == BruteStatus::Timeout);
  CHECK(std::string(brute_status_name(BruteStatus::Timeout)) != brute_status_name(BruteStatus::Impossible));
  CHECK(brute_force_embed(k, cube_as_bipartite(3)).status == BruteStatus::Found);
}

TEST_CASE("brute force agrees with exhaustive search on tiny hosts") {
  // a 3x3 host contains C4 iff two uppers share two lowers
  for (std::uint64_t code = 0; code < 512; ++code) {
    const auto g = testing::graph_from_code(3, 3, code);
    bool c4 = false;
    for (VertexId a = 0; a < 3; ++a)
      for (VertexId b = a + 1; b < 3; ++b) {
        int shared = 0;
        for (VertexId v = 0; v < 3; ++v) shared += g.has_edge(a, v) && g.has_edge(b, v);
        c4 |= shared >= 2;
      }
    const auto r = brute_force_embed_cube(g, 2);
    CHECK((r.status == BruteStatus::Found) == c4);
    CHECK(r.status != BruteStatus::Timeout);
  }
}

TEST_CASE("binomial tail") {
  CHECK(binomial_two_sided_tail(4, 0.5, 2) == doctest::Approx(2.0 / 16));
  CHECK(binomial_two_sided_tail(4, 0.5, 1) == doctest::Approx(10.0 / 16));
  CHECK(binomial_two_sided_tail(100, 0.5, 50) == doctest::Approx(2 * std::pow(0.5, 100)));
}

TEST_CASE("chernoff tables") {
  const double t50[] = {50};
  const auto big = chernoff_empirical(0.5, 100, t50, 20000, Rng(1));
  REQUIRE(big.rows.size() == 1);
  CHECK(big.rows[0].bound == doctest::Approx(2 * std::exp(-12.5)));
  CHECK(big.rows[0].bound == doctest::Approx(7.45e-6).epsilon(1e-2));
  CHECK(big.rows[0].exact_tail < 1e-9);
  CHECK_FALSE(big.rows[0].flagged);
  CHECK_FALSE(big.any_flag());

  const auto grid = default_chernoff_grid(0.5, 4);
  REQUIRE(grid.size() == 5);
  CHECK(grid.back() == 2.0);
  const auto ex = chernoff_exhaustive(0.5, 4, grid);
  CHECK(ex.samples == 0);
  for (const auto& row : ex.rows) CHECK(row.empirical == doctest::Approx(row.exact_tail).epsilon(1e-12));

  const double zero[] = {0};
  CHECK_THROWS_AS(chernoff_empirical(0.5, 10, zero, 100, Rng(1)), InputError);
  const double beyond[] = {6};
  CHECK_THROWS_AS(chernoff_exhaustive(0.5, 10, beyond), InputError);
}

TEST_CASE("random hosts") {
  Rng rng(9);
  CHECK(gen_random_bipartite(10, 12, 0, rng).edge_count() == 0);
  CHECK(gen_random_bipartite(10, 12, 1, rng).edge_count() == 120);
  const auto g = gen_random_bipartite(256, 256, 0.5, rng);
  const double N = 256.0 * 256, sigma = std::sqrt(N * 0.25);
  CHECK(std::fabs(double(g.edge_count()) - N / 2) <= 4 * sigma);
  Rng a(4), b(4);
  CHECK(gen_random_bipartite(30, 30, 0.3, a) == gen_random_bipartite(30, 30, 0.3, b));
}

TEST_CASE("reports") {
  auto make = [] {
    ExperimentReport r("gen", 5);
    r.set_outcome("success");
    r.section("graph");
    r.field("density", 0.1);
    r.field("edges", std::uint64_t{12});
    r.field("ok", true);
    return r.str();
  };
  CHECK(make() == make());
  CHECK(make().find("density: 0.1\n") != std::string::npos);
  CHECK(format_number(0.1) == "0.1");
  CHECK(std::stod(format_number(1.0 / 3)) == 1.0 / 3);
}
