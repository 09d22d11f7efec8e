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

#include "hcembed/condensation.hpp"
#include "hcembed/drc.hpp"
#include "hcembed/embedding.hpp"
#include "hcembed/errors.hpp"
#include "hcembed/exact.hpp"
#include "hcembed/hypercube.hpp"
#include "support.hpp"

using namespace hcembed;

namespace {

BipartiteGraph path_graph() {
  const std::pair<VertexId, VertexId> e[] = {{0, 0}, {1, 0}, {1, 1}};
  return BipartiteGraph::from_edges(2, 2, e);
}

// Visits every ordered r-tuple over [0, n).
template <typename F>
void for_each_tuple(std::uint32_t n, unsigned r, F&& f) {
  std::vector<VertexId> t(r, 0);
  while (true) {
    f(t);
    unsigned i = 0;
    while (i < r && ++t[i] == n) t[i++] = 0;
    if (i == r) break;
  }
}

Rational bad_tuples_oracle(const BipartiteGraph& g, unsigned r, unsigned s, const Rational& beta) {
  const Rational D = rational_u64(g.lower_count());
  const Rational threshold = rational_pow(beta, r) * D;
  Rational sum = 0;
  for_each_tuple(g.upper_count(), r, [&](const std::vector<VertexId>& t) {
    const auto cn = common_neighborhood(g, Side::Upper, t).count();
    if (rational_u64(cn) <= threshold) sum += rational_pow(rational_u64(cn) / D, s);
  });
  return sum;
}

CubeEmbedding q2_into_k22() {
  // odd masks 1, 2 on lowers; even masks 0, 3 on uppers
  return CubeEmbedding{2, {{Side::Upper, 0}, {Side::Lower, 0}, {Side::Lower, 1}, {Side::Upper, 1}}};
}

StandardPairCertificate complete_pair(std::uint32_t size, unsigned r) {
  StandardPairOptions o;
  o.alpha0 = 0.5;
  o.mu = 0.1;
  o.r = r;
  auto res = find_standard_pair(BipartiteGraph::complete(size, size), o, Rng(1));
  REQUIRE(res.certificate);
  return *res.certificate;
}

}  // namespace

TEST_CASE("expected common neighbourhood size") {
  CHECK(expected_cn_size_exact(BipartiteGraph::complete(2, 2), 3) == 2);
  CHECK(expected_cn_size_exact(path_graph(), 1) == Rational(3, 2));
  CHECK(expected_cn_size_exact(path_graph(), 2) == Rational(5, 4));
  CHECK(expected_cn_size_exact(path_graph(), 2) >= rational_pow(Rational(3, 4), 2) * 2);
  for (std::uint64_t code = 0; code < 16; ++code) {
    const auto g = testing::graph_from_code(2, 2, code);
    for (unsigned s = 1; s <= 10; ++s)
      CHECK(expected_cn_size_exact(g, s) >= rational_pow(density(g).exact, s) * 2);
  }
}

TEST_CASE("monte carlo common neighbourhood size matches the closed form") {
  const auto g = testing::random_graph(40, 30, 0.6, 3);
  Rng rng(4);
  for (unsigned s : {1U, 2U, 3U}) {
    const double exact = expected_cn_size_exact(g, s).get_d();
    const int N = 20000;
    double sum = 0, sq = 0;
    for (int i = 0; i < N; ++i) {
      const double x = static_cast<double>(sample_cn_size(g, s, rng));
      sum += x;
      sq += x * x;
    }
    const double mean = sum / N, var = sq / N - mean * mean;
    CHECK(std::fabs(mean - exact) <= 5 * std::sqrt(var / N));
  }
}

TEST_CASE("expected bad tuples") {
  const auto k22 = BipartiteGraph::complete(2, 2);
  CHECK(expected_bad_tuples_exact(k22, DrcParams{1, 2, Rational(1, 2), 1}) == 0);
  CHECK_THROWS_AS(expected_bad_tuples_exact(BipartiteGraph(2, 2), DrcParams{1, 1, 0, 0}), InputError);
  const auto p = path_graph();
  const Rational v = expected_bad_tuples_exact(p, DrcParams{1, 2, Rational(1, 2), Rational(3, 4)});
  CHECK(v == bad_tuples_oracle(p, 2, 1, Rational(1, 2)));
  CHECK(v <= rational_pow(Rational(1, 2), 2) * 4);
  const auto g = testing::random_graph(6, 7, 0.5, 9);
  const Rational a = density(g).exact;
  for (unsigned r = 1; r <= 3; ++r)
    for (unsigned s = 1; s <= 3; ++s)
      CHECK(expected_bad_tuples_exact(g, DrcParams{s, r, a / 2, a}) == bad_tuples_oracle(g, r, s, a / 2));
  CHECK_THROWS_AS(expected_bad_tuples_exact(g, DrcParams{1, 3, a / 2, a}, 100), CapExceeded);
}

TEST_CASE("greedy extension") {
  const auto k44 = BipartiteGraph::complete(4, 4);
  const VertexId odd[] = {3, 1};
  const auto ok = greedy_extend(k44, 2, Side::Lower, odd);
  REQUIRE(ok.embedding);
  CHECK(verify_embedding(k44, *ok.embedding).ok());

  const std::pair<VertexId, VertexId> e[] = {{0, 0}, {1, 1}};
  const auto two = BipartiteGraph::from_edges(2, 2, e);
  const VertexId single[] = {0};
  const auto q1 = greedy_extend(two, 1, Side::Lower, single);
  REQUIRE(q1.embedding);
  CHECK(q1.embedding->image[0] == HostVertex{Side::Upper, 0});

  const VertexId xy[] = {0, 1};
  const auto stuck = greedy_extend(path_graph(), 2, Side::Lower, xy);
  CHECK_FALSE(stuck.embedding);
  CHECK(stuck.stuck == 3);
}

TEST_CASE("verification") {
  const auto k22 = BipartiteGraph::complete(2, 2);
  auto e = q2_into_k22();
  CHECK(verify_embedding(k22, e).ok());
  CHECK(verify_embedding(k22, e).adjacency_checks == 4);
  std::swap(e.image[1], e.image[2]);
  CHECK(verify_embedding(k22, e).ok());
  e.image[2] = e.image[1];
  CHECK_FALSE(verify_embedding(k22, e).ok());
  auto wrong_side = q2_into_k22();
  wrong_side.image[0] = {Side::Lower, 1};
  CHECK_FALSE(verify_embedding(k22, wrong_side).ok());
  const std::pair<VertexId, VertexId> three[] = {{0, 0}, {0, 1}, {1, 0}};
  CHECK(verify_embedding(BipartiteGraph::from_edges(2, 2, three), q2_into_k22()).violations.size() == 1);
}

TEST_CASE("embedding file round trip") {
  const auto e = q2_into_k22();
  std::stringstream ss;
  format_embedding(e, 2, 2, ss);
  CHECK(ss.str().rfind("2 2 2\n", 0) == 0);
  const EmbeddingFile f = parse_embedding(ss);
  CHECK(f.upper_count == 2);
  CHECK(f.embedding.image == e.image);
  std::istringstream bad("2 2 2\n0 X 1\n");
  CHECK_THROWS_AS(parse_embedding(bad), ParseError);
}

TEST_CASE("drc embedder examples") {
  DrcOptions opt;
  opt.trials = 4;
  opt.seed = 1;
  const auto k16 = BipartiteGraph::complete(16, 16);
  const auto r = drc_embed_cube(k16, 2, opt);
  REQUIRE(r.success());
  CHECK(verify_embedding(k16, *r.embedding).ok());

  const auto none = drc_embed_cube(BipartiteGraph(2, 2), 1, opt);
  CHECK_FALSE(none.success());
  CHECK_FALSE(none.failure_stage.empty());

  CHECK_THROWS_AS(drc_embed_cube(k16, 6, opt), InputError);
  opt.trials = 0;
  CHECK_THROWS_AS(drc_embed_cube(k16, 2, opt), InputError);
}

TEST_CASE("drc embedder is reproducible and sound on random hosts") {
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = testing::random_graph(64, 64, 0.7, 50 + seed);
    DrcOptions opt;
    opt.seed = seed;
    const auto a = drc_embed_cube(g, 3, opt);
    const auto b = drc_embed_cube(g, 3, opt);
    CHECK(a.success() == b.success());
    CHECK(a.counters == b.counters);
    if (a.success()) {
      ++successes;
      CHECK(a.embedding->image == b.embedding->image);
      CHECK(verify_embedding(g, *a.embedding).ok());
    }
  }
  CHECK(successes > 0);
}

TEST_CASE("standard pairs") {
  const auto c = complete_pair(8, 2);
  CHECK(c.cn_size == 8);
  CHECK(c.beta_grid.size() == 2);
  CHECK(c.beta_grid.front() == doctest::Approx(1.0));
  // "at most beta^r D" is inclusive, so at beta = alpha = 1 every tuple counts
  CHECK(c.bad_tuple_counts[0] == 64.0);
  CHECK(c.bad_tuple_counts[0] <= c.bad_tuple_bounds[0]);
  CHECK(c.bad_tuple_counts[1] == 0.0);

  StandardPairOptions o;
  CHECK_THROWS_AS(find_standard_pair(BipartiteGraph(8, 8), o, Rng(1)), InputError);

  const auto g = testing::random_graph(64, 64, 0.6, 21);
  o.alpha0 = 0.3;
  o.mu = 0.05;
  o.r = 2;
  const auto a = find_standard_pair(g, o, Rng(5));
  const auto b = find_standard_pair(g, o, Rng(5));
  REQUIRE(a.certificate);
  REQUIRE(b.certificate);
  CHECK(a.certificate->v1 == b.certificate->v1);
  CHECK(a.certificate->v2 == b.certificate->v2);
  const auto& cert = *a.certificate;
  const VertexId pair[] = {cert.v1, cert.v2};
  CHECK(common_neighborhood(g, Side::Lower, pair).count() == cert.cn_size);
  CHECK(double(cert.cn_size) >= (1 - o.mu) * cert.alpha * cert.alpha * 64);
  // grid runs from alpha down to alpha0 + (alpha - alpha0) / r
  CHECK(cert.beta_grid.front() == doctest::Approx(cert.alpha));
  CHECK(cert.beta_grid.back() == doctest::Approx(cert.alpha0 + (cert.alpha - cert.alpha0) / o.r));
  for (std::size_t i = 1; i < cert.beta_grid.size(); ++i) CHECK(cert.beta_grid[i] < cert.beta_grid[i - 1]);
  for (std::size_t i = 0; i < cert.beta_grid.size(); ++i)
    CHECK(cert.bad_tuple_counts[i] <= cert.bad_tuple_bounds[i]);
}

TEST_CASE("bad tuple counting") {
  const auto k44 = BipartiteGraph::complete(4, 4);
  CHECK(bad_tuple_count_exact(k44, VertexSet::all(Side::Upper, 4), 2, 1).count == 0);
  CHECK(bad_tuple_count_exact(path_graph(), VertexSet::all(Side::Upper, 2), 2, 0).count == 0);

  const auto g = testing::random_graph(64, 64, 0.6, 22);
  const auto base = VertexSet::all(Side::Upper, 64);
  const double threshold = 0.36 * 64;
  const auto exact = bad_tuple_count_exact(g, base, 2, threshold);
  std::uint64_t oracle = 0;
  for_each_tuple(64, 2, [&](const std::vector<VertexId>& t) {
    oracle += double(common_neighborhood(g, Side::Upper, t).count()) <= threshold;
  });
  CHECK(exact.count == double(oracle));
  const auto sampled = bad_tuple_count_sampled(g, base, 2, threshold, 10000, Rng(6));
  CHECK_FALSE(sampled.exact);
  CHECK(std::fabs(sampled.count - exact.count) <= 3 * sampled.radius);
  CHECK_THROWS_AS(bad_tuple_count_exact(g, base, 4, threshold), CapExceeded);
}

TEST_CASE("condensation estimates") {
  const auto k8 = BipartiteGraph::complete(8, 8);
  CHECK(estimate_condensation(k8, 0, 1, 2, 8, 500, Rng(1)).p_hat == 1.0);
  CHECK(estimate_condensation(k8, 0, 1, 2, 9, 500, Rng(1)).p_hat == 0.0);
  CHECK_THROWS_AS(estimate_condensation(BipartiteGraph(4, 4), 0, 1, 2, 1, 10, Rng(1)), InputError);

  // exact probability by enumerating all pairs of r-tuples from CN(v1, v2)
  const auto g = testing::random_graph(10, 12, 0.6, 23);
  const VertexId v[] = {0, 1};
  const auto base = common_neighborhood(g, Side::Lower, v).ids();
  REQUIRE(base.size() >= 2);
  const unsigned r = 2;
  const double M = 3;
  std::uint64_t hits = 0, total = 0;
  for_each_tuple(base.size(), 2 * r, [&](const std::vector<VertexId>& t) {
    const VertexId y[] = {base[t[0]], base[t[1]]}, z[] = {base[t[2]], base[t[3]]};
    BitVec a = common_neighborhood(g, Side::Upper, y).bits;
    a &= common_neighborhood(g, Side::Upper, z).bits;
    hits += double(a.count()) >= M;
    ++total;
  });
  const double p = double(hits) / double(total);
  const auto e = estimate_condensation(g, 0, 1, r, M, 20000, Rng(7));
  CHECK(std::fabs(e.p_hat - p) <= 4 * e.wilson_radius);
  const auto again = estimate_condensation(g, 0, 1, r, M, 20000, Rng(7));
  CHECK(again.hits == e.hits);
  CHECK(e.wilson_low <= e.p_hat);
  CHECK(e.p_hat <= e.wilson_high);
}

TEST_CASE("condensation decisions") {
  CondensationEstimate e;
  e.samples = 1000;
  e.hits = 100;
  e.p_hat = 0.1;
  e.wilson_radius = 0.02;
  e.wilson_low = 0.08;
  e.wilson_high = 0.12;
  CHECK(decisively_non_condensed(e, 0.2));
  CHECK_FALSE(decisively_non_condensed(e, 0.11));
  CHECK(decisively_condensed(e, 0.05));
  CHECK_FALSE(decisively_condensed(e, 0.09));
}

TEST_CASE("regular pattern embedding on a complete host") {
  HEmbedOptions o;
  o.min_r = 1;
  const auto k8 = BipartiteGraph::complete(8, 8);
  const auto q2 = cube_as_bipartite(2);
  const auto r2 = embed_regular_noncondensed(k8, complete_pair(8, 2), q2, 1, 0.5, Rng(3), o);
  REQUIRE(r2.success());
  CHECK(verify_pattern_embedding(k8, q2, *r2.embedding).ok());

  const std::pair<VertexId, VertexId> diag[] = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  const auto matching = BipartiteGraph::from_edges(4, 4, diag);
  const auto r1 = embed_regular_noncondensed(k8, complete_pair(8, 1), matching, 1, 0.5, Rng(3), o);
  REQUIRE(r1.success());
  CHECK(verify_pattern_embedding(k8, matching, *r1.embedding).ok());

  CHECK_THROWS_AS(embed_regular_noncondensed(k8, complete_pair(8, 2), q2, 1, 0.5, Rng(3)), InputError);
}

TEST_CASE("regular pattern embedding on random hosts") {
  // K_{4,4} minus a perfect matching, 3-regular
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId i = 0; i < 4; ++i)
    for (VertexId j = 0; j < 4; ++j)
      if (i != j) e.emplace_back(i, j);
  const auto h = BipartiteGraph::from_edges(4, 4, e);
  const auto g = testing::random_graph(128, 128, 0.8, 24);
  StandardPairOptions so;
  so.r = 3;
  const auto pair = find_standard_pair(g, so, Rng(8));
  REQUIRE(pair.certificate);
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rep = embed_regular_noncondensed(g, *pair.certificate, h, 1, 0.5, Rng(100 + seed));
    if (!rep.success()) continue;
    ++ok;
    const auto v = verify_pattern_embedding(g, h, *rep.embedding);
    CHECK(v.ok());
    CHECK(v.adjacency_checks == 12);
    // Q, W, R partition the tiled index set
    std::set<std::uint32_t> all;
    for (const auto* part : {&rep.Q, &rep.W, &rep.R}) all.insert(part->begin(), part->end());
    CHECK(all.size() == rep.Q.size() + rep.W.size() + rep.R.size());
    CHECK(all.size() == rep.m);
    for (std::size_t s = 1; s < rep.Q.size(); ++s) CHECK(rep.cn_sizes[rep.Q[s - 1]] <= rep.cn_sizes[rep.Q[s]]);
    for (auto j : rep.W) CHECK(double(rep.cn_sizes[j]) > rep.beta0_r_D);
  }
  CHECK(ok >= 8);
}
