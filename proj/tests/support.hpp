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

// Hand-rolled generators shared by the unit tests and the acceptance runner.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "hcembed/bigraph.hpp"
#include "hcembed/harness.hpp"
#include "hcembed/rng.hpp"

namespace hcembed::testing {

/// Graph number `code` among all 2^(U*D) graphs on U+D vertices; bit u*D+v is edge (u, v).
inline BipartiteGraph graph_from_code(std::uint32_t U, std::uint32_t D, std::uint64_t code) {
  GraphBuilder b(U, D);
  for (std::uint32_t u = 0; u < U; ++u)
    for (std::uint32_t v = 0; v < D; ++v)
      if ((code >> (u * D + v)) & 1U) b.add_edge(u, v);
  return std::move(b).build();
}

/// Random spanning tree on U+D vertices. Acyclic, so it contains no C_4.
inline BipartiteGraph random_tree(std::uint32_t U, std::uint32_t D, Rng& rng) {
  GraphBuilder b(U, D);
  // vertices in random order; each new vertex attaches to one earlier vertex of the other side
  std::vector<std::pair<bool, std::uint32_t>> order;
  for (std::uint32_t u = 0; u < U; ++u) order.emplace_back(true, u);
  for (std::uint32_t v = 0; v < D; ++v) order.emplace_back(false, v);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::uint32_t> seen_up, seen_down;
  for (const auto& [up, id] : order) {
    auto& other = up ? seen_down : seen_up;
    if (!other.empty()) {
      const std::uint32_t t = other[rng.uniform_below(other.size())];
      if (up) b.add_edge(id, t);
      else b.add_edge(t, id);
    }
    (up ? seen_up : seen_down).push_back(id);
  }
  return std::move(b).build();
}

inline BipartiteGraph random_graph(std::uint32_t U, std::uint32_t D, double p, std::uint64_t seed) {
  Rng rng(seed);
  return gen_random_bipartite(U, D, p, rng);
}

}  // namespace hcembed::testing
