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
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hcembed/bigraph.hpp"
#include "hcembed/hypercube.hpp"

namespace hcembed {

struct HostVertex {
  Side side = Side::Upper;
  VertexId id = 0;
  friend bool operator==(const HostVertex&, const HostVertex&) = default;
};

/// Claimed embedding of Q_n; image[mask] is the host vertex of that cube vertex.
struct CubeEmbedding {
  unsigned n = 0;
  std::vector<HostVertex> image;
};

struct VerifyResult {
  std::vector<std::string> violations;
  std::uint64_t adjacency_checks = 0;
  bool ok() const { return violations.empty(); }
};

/// Checks injectivity, that each parity class sits on one side (opposite sides),
/// and adjacency of every cube edge.
VerifyResult verify_embedding(const BipartiteGraph& g, const CubeEmbedding& e);

struct GreedyResult {
  std::optional<CubeEmbedding> embedding;
  CubeMask stuck = 0;  // first even vertex with no free common neighbour
};

/// Orders the n neighbours of an even cube vertex before their images are intersected.
using NeighborOrder = std::function<std::vector<CubeMask>(CubeMask)>;

/// Places the odd class on `odd_side` (odd_images aligned with odd_class(n)),
/// then gives each even vertex, in ascending mask order, the lowest unused
/// vertex adjacent to all its neighbours' images.
GreedyResult greedy_extend(const BipartiteGraph& g, unsigned n, Side odd_side,
                           std::span<const VertexId> odd_images, const NeighborOrder& order = {});

/// Map of a bipartite pattern H into g: H's upper side goes to `up_side` of g.
struct PatternEmbedding {
  Side up_side = Side::Upper;
  std::vector<VertexId> upper_image;
  std::vector<VertexId> lower_image;
};

/// Injectivity plus one adjacency check per edge of h.
VerifyResult verify_pattern_embedding(const BipartiteGraph& g, const BipartiteGraph& h,
                                      const PatternEmbedding& e);

/// Converts an embedding of cube_as_bipartite(n) into a CubeEmbedding.
CubeEmbedding cube_embedding_from_pattern(unsigned n, const PatternEmbedding& e);

// File format: "n upper_count lower_count", then one "mask side id" line per
// cube vertex with side U or L.
struct EmbeddingFile {
  CubeEmbedding embedding;
  std::uint32_t upper_count = 0;
  std::uint32_t lower_count = 0;
};

void format_embedding(const CubeEmbedding& e, std::uint32_t upper_count, std::uint32_t lower_count,
                      std::ostream& out);
EmbeddingFile parse_embedding(std::istream& in);
void write_embedding(const CubeEmbedding& e, const BipartiteGraph& g, const std::string& path);
EmbeddingFile read_embedding(const std::string& path);

}  // namespace hcembed
