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

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hcembed/bitvec.hpp"

namespace hcembed {

using Rational = mpq_class;
using VertexId = std::uint32_t;

enum class Side : std::uint8_t { Upper, Lower };

constexpr Side opposite(Side s) { return s == Side::Upper ? Side::Lower : Side::Upper; }
const char* side_name(Side s);

struct Vertex {
  Side side;
  VertexId id;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// A subset of one part of a bipartite graph.
struct VertexSet {
  Side side = Side::Upper;
  BitVec bits;

  static VertexSet none(Side side, std::size_t part_size) { return {side, BitVec(part_size)}; }
  static VertexSet all(Side side, std::size_t part_size) { return {side, BitVec::full(part_size)}; }
  static VertexSet of(Side side, std::size_t part_size, std::span<const VertexId> ids);

  std::size_t count() const { return bits.count(); }
  bool contains(VertexId v) const { return v < bits.size() && bits.test(v); }
  std::vector<VertexId> ids() const { return bits.to_indices(); }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;
};

struct Density {
  Rational exact;
  double value = 0.0;
};

/**
 * Immutable bipartite graph with one bit row per upper vertex.
 *
 * Row u holds the lower neighbours of upper vertex u. Lower-side queries go
 * through a transpose that is built on first use and shared between copies.
 * Use GraphBuilder to construct one.
 */
class BipartiteGraph {
 public:
  /// Edgeless graph; both parts must be non-empty.
  BipartiteGraph(std::uint32_t upper_count, std::uint32_t lower_count);
  /// Takes ownership of rows; each row must have exactly lower_count bits.
  BipartiteGraph(std::uint32_t lower_count, std::vector<BitVec> rows);

  static BipartiteGraph complete(std::uint32_t upper_count, std::uint32_t lower_count);
  static BipartiteGraph from_edges(std::uint32_t upper_count, std::uint32_t lower_count,
                                   std::span<const std::pair<VertexId, VertexId>> edges);

  std::uint32_t upper_count() const noexcept { return upper_count_; }
  std::uint32_t lower_count() const noexcept { return lower_count_; }
  std::uint32_t part_size(Side s) const noexcept {
    return s == Side::Upper ? upper_count_ : lower_count_;
  }

  bool has_edge(VertexId upper, VertexId lower) const { return rows_[upper].test(lower); }
  /// Lower neighbours of an upper vertex.
  const BitVec& row(VertexId upper) const { return rows_[upper]; }
  /// Upper neighbours of a lower vertex.
  const BitVec& column(VertexId lower) const;
  const BitVec& adjacency(Side side, VertexId v) const {
    return side == Side::Upper ? row(v) : column(v);
  }

  std::uint64_t edge_count() const noexcept { return edge_count_; }
  std::uint32_t degree(Side side, VertexId v) const;

  /// All edges (upper, lower) in lexicographic order.
  std::vector<std::pair<VertexId, VertexId>> edges() const;

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.upper_count_ == b.upper_count_ && a.lower_count_ == b.lower_count_ && a.rows_ == b.rows_;
  }

 private:
  struct Transpose;

  std::uint32_t upper_count_;
  std::uint32_t lower_count_;
  std::vector<BitVec> rows_;
  std::uint64_t edge_count_ = 0;
  std::shared_ptr<Transpose> transpose_;
};

class GraphBuilder {
 public:
  GraphBuilder(std::uint32_t upper_count, std::uint32_t lower_count);
  /// Adding an existing edge is a no-op.
  void add_edge(VertexId upper, VertexId lower);
  bool has_edge(VertexId upper, VertexId lower) const { return rows_[upper].test(lower); }
  BitVec& row(VertexId upper) { return rows_[upper]; }
  BipartiteGraph build() &&;

 private:
  std::uint32_t upper_count_;
  std::uint32_t lower_count_;
  std::vector<BitVec> rows_;
};

/// Neighbours of v on the opposite side.
VertexSet neighborhood(const BipartiteGraph& g, Side side, VertexId v);

/// Intersection of the neighbourhoods of vs (all on `side`); repeats allowed.
/// An empty list yields the whole opposite part.
VertexSet common_neighborhood(const BipartiteGraph& g, Side side, std::span<const VertexId> vs);
/// Same, with per-vertex sides; they must all agree and the list must be non-empty.
VertexSet common_neighborhood(const BipartiteGraph& g, std::span<const Vertex> vs);

Density density(const BipartiteGraph& g);

struct InducedSubgraph {
  BipartiteGraph graph;
  std::vector<VertexId> upper_ids;  // new id -> original id
  std::vector<VertexId> lower_ids;
  std::vector<VertexId> upper_index;  // original id -> new id, or kAbsent
  std::vector<VertexId> lower_index;
  static constexpr VertexId kAbsent = ~VertexId{0};
};

InducedSubgraph induced_subgraph(const BipartiteGraph& g, const VertexSet& uppers,
                                 const VertexSet& lowers);

/// Same vertex sets, every edge touching a vertex of `lowers` removed.
BipartiteGraph remove_edges_at_lowers(const BipartiteGraph& g, const VertexSet& lowers);

/// True if every edge of sub (under the id maps) is an edge of g.
bool is_subgraph_of(const BipartiteGraph& sub, const BipartiteGraph& g,
                    std::span<const VertexId> upper_ids, std::span<const VertexId> lower_ids);

// Text format: "upper_count lower_count" then one "u v" edge per line;
// '#' starts a comment. Writing emits edges in lexicographic order.
BipartiteGraph parse_graph(std::istream& in);
void format_graph(const BipartiteGraph& g, std::ostream& out);
BipartiteGraph read_graph(const std::string& path);
void write_graph(const BipartiteGraph& g, const std::string& path);

}  // namespace hcembed
