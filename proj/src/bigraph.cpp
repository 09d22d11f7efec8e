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

#include "hcembed/bigraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "hcembed/errors.hpp"
#include "hcembed/exact.hpp"

namespace hcembed {

namespace {

constexpr std::uint64_t kMaxPart = std::uint64_t{1} << 24;
constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 34;

void check_dims(std::uint64_t upper, std::uint64_t lower) {
  if (upper == 0 || lower == 0) throw InputError("graph parts must be non-empty");
  if (upper > kMaxPart || lower > kMaxPart || upper * lower > kMaxCells)
    throw InputError("graph dimensions too large");
}

void check_id(const BipartiteGraph& g, Side side, VertexId v) {
  if (v >= g.part_size(side))
    throw InputError(std::string(side_name(side)) + " vertex " + std::to_string(v) + " out of range");
}

}  // namespace

const char* side_name(Side s) { return s == Side::Upper ? "upper" : "lower"; }

VertexSet VertexSet::of(Side side, std::size_t part_size, std::span<const VertexId> ids) {
  VertexSet out = none(side, part_size);
  for (VertexId v : ids) {
    if (v >= part_size) throw InputError("vertex id out of range");
    out.bits.set(v);
  }
  return out;
}

struct BipartiteGraph::Transpose {
  std::once_flag once;
  std::vector<BitVec> columns;
};

BipartiteGraph::BipartiteGraph(std::uint32_t upper_count, std::uint32_t lower_count)
    : upper_count_(upper_count), lower_count_(lower_count) {
  check_dims(upper_count, lower_count);
  rows_.assign(upper_count, BitVec(lower_count));
  transpose_ = std::make_shared<Transpose>();
}

BipartiteGraph::BipartiteGraph(std::uint32_t lower_count, std::vector<BitVec> rows)
    : upper_count_(static_cast<std::uint32_t>(rows.size())),
      lower_count_(lower_count),
      rows_(std::move(rows)) {
  check_dims(rows_.size(), lower_count);
  for (const BitVec& r : rows_) {
    if (r.size() != lower_count) throw InputError("row length differs from lower_count");
    edge_count_ += r.count();
  }
  transpose_ = std::make_shared<Transpose>();
}

BipartiteGraph BipartiteGraph::complete(std::uint32_t upper_count, std::uint32_t lower_count) {
  check_dims(upper_count, lower_count);
  return BipartiteGraph(lower_count, std::vector<BitVec>(upper_count, BitVec::full(lower_count)));
}

BipartiteGraph BipartiteGraph::from_edges(std::uint32_t upper_count, std::uint32_t lower_count,
                                          std::span<const std::pair<VertexId, VertexId>> edges) {
  GraphBuilder b(upper_count, lower_count);
  for (auto [u, v] : edges) b.add_edge(u, v);
  return std::move(b).build();
}

const BitVec& BipartiteGraph::column(VertexId lower) const {
  Transpose& t = *transpose_;
  std::call_once(t.once, [&] {
    t.columns.assign(lower_count_, BitVec(upper_count_));
    for (VertexId u = 0; u < upper_count_; ++u) rows_[u].for_each_set([&](VertexId v) { t.columns[v].set(u); });
  });
  return t.columns[lower];
}

std::uint32_t BipartiteGraph::degree(Side side, VertexId v) const {
  check_id(*this, side, v);
  return static_cast<std::uint32_t>(adjacency(side, v).count());
}

std::vector<std::pair<VertexId, VertexId>> BipartiteGraph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(edge_count_);
  for (VertexId u = 0; u < upper_count_; ++u) rows_[u].for_each_set([&](VertexId v) { out.emplace_back(u, v); });
  return out;
}

GraphBuilder::GraphBuilder(std::uint32_t upper_count, std::uint32_t lower_count)
    : upper_count_(upper_count), lower_count_(lower_count) {
  check_dims(upper_count, lower_count);
  rows_.assign(upper_count, BitVec(lower_count));
}

void GraphBuilder::add_edge(VertexId upper, VertexId lower) {
  if (upper >= upper_count_ || lower >= lower_count_) throw InputError("edge endpoint out of range");
  rows_[upper].set(lower);
}

BipartiteGraph GraphBuilder::build() && { return BipartiteGraph(lower_count_, std::move(rows_)); }

VertexSet neighborhood(const BipartiteGraph& g, Side side, VertexId v) {
  check_id(g, side, v);
  return {opposite(side), g.adjacency(side, v)};
}

VertexSet common_neighborhood(const BipartiteGraph& g, Side side, std::span<const VertexId> vs) {
  const Side other = opposite(side);
  VertexSet out = VertexSet::all(other, g.part_size(other));
  for (VertexId v : vs) {
    check_id(g, side, v);
    out.bits &= g.adjacency(side, v);
  }
  return out;
}

VertexSet common_neighborhood(const BipartiteGraph& g, std::span<const Vertex> vs) {
  if (vs.empty()) throw InputError("common_neighborhood: side of an empty vertex list is ambiguous");
  std::vector<VertexId> ids;
  ids.reserve(vs.size());
  for (const Vertex& v : vs) {
    if (v.side != vs.front().side) throw InputError("common_neighborhood: vertices on mixed sides");
    ids.push_back(v.id);
  }
  return common_neighborhood(g, vs.front().side, ids);
}

Density density(const BipartiteGraph& g) {
  Density d;
  d.exact = rational_u64(g.edge_count(), std::uint64_t{g.upper_count()} * g.lower_count());
  d.value = d.exact.get_d();
  return d;
}

InducedSubgraph induced_subgraph(const BipartiteGraph& g, const VertexSet& uppers,
                                 const VertexSet& lowers) {
  if (uppers.side != Side::Upper || lowers.side != Side::Lower)
    throw InputError("induced_subgraph: sets are on the wrong sides");
  if (uppers.bits.size() != g.upper_count() || lowers.bits.size() != g.lower_count())
    throw InputError("induced_subgraph: set sizes do not match the graph");
  if (uppers.bits.none() || lowers.bits.none()) throw InputError("induced_subgraph: empty side");

  InducedSubgraph out{BipartiteGraph(1, 1), uppers.ids(), lowers.ids(), {}, {}};
  out.upper_index.assign(g.upper_count(), InducedSubgraph::kAbsent);
  out.lower_index.assign(g.lower_count(), InducedSubgraph::kAbsent);
  for (VertexId i = 0; i < out.upper_ids.size(); ++i) out.upper_index[out.upper_ids[i]] = i;
  for (VertexId i = 0; i < out.lower_ids.size(); ++i) out.lower_index[out.lower_ids[i]] = i;

  const auto lower_n = static_cast<std::uint32_t>(out.lower_ids.size());
  std::vector<BitVec> rows;
  rows.reserve(out.upper_ids.size());
  for (VertexId u : out.upper_ids) {
    BitVec masked = g.row(u);
    masked &= lowers.bits;
    BitVec row(lower_n);
    masked.for_each_set([&](VertexId v) { row.set(out.lower_index[v]); });
    rows.push_back(std::move(row));
  }
  out.graph = BipartiteGraph(lower_n, std::move(rows));
  return out;
}

BipartiteGraph remove_edges_at_lowers(const BipartiteGraph& g, const VertexSet& lowers) {
  if (lowers.side != Side::Lower || lowers.bits.size() != g.lower_count())
    throw InputError("remove_edges_at_lowers: expected a lower vertex set of the graph");
  std::vector<BitVec> rows;
  rows.reserve(g.upper_count());
  for (VertexId u = 0; u < g.upper_count(); ++u) {
    BitVec r = g.row(u);
    r.subtract(lowers.bits);
    rows.push_back(std::move(r));
  }
  return BipartiteGraph(g.lower_count(), std::move(rows));
}

bool is_subgraph_of(const BipartiteGraph& sub, const BipartiteGraph& g,
                    std::span<const VertexId> upper_ids, std::span<const VertexId> lower_ids) {
  if (upper_ids.size() != sub.upper_count() || lower_ids.size() != sub.lower_count()) return false;
  for (auto [u, v] : sub.edges()) {
    if (upper_ids[u] >= g.upper_count() || lower_ids[v] >= g.lower_count()) return false;
    if (!g.has_edge(upper_ids[u], lower_ids[v])) return false;
  }
  return true;
}

namespace {

// Splits a line into unsigned integer fields, ignoring a trailing comment.
std::vector<std::uint64_t> parse_fields(const std::string& raw, std::size_t line_no) {
  std::string line = raw.substr(0, raw.find('#'));
  std::istringstream ss(line);
  std::vector<std::uint64_t> out;
  std::string tok;
  while (ss >> tok) {
    const bool digits = std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (!digits || tok.size() > 12)
      throw ParseError(line_no, "expected a non-negative integer, got '" + tok + "'");
    out.push_back(std::stoull(tok));
  }
  return out;
}

}  // namespace

BipartiteGraph parse_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::uint64_t> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    header = parse_fields(line, line_no);
  }
  if (header.empty()) throw ParseError(line_no, "missing header");
  if (header.size() != 2) throw ParseError(line_no, "header must be 'upper_count lower_count'");
  if (header[0] == 0 || header[1] == 0) throw ParseError(line_no, "graph parts must be non-empty");
  if (header[0] > kMaxPart || header[1] > kMaxPart || header[0] * header[1] > kMaxCells)
    throw ParseError(line_no, "dimension overflow");

  GraphBuilder b(static_cast<std::uint32_t>(header[0]), static_cast<std::uint32_t>(header[1]));
  while (std::getline(in, line)) {
    ++line_no;
    const auto f = parse_fields(line, line_no);
    if (f.empty()) continue;
    if (f.size() != 2) throw ParseError(line_no, "edge line must be 'u v'");
    if (f[0] >= header[0] || f[1] >= header[1])
      throw ParseError(line_no, "edge endpoint out of range");
    b.add_edge(static_cast<VertexId>(f[0]), static_cast<VertexId>(f[1]));
  }
  return std::move(b).build();
}

void format_graph(const BipartiteGraph& g, std::ostream& out) {
  out << g.upper_count() << ' ' << g.lower_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

BipartiteGraph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_graph(in);
}

void write_graph(const BipartiteGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  format_graph(g, out);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace hcembed
