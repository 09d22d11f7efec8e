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

#include "hcembed/embedding.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "hcembed/errors.hpp"

namespace hcembed {

namespace {

std::string describe(CubeMask v) { return "cube vertex " + std::to_string(v); }

std::string describe(HostVertex h) { return std::string(side_name(h.side)) + " " + std::to_string(h.id); }

}  // namespace

VerifyResult verify_embedding(const BipartiteGraph& g, const CubeEmbedding& e) {
  VerifyResult res;
  if (e.n < 1 || e.n > kMaxCubeDim) {
    res.violations.push_back("invalid dimension " + std::to_string(e.n));
    return res;
  }
  const std::size_t count = std::size_t{1} << e.n;
  if (e.image.size() != count) {
    res.violations.push_back("expected " + std::to_string(count) + " images, got " +
                             std::to_string(e.image.size()));
    return res;
  }

  bool in_range = true;
  for (CubeMask v = 0; v < count; ++v) {
    if (e.image[v].id >= g.part_size(e.image[v].side)) {
      res.violations.push_back("range: " + describe(v) + " -> " + describe(e.image[v]));
      in_range = false;
    }
  }

  const Side odd_side = e.image[1].side;
  for (CubeMask v = 0; v < count; ++v) {
    const Side want = is_odd(v) ? odd_side : opposite(odd_side);
    if (e.image[v].side != want)
      res.violations.push_back("side: " + describe(v) + " mapped to " + side_name(e.image[v].side) +
                               ", expected " + side_name(want));
  }

  std::unordered_map<std::uint64_t, CubeMask> seen;
  for (CubeMask v = 0; v < count; ++v) {
    const std::uint64_t key = (std::uint64_t{e.image[v].side == Side::Lower} << 32) | e.image[v].id;
    auto [it, inserted] = seen.emplace(key, v);
    if (!inserted)
      res.violations.push_back("injectivity: " + describe(it->second) + " and " + describe(v) +
                               " both map to " + describe(e.image[v]));
  }

  if (!in_range) return res;
  for (CubeMask v = 0; v < count; ++v) {
    for (unsigned i = 0; i < e.n; ++i) {
      const CubeMask u = v ^ (CubeMask{1} << i);
      if (u < v) continue;
      ++res.adjacency_checks;
      const HostVertex a = e.image[v];
      const HostVertex b = e.image[u];
      bool adjacent = false;
      if (a.side == Side::Upper && b.side == Side::Lower) adjacent = g.has_edge(a.id, b.id);
      if (a.side == Side::Lower && b.side == Side::Upper) adjacent = g.has_edge(b.id, a.id);
      if (!adjacent)
        res.violations.push_back("adjacency: edge " + std::to_string(v) + "-" + std::to_string(u) +
                                 " maps to non-edge " + describe(a) + ", " + describe(b));
    }
  }
  return res;
}

GreedyResult greedy_extend(const BipartiteGraph& g, unsigned n, Side odd_side,
                           std::span<const VertexId> odd_images, const NeighborOrder& order) {
  const auto odd = odd_class(n);
  if (odd_images.size() != odd.size()) throw InputError("greedy_extend: need one image per odd vertex");
  const Side even_side = opposite(odd_side);

  CubeEmbedding e{n, std::vector<HostVertex>(std::size_t{1} << n)};
  BitVec used_odd(g.part_size(odd_side));
  for (std::size_t i = 0; i < odd.size(); ++i) {
    const VertexId id = odd_images[i];
    if (id >= g.part_size(odd_side)) throw InputError("greedy_extend: odd image out of range");
    if (used_odd.test(id)) throw InputError("greedy_extend: odd assignment is not injective");
    used_odd.set(id);
    e.image[odd[i]] = {odd_side, id};
  }

  BitVec free_even = BitVec::full(g.part_size(even_side));
  for (CubeMask v : even_class(n)) {
    BitVec cand = free_even;
    const auto nbrs = order ? order(v) : cube_neighbors(n, v);
    for (CubeMask nb : nbrs) {
      cand &= g.adjacency(odd_side, e.image[nb].id);
      if (cand.none()) break;
    }
    const std::size_t pick = cand.find_first();
    if (pick == BitVec::npos) return {std::nullopt, v};
    free_even.reset(pick);
    e.image[v] = {even_side, static_cast<VertexId>(pick)};
  }
  return {std::move(e), 0};
}

VerifyResult verify_pattern_embedding(const BipartiteGraph& g, const BipartiteGraph& h,
                                      const PatternEmbedding& e) {
  VerifyResult res;
  if (e.upper_image.size() != h.upper_count() || e.lower_image.size() != h.lower_count()) {
    res.violations.push_back("image sizes do not match the pattern");
    return res;
  }
  const Side up = e.up_side;
  const Side down = opposite(up);
  auto check_side = [&](const std::vector<VertexId>& images, Side side, const char* label) {
    BitVec used(g.part_size(side));
    bool ok = true;
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i] >= g.part_size(side)) {
        res.violations.push_back(std::string("range: pattern ") + label + " " + std::to_string(i));
        ok = false;
        continue;
      }
      if (used.test(images[i]))
        res.violations.push_back(std::string("injectivity: pattern ") + label + " " + std::to_string(i) +
                                 " reuses " + side_name(side) + " " + std::to_string(images[i]));
      used.set(images[i]);
    }
    return ok;
  };
  const bool ok_up = check_side(e.upper_image, up, "upper");
  const bool ok_down = check_side(e.lower_image, down, "lower");
  if (!ok_up || !ok_down) return res;

  for (auto [a, b] : h.edges()) {
    ++res.adjacency_checks;
    const VertexId x = e.upper_image[a];
    const VertexId y = e.lower_image[b];
    const bool adjacent = up == Side::Upper ? g.has_edge(x, y) : g.has_edge(y, x);
    if (!adjacent)
      res.violations.push_back("adjacency: pattern edge " + std::to_string(a) + "-" + std::to_string(b) +
                               " is not a host edge");
  }
  return res;
}

CubeEmbedding cube_embedding_from_pattern(unsigned n, const PatternEmbedding& e) {
  const auto odd = odd_class(n);
  const auto even = even_class(n);
  if (e.upper_image.size() != odd.size() || e.lower_image.size() != even.size())
    throw InputError("cube_embedding_from_pattern: sizes do not match Q_n");
  CubeEmbedding out{n, std::vector<HostVertex>(std::size_t{1} << n)};
  for (std::size_t i = 0; i < odd.size(); ++i) out.image[odd[i]] = {e.up_side, e.upper_image[i]};
  for (std::size_t j = 0; j < even.size(); ++j) out.image[even[j]] = {opposite(e.up_side), e.lower_image[j]};
  return out;
}

void format_embedding(const CubeEmbedding& e, std::uint32_t upper_count, std::uint32_t lower_count,
                      std::ostream& out) {
  out << e.n << ' ' << upper_count << ' ' << lower_count << '\n';
  for (CubeMask v = 0; v < e.image.size(); ++v)
    out << v << ' ' << (e.image[v].side == Side::Upper ? 'U' : 'L') << ' ' << e.image[v].id << '\n';
}

EmbeddingFile parse_embedding(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_content = [&](std::string& out) {
    while (std::getline(in, line)) {
      ++line_no;
      out = line.substr(0, line.find('#'));
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  std::string body;
  if (!next_content(body)) throw ParseError(line_no, "missing header");
  EmbeddingFile f;
  {
    std::istringstream ss(body);
    std::uint64_t n = 0, up = 0, down = 0;
    std::string extra;
    if (!(ss >> n >> up >> down) || (ss >> extra))
      throw ParseError(line_no, "header must be 'n upper_count lower_count'");
    if (n < 1 || n > kMaxCubeDim) throw ParseError(line_no, "cube dimension out of range");
    if (up == 0 || down == 0 || up > (1u << 24) || down > (1u << 24))
      throw ParseError(line_no, "dimension overflow");
    f.embedding.n = static_cast<unsigned>(n);
    f.upper_count = static_cast<std::uint32_t>(up);
    f.lower_count = static_cast<std::uint32_t>(down);
  }
  const std::size_t count = std::size_t{1} << f.embedding.n;
  f.embedding.image.resize(count);
  std::vector<bool> seen(count, false);
  while (next_content(body)) {
    std::istringstream ss(body);
    std::uint64_t mask = 0, id = 0;
    char side = 0;
    std::string extra;
    if (!(ss >> mask >> side >> id) || (ss >> extra)) throw ParseError(line_no, "expected 'mask side id'");
    if (mask >= count) throw ParseError(line_no, "mask out of range");
    if (side != 'U' && side != 'L') throw ParseError(line_no, "side must be U or L");
    if (seen[mask]) throw ParseError(line_no, "mask listed twice");
    const Side s = side == 'U' ? Side::Upper : Side::Lower;
    if (id >= (s == Side::Upper ? f.upper_count : f.lower_count)) throw ParseError(line_no, "id out of range");
    seen[mask] = true;
    f.embedding.image[mask] = {s, static_cast<VertexId>(id)};
  }
  for (std::size_t v = 0; v < count; ++v)
    if (!seen[v]) throw ParseError(line_no, "mask " + std::to_string(v) + " missing");
  return f;
}

void write_embedding(const CubeEmbedding& e, const BipartiteGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  format_embedding(e, g.upper_count(), g.lower_count(), out);
  if (!out) throw IoError("write failed: " + path);
}

EmbeddingFile read_embedding(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_embedding(in);
}

}  // namespace hcembed
