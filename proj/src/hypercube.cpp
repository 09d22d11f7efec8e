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

#include "hcembed/hypercube.hpp"

#include "hcembed/errors.hpp"

namespace hcembed {

namespace {

void check_dim(unsigned n) {
  if (n < 1 || n > kMaxCubeDim) throw InputError("cube dimension must be in [1, 24]");
}

void check_vertex(unsigned n, CubeMask v) {
  check_dim(n);
  if (v >> n) throw InputError("cube vertex mask out of range");
}

std::vector<CubeMask> parity_class(unsigned n, bool odd) {
  check_dim(n);
  std::vector<CubeMask> out;
  out.reserve(std::size_t{1} << (n - 1));
  for (CubeMask v = 0; v < (CubeMask{1} << n); ++v)
    if (is_odd(v) == odd) out.push_back(v);
  return out;
}

}  // namespace

std::vector<CubeMask> odd_class(unsigned n) { return parity_class(n, true); }
std::vector<CubeMask> even_class(unsigned n) { return parity_class(n, false); }

std::vector<CubeMask> cube_neighbors(unsigned n, CubeMask v) {
  check_vertex(n, v);
  std::vector<CubeMask> out(n);
  for (unsigned i = 0; i < n; ++i) out[i] = v ^ (CubeMask{1} << i);
  return out;
}

FacetPartition facet_partition(unsigned n, unsigned w) {
  check_dim(n);
  if (n < 2 || w > n - 2) throw InputError("facet_partition: need 0 <= w <= n - 2");
  FacetPartition fp{n, w, std::vector<std::vector<CubeMask>>(std::size_t{1} << w)};
  for (CubeMask v : odd_class(n)) fp.classes[fp.suffix(v)].push_back(v);
  return fp;
}

std::vector<CubeMask> ordered_neighbors_by_facet(unsigned n, unsigned w, CubeMask v) {
  check_vertex(n, v);
  if (n < 2 || w > n - 2) throw InputError("ordered_neighbors_by_facet: need 0 <= w <= n - 2");
  if (is_odd(v)) throw InputError("ordered_neighbors_by_facet: vertex must have even parity");
  // Flips are listed low bit first, and the suffix occupies the top w bits.
  return cube_neighbors(n, v);
}

std::uint32_t parity_class_index(CubeMask v) {
  // Among 2k and 2k+1 exactly one has each parity, so the rank is v / 2.
  return v >> 1;
}

BipartiteGraph cube_as_bipartite(unsigned n) {
  const auto odd = odd_class(n);
  GraphBuilder b(static_cast<std::uint32_t>(odd.size()), static_cast<std::uint32_t>(odd.size()));
  for (std::uint32_t i = 0; i < odd.size(); ++i)
    for (CubeMask nb : cube_neighbors(n, odd[i])) b.add_edge(i, parity_class_index(nb));
  return std::move(b).build();
}

}  // namespace hcembed
