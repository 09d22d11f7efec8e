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
#include <vector>

#include "hcembed/bigraph.hpp"

namespace hcembed {

/// Q_n vertex as an n-bit mask; bit i set means coordinate i equals -1.
using CubeMask = std::uint32_t;

inline constexpr unsigned kMaxCubeDim = 24;

constexpr bool is_odd(CubeMask v) { return (__builtin_popcount(v) & 1) != 0; }

/// Odd-parity masks of Q_n in ascending order; 1 <= n <= kMaxCubeDim.
std::vector<CubeMask> odd_class(unsigned n);
std::vector<CubeMask> even_class(unsigned n);

/// The n single-bit flips of v, lowest bit first.
std::vector<CubeMask> cube_neighbors(unsigned n, CubeMask v);

struct FacetPartition {
  unsigned n = 0;
  unsigned w = 0;
  /// classes[b] holds the odd masks whose top w bits equal b, ascending.
  std::vector<std::vector<CubeMask>> classes;

  CubeMask suffix(CubeMask v) const { return w == 0 ? 0 : v >> (n - w); }
};

/// Requires w <= n - 2.
FacetPartition facet_partition(unsigned n, unsigned w);

/// Neighbours of an even v: the n - w low-bit flips (same facet) first, then the w suffix flips.
std::vector<CubeMask> ordered_neighbors_by_facet(unsigned n, unsigned w, CubeMask v);

/// Q_n as a bipartite graph: upper i is odd_class(n)[i], lower j is even_class(n)[j].
BipartiteGraph cube_as_bipartite(unsigned n);

/// Index of a mask within its parity class (ascending order).
std::uint32_t parity_class_index(CubeMask v);

}  // namespace hcembed
