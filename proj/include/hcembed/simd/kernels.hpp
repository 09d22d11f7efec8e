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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace hcembed::simd {

using Word = std::uint64_t;

/**
 * Word-array kernels behind every set operation in the library.
 *
 * Each backend implements the same five operations over equally sized
 * arrays of 64-bit words. The scalar table is the reference; vector
 * backends must agree with it bit for bit (see tests/test_simd.cpp).
 * Pointers may be unaligned. For the in-place kernels dst and src may alias.
 */
struct KernelTable {
  std::string_view name;
  Word (*popcount)(const Word* a, std::size_t n);
  Word (*and_popcount)(const Word* a, const Word* b, std::size_t n);
  Word (*andnot_popcount)(const Word* a, const Word* b, std::size_t n);  // |a & ~b|
  void (*and_into)(Word* dst, const Word* src, std::size_t n);
  void (*andnot_into)(Word* dst, const Word* src, std::size_t n);        // dst &= ~src
};

const KernelTable& scalar_kernels();

/// Every backend compiled in and supported by the running CPU, scalar first.
std::vector<const KernelTable*> available_kernels();

/// Backend chosen at first use: the widest supported one, unless the
/// HCEMBED_SIMD environment variable names another ("scalar", "avx2", "neon").
const KernelTable& active_kernels();

/// Forces a backend by name for the rest of the process. Returns false if
/// it is not available. Intended for tests and benchmarks.
bool select_kernels(std::string_view name);

inline Word popcount(std::span<const Word> a) {
  return active_kernels().popcount(a.data(), a.size());
}
inline Word and_popcount(std::span<const Word> a, std::span<const Word> b) {
  return active_kernels().and_popcount(a.data(), b.data(), a.size());
}
inline Word andnot_popcount(std::span<const Word> a, std::span<const Word> b) {
  return active_kernels().andnot_popcount(a.data(), b.data(), a.size());
}
inline void and_into(std::span<Word> dst, std::span<const Word> src) {
  active_kernels().and_into(dst.data(), src.data(), dst.size());
}
inline void andnot_into(std::span<Word> dst, std::span<const Word> src) {
  active_kernels().andnot_into(dst.data(), src.data(), dst.size());
}

}  // namespace hcembed::simd
