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

// AArch64 only; NEON is part of the base ISA there so no runtime probe.

#include <arm_neon.h>

#include <bit>

#include "backends.hpp"

namespace hcembed::simd::detail {
namespace {

inline Word count_u8x16(uint8x16_t v) { return vaddlvq_u8(vcntq_u8(v)); }

Word popcount_neon(const Word* a, std::size_t n) {
  Word total = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) total += count_u8x16(vreinterpretq_u8_u64(vld1q_u64(a + i)));
  for (; i < n; ++i) total += static_cast<Word>(std::popcount(a[i]));
  return total;
}

Word and_popcount_neon(const Word* a, const Word* b, std::size_t n) {
  Word total = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    total += count_u8x16(vreinterpretq_u8_u64(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i))));
  for (; i < n; ++i) total += static_cast<Word>(std::popcount(a[i] & b[i]));
  return total;
}

Word andnot_popcount_neon(const Word* a, const Word* b, std::size_t n) {
  Word total = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    total += count_u8x16(vreinterpretq_u8_u64(vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i))));
  for (; i < n; ++i) total += static_cast<Word>(std::popcount(a[i] & ~b[i]));
  return total;
}

void and_into_neon(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, vandq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  for (; i < n; ++i) dst[i] &= src[i];
}

void andnot_into_neon(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, vbicq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  for (; i < n; ++i) dst[i] &= ~src[i];
}

const KernelTable kNeon{
    "neon", popcount_neon, and_popcount_neon, andnot_popcount_neon, and_into_neon, andnot_into_neon,
};

}  // namespace

const KernelTable& neon_kernels() { return kNeon; }

}  // namespace hcembed::simd::detail
