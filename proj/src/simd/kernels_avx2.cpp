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

// Compiled with -mavx2 -mpopcnt; only reached after a runtime CPU check.

#include <immintrin.h>

#include "backends.hpp"

namespace hcembed::simd::detail {
namespace {

// Nibble-lookup popcount (vpshufb) accumulated through vpsadbw.
inline __m256i popcount_bytes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
}

inline Word hsum_epi64(__m256i acc) {
  const __m128i lo = _mm256_castsi256_si128(acc);
  const __m128i hi = _mm256_extracti128_si256(acc, 1);
  const __m128i s = _mm_add_epi64(lo, hi);
  return static_cast<Word>(_mm_cvtsi128_si64(s)) + static_cast<Word>(_mm_extract_epi64(s, 1));
}

// Op maps two loaded vectors to the vector to be counted; ScalarOp does the
// same for the tail words.
template <typename Op, typename ScalarOp>
inline Word count_binary(const Word* a, const Word* b, std::size_t n, Op op, ScalarOp sop) {
  __m256i acc = _mm256_setzero_si256();
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(op(va, vb)), zero));
  }
  Word total = hsum_epi64(acc);
  for (; i < n; ++i) total += static_cast<Word>(_mm_popcnt_u64(sop(a[i], b[i])));
  return total;
}

Word popcount_avx2(const Word* a, std::size_t n) {
  return count_binary(
      a, a, n, [](__m256i x, __m256i) { return x; }, [](Word x, Word) { return x; });
}

Word and_popcount_avx2(const Word* a, const Word* b, std::size_t n) {
  return count_binary(
      a, b, n, [](__m256i x, __m256i y) { return _mm256_and_si256(x, y); },
      [](Word x, Word y) { return x & y; });
}

Word andnot_popcount_avx2(const Word* a, const Word* b, std::size_t n) {
  // _mm256_andnot_si256(y, x) computes ~y & x.
  return count_binary(
      a, b, n, [](__m256i x, __m256i y) { return _mm256_andnot_si256(y, x); },
      [](Word x, Word y) { return x & ~y; });
}

void and_into_avx2(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_and_si256(d, s));
  }
  for (; i < n; ++i) dst[i] &= src[i];
}

void andnot_into_avx2(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_andnot_si256(s, d));
  }
  for (; i < n; ++i) dst[i] &= ~src[i];
}

const KernelTable kAvx2{
    "avx2", popcount_avx2, and_popcount_avx2, andnot_popcount_avx2, and_into_avx2, andnot_into_avx2,
};

}  // namespace

const KernelTable& avx2_kernels() { return kAvx2; }

}  // namespace hcembed::simd::detail
