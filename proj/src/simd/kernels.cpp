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

#include "hcembed/simd/kernels.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>

#include "backends.hpp"

namespace hcembed::simd {
namespace {

Word popcount_scalar(const Word* a, std::size_t n) {
  Word total = 0;
  for (std::size_t i = 0; i < n; ++i) total += static_cast<Word>(std::popcount(a[i]));
  return total;
}

Word and_popcount_scalar(const Word* a, const Word* b, std::size_t n) {
  Word total = 0;
  for (std::size_t i = 0; i < n; ++i) total += static_cast<Word>(std::popcount(a[i] & b[i]));
  return total;
}

Word andnot_popcount_scalar(const Word* a, const Word* b, std::size_t n) {
  Word total = 0;
  for (std::size_t i = 0; i < n; ++i) total += static_cast<Word>(std::popcount(a[i] & ~b[i]));
  return total;
}

void and_into_scalar(Word* dst, const Word* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] &= src[i];
}

void andnot_into_scalar(Word* dst, const Word* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] &= ~src[i];
}

const KernelTable kScalar{
    "scalar", popcount_scalar, and_popcount_scalar, andnot_popcount_scalar,
    and_into_scalar, andnot_into_scalar,
};

bool cpu_has_avx2() {
#if defined(HCEMBED_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

const KernelTable* find_by_name(std::string_view name) {
  for (const KernelTable* k : available_kernels())
    if (k->name == name) return k;
  return nullptr;
}

const KernelTable* pick_default() {
  if (const char* env = std::getenv("HCEMBED_SIMD")) {
    if (const KernelTable* k = find_by_name(env)) return k;
  }
  return available_kernels().back();
}

std::atomic<const KernelTable*> g_active{nullptr};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&kScalar};
#if defined(HCEMBED_HAVE_AVX2)
  if (cpu_has_avx2()) out.push_back(&detail::avx2_kernels());
#endif
#if defined(HCEMBED_HAVE_NEON)
  out.push_back(&detail::neon_kernels());
#endif
  return out;
}

const KernelTable& active_kernels() {
  const KernelTable* k = g_active.load(std::memory_order_acquire);
  if (k == nullptr) {
    const KernelTable* chosen = pick_default();
    g_active.compare_exchange_strong(k, chosen, std::memory_order_acq_rel);
    k = g_active.load(std::memory_order_acquire);
  }
  return *k;
}

bool select_kernels(std::string_view name) {
  const KernelTable* k = find_by_name(name);
  if (k == nullptr) return false;
  g_active.store(k, std::memory_order_release);
  return true;
}

}  // namespace hcembed::simd
