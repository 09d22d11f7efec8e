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
#include <limits>
#include <span>
#include <vector>

#include "hcembed/simd/kernels.hpp"

namespace hcembed {

/**
 * Fixed-length bit vector backed by 64-bit words.
 *
 * Bits at positions >= size() are always zero, so word-level kernels can run
 * over the whole backing array without masking. Binary operations require
 * equal sizes and throw InputError otherwise.
 */
class BitVec {
 public:
  using Word = simd::Word;
  static constexpr std::size_t kWordBits = 64;
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  BitVec() = default;
  explicit BitVec(std::size_t size) : size_(size), words_(words_for(size), 0) {}

  static BitVec full(std::size_t size);
  static std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

  std::size_t size() const noexcept { return size_; }
  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }

  std::size_t count() const { return static_cast<std::size_t>(simd::popcount(words_)); }
  bool none() const;
  bool any() const { return !none(); }

  BitVec& operator&=(const BitVec& other);
  BitVec& operator|=(const BitVec& other);
  /// this &= ~other
  BitVec& subtract(const BitVec& other);
  BitVec complement() const;

  std::size_t and_count(const BitVec& other) const;
  bool is_subset_of(const BitVec& other) const;

  /// First set position >= from, or npos.
  std::size_t find_next(std::size_t from) const;
  std::size_t find_first() const { return find_next(0); }
  /// Position of the k-th set bit (0-based); npos if fewer than k+1 bits are set.
  std::size_t select(std::size_t k) const;

  std::vector<std::uint32_t> to_indices() const;

  template <typename F>
  void for_each_set(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const int tz = __builtin_ctzll(bits);
        f(static_cast<std::uint32_t>(w * kWordBits + static_cast<std::size_t>(tz)));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const BitVec&, const BitVec&) = default;

 private:
  void require_same_size(const BitVec& other) const;

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

}  // namespace hcembed
