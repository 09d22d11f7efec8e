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

#include "hcembed/bitvec.hpp"

#include <bit>

#include "hcembed/errors.hpp"

namespace hcembed {

BitVec BitVec::full(std::size_t size) {
  BitVec v(size);
  for (auto& w : v.words_) w = ~Word{0};
  if (const std::size_t tail = size % kWordBits; tail != 0 && !v.words_.empty())
    v.words_.back() = (Word{1} << tail) - 1;
  return v;
}

bool BitVec::none() const {
  for (Word w : words_)
    if (w != 0) return false;
  return true;
}

void BitVec::require_same_size(const BitVec& other) const {
  if (other.size_ != size_) throw InputError("BitVec size mismatch");
}

BitVec& BitVec::operator&=(const BitVec& other) {
  require_same_size(other);
  simd::and_into(words_, other.words_);
  return *this;
}

BitVec& BitVec::operator|=(const BitVec& other) {
  require_same_size(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BitVec& BitVec::subtract(const BitVec& other) {
  require_same_size(other);
  simd::andnot_into(words_, other.words_);
  return *this;
}

BitVec BitVec::complement() const {
  BitVec out = full(size_);
  out.subtract(*this);
  return out;
}

std::size_t BitVec::and_count(const BitVec& other) const {
  require_same_size(other);
  return static_cast<std::size_t>(simd::and_popcount(words_, other.words_));
}

bool BitVec::is_subset_of(const BitVec& other) const {
  require_same_size(other);
  return simd::andnot_popcount(words_, other.words_) == 0;
}

std::size_t BitVec::find_next(std::size_t from) const {
  if (from >= size_) return npos;
  std::size_t w = from / kWordBits;
  Word bits = words_[w] & (~Word{0} << (from % kWordBits));
  while (true) {
    if (bits != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
    if (++w == words_.size()) return npos;
    bits = words_[w];
  }
}

std::size_t BitVec::select(std::size_t k) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    const auto c = static_cast<std::size_t>(std::popcount(words_[w]));
    if (k >= c) {
      k -= c;
      continue;
    }
    Word bits = words_[w];
    for (std::size_t i = 0; i < k; ++i) bits &= bits - 1;
    return w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
  }
  return npos;
}

std::vector<std::uint32_t> BitVec::to_indices() const {
  std::vector<std::uint32_t> out;
  out.reserve(count());
  for_each_set([&](std::uint32_t i) { out.push_back(i); });
  return out;
}

}  // namespace hcembed
