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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "hcembed/bitvec.hpp"
#include "hcembed/parallel.hpp"
#include "hcembed/rng.hpp"
#include "hcembed/simd/kernels.hpp"
#include "hcembed/stats.hpp"

using namespace hcembed;

TEST_CASE("philox known answers") {
  using A4 = std::array<std::uint32_t, 4>;
  using A2 = std::array<std::uint32_t, 2>;
  CHECK(philox4x32_10(A4{0, 0, 0, 0}, A2{0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10(A4{~0U, ~0U, ~0U, ~0U}, A2{~0U, ~0U}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, A2{0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  const Rng root(7);
  Rng s1 = root.stream(1), s1b = root.stream(1), s2 = root.stream(2);
  const auto x = s1.next_u64();
  CHECK(x == s1b.next_u64());
  CHECK(x != s2.next_u64());
  CHECK(root.stream(1).stream(2).next_u64() != root.stream(2).stream(1).next_u64());
}

TEST_CASE("uniform_below stays in range and covers it") {
  Rng rng(3);
  std::vector<int> hits(7);
  for (int i = 0; i < 70000; ++i) {
    const auto v = rng.uniform_below(7);
    REQUIRE(v < 7);
    ++hits[v];
  }
  // each cell ~ Binomial(70000, 1/7): sd ~ 92
  for (int h : hits) CHECK(std::abs(h - 10000) < 500);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("sample_distinct draws distinct uniform subsets") {
  Rng rng(11);
  for (std::uint32_t n = 1; n <= 12; ++n)
    for (std::uint32_t k = 0; k <= n; ++k) {
      const auto s = sample_distinct(n, k, rng);
      REQUIRE(s.size() == k);
      std::set<std::uint32_t> uniq(s.begin(), s.end());
      CHECK(uniq.size() == k);
      CHECK(std::all_of(s.begin(), s.end(), [&](auto v) { return v < n; }));
    }
  std::vector<int> freq(5);
  const int N = 50000;
  for (int i = 0; i < N; ++i)
    for (auto v : sample_distinct(5, 2, rng)) ++freq[v];
  const double sd = std::sqrt(N * 0.4 * 0.6);
  for (int f : freq) CHECK(std::abs(f - N * 0.4) < 5 * sd);
  const std::vector<std::uint32_t> items = {10, 20, 30};
  const auto picked = sample_distinct_from(items, 3, rng);
  CHECK(std::set<std::uint32_t>(picked.begin(), picked.end()) == std::set<std::uint32_t>{10, 20, 30});
}

TEST_CASE("parallel sums do not depend on the thread count") {
  const Rng root(99);
  auto f = [](Rng& rng, std::uint64_t count) {
    std::uint64_t s = 0;
    for (std::uint64_t i = 0; i < count; ++i) s += rng.uniform_below(1000);
    return s;
  };
  const auto one = parallel_chunked_sum<std::uint64_t>(100000, 777, root, f, 1);
  const auto four = parallel_chunked_sum<std::uint64_t>(100000, 777, root, f, 4);
  CHECK(one == four);
  CHECK(parallel_chunked_sum<std::uint64_t>(0, 10, root, f) == 0);
}

TEST_CASE("wilson interval") {
  const auto w = wilson_interval(50, 100);
  CHECK(w.low < 0.5);
  CHECK(w.high > 0.5);
  CHECK(w.radius == doctest::Approx((w.high - w.low) / 2));
  // closed-form centre (p + z^2/2n) / (1 + z^2/n)
  const double z = 1.96, n = 100, p = 0.2;
  const auto v = wilson_interval(20, 100, z);
  CHECK((v.low + v.high) / 2 == doctest::Approx((p + z * z / (2 * n)) / (1 + z * z / n)));
  const auto zero = wilson_interval(0, 1000);
  CHECK(zero.low == 0.0);
  CHECK(zero.high > 0.0);
}

TEST_CASE("binomial upper tail against direct summation") {
  auto direct = [](unsigned n, double p, unsigned t) {
    double s = 0;
    for (unsigned k = t; k <= n; ++k) s += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                                                    std::lgamma(n - k + 1.0) + k * std::log(p) +
                                                    (n - k) * std::log1p(-p));
    return s;
  };
  for (unsigned t : {0U, 3U, 10U, 17U, 20U})
    CHECK(binomial_upper_tail(20, 0.3, t) == doctest::Approx(direct(20, 0.3, t)).epsilon(1e-9));
}

TEST_CASE("every SIMD kernel matches the scalar reference") {
  const auto& ref = simd::scalar_kernels();
  Rng rng(5);
  for (const auto* k : simd::available_kernels()) {
    CAPTURE(k->name);
    for (std::size_t n : {0, 1, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 65, 130}) {
      std::vector<simd::Word> a(n), b(n);
      for (auto& w : a) w = rng.next_u64();
      for (auto& w : b) w = rng.next_u64() & rng.next_u64();
      CHECK(k->popcount(a.data(), n) == ref.popcount(a.data(), n));
      CHECK(k->and_popcount(a.data(), b.data(), n) == ref.and_popcount(a.data(), b.data(), n));
      CHECK(k->andnot_popcount(a.data(), b.data(), n) == ref.andnot_popcount(a.data(), b.data(), n));
      auto x = a, y = a;
      k->and_into(x.data(), b.data(), n);
      ref.and_into(y.data(), b.data(), n);
      CHECK(x == y);
      x = a, y = a;
      k->andnot_into(x.data(), b.data(), n);
      ref.andnot_into(y.data(), b.data(), n);
      CHECK(x == y);
    }
  }
}

TEST_CASE("kernel selection by name") {
  const std::string before(simd::active_kernels().name);
  CHECK(simd::select_kernels("scalar"));
  CHECK(simd::active_kernels().name == "scalar");
  CHECK_FALSE(simd::select_kernels("no-such-kernel"));
  CHECK(simd::select_kernels(before));
}

TEST_CASE("bitvec algebra agrees with a std::set model") {
  Rng rng(8);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 1 + rng.uniform_below(200);
    BitVec a(n), b(n);
    std::set<std::uint32_t> sa, sb;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (rng.bernoulli(0.4)) a.set(i), sa.insert(i);
      if (rng.bernoulli(0.6)) b.set(i), sb.insert(i);
    }
    std::set<std::uint32_t> inter, diff;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(inter, inter.end()));
    std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(diff, diff.end()));
    CHECK(a.count() == sa.size());
    CHECK(a.and_count(b) == inter.size());
    BitVec c = a;
    c &= b;
    CHECK(c.to_indices() == std::vector<std::uint32_t>(inter.begin(), inter.end()));
    BitVec d = a;
    d.subtract(b);
    CHECK(d.to_indices() == std::vector<std::uint32_t>(diff.begin(), diff.end()));
    CHECK(c.is_subset_of(a));
    CHECK(a.complement().count() == n - sa.size());
    if (!sa.empty()) {
      CHECK(a.find_first() == *sa.begin());
      CHECK(a.select(sa.size() - 1) == *sa.rbegin());
    }
  }
}
