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

#include "hcembed/stats.hpp"

#include <cmath>

namespace hcembed {

WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t n, double z) {
  if (n == 0) return {};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  return {std::max(0.0, center - half), std::min(1.0, center + half), half};
}

double proportion_stderr(double p_hat, std::uint64_t n) {
  if (n == 0) return 1.0;
  return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
}

double binomial_upper_tail(std::uint64_t n, double p, std::uint64_t t) {
  if (t == 0) return 1.0;
  if (t > n) return 0.0;
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double ln_n1 = std::lgamma(static_cast<double>(n) + 1.0);
  double sum = 0.0;
  for (std::uint64_t k = t; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double term = ln_n1 - std::lgamma(kk + 1.0) - std::lgamma(static_cast<double>(n - k) + 1.0) +
                        kk * lp + static_cast<double>(n - k) * lq;
    sum += std::exp(term);
  }
  return sum;
}

}  // namespace hcembed
