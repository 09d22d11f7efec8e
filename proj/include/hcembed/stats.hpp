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

namespace hcembed {

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
  double radius = 0.5;  // half-width
};

/// Wilson score interval for hits successes out of n trials (z = 1.96 is 95%).
WilsonInterval wilson_interval(std::uint64_t hits, std::uint64_t n, double z = 1.96);

/// Standard error of a Bernoulli proportion estimate.
double proportion_stderr(double p_hat, std::uint64_t n);

/// Upper tail P(X >= t) of Binomial(n, p), computed in log space.
double binomial_upper_tail(std::uint64_t n, double p, std::uint64_t t);

}  // namespace hcembed
