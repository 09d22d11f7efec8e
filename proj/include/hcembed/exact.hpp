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

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hcembed {

mpq_class rational_pow(const mpq_class& x, unsigned e);
mpq_class rational_u64(std::uint64_t num, std::uint64_t den = 1);
/// Exact value of a finite double.
mpq_class rational_from_double(double x);
mpz_class integer_u64(std::uint64_t x);
std::string rational_str(const mpq_class& x);

}  // namespace hcembed
