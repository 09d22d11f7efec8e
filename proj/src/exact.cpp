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

#include "hcembed/exact.hpp"

#include <cmath>

#include "hcembed/errors.hpp"

namespace hcembed {

mpz_class integer_u64(std::uint64_t x) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof x, 0, 0, &x);
  return z;
}

mpq_class rational_u64(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw InputError("zero denominator");
  mpq_class q(integer_u64(num), integer_u64(den));
  q.canonicalize();
  return q;
}

mpq_class rational_pow(const mpq_class& x, unsigned e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), e);
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

mpq_class rational_from_double(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite value has no exact rational form");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

std::string rational_str(const mpq_class& x) { return x.get_str(); }

}  // namespace hcembed
