//
// Copyright 2026 The lslab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "lslab/common.hpp"

#include <cmath>
#include <cstdlib>

namespace lslab {

std::uint64_t enumeration_cap() {
  constexpr std::uint64_t kDefault = std::uint64_t{1} << 22;
  const char* env = std::getenv("LSLAB_BUDGET");
  if (env == nullptr || *env == '\0') return kDefault;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return kDefault;
  return static_cast<std::uint64_t>(v);
}

void require_budget(std::uint64_t work, std::uint64_t cap, const char* what) {
  if (work > cap) {
    throw Error(ErrorCode::kBudgetExceeded,
                std::string(what) + ": work " + std::to_string(work) +
                    " exceeds budget " + std::to_string(cap) +
                    " (raise LSLAB_BUDGET to allow)");
  }
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) {
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  // Both parts exact in a double: one correctly rounded division.
  if (mpz_sizeinbase(num.get_mpz_t(), 2) <= 53 && mpz_sizeinbase(den.get_mpz_t(), 2) <= 53) {
    return num.get_d() / den.get_d();
  }
  // Otherwise take a ~120-bit integer quotient; strtod rounds its decimal form.
  const long shift = 120 - static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) +
                     static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  mpz_class scaled = num;
  if (shift >= 0) {
    scaled <<= static_cast<mp_bitcnt_t>(shift);
  } else {
    scaled >>= static_cast<mp_bitcnt_t>(-shift);  // only when num is huge
  }
  const mpz_class quot = scaled / den;
  return std::ldexp(std::strtod(quot.get_str().c_str(), nullptr), static_cast<int>(-shift));
}

}  // namespace lslab
