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

#ifndef LSLAB_COMMON_HPP_
#define LSLAB_COMMON_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace lslab {

// Canonical vertex index in [0, N).
using Vertex = std::uint64_t;

// Exact arithmetic for every adversary quantity.
using Rational = mpq_class;

enum class ErrorCode {
  kInvalidArgument = 1,
  kInvalidVertex = 2,
  kBudgetExceeded = 3,
  kDegenerateRelation = 4,
  kIo = 5,
  kConfig = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Default cap on exhaustive enumerations (2^22). The LSLAB_BUDGET
// environment variable, when set to a positive integer, replaces it.
std::uint64_t enumeration_cap();

// Throws kBudgetExceeded when `work` exceeds `cap`.
void require_budget(std::uint64_t work, std::uint64_t cap, const char* what);

// SplitMix64 finalizer; used to derive independent substreams.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for trial `index` of an experiment seeded with `seed`. Depends only on
// the pair, so results do not depend on how trials are scheduled.
constexpr std::uint64_t substream_seed(std::uint64_t seed,
                                       std::uint64_t index) noexcept {
  return mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL));
}

// Random stream handed explicitly to every sampler.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng for_trial(std::uint64_t seed, std::uint64_t index) {
    return Rng(substream_seed(seed, index));
  }

  std::uint64_t bits() { return engine_(); }

  bool coin() {
    if (coins_left_ == 0) {
      coin_word_ = engine_();
      coins_left_ = 64;
    }
    bool c = coin_word_ & 1u;
    coin_word_ >>= 1;
    --coins_left_;
    return c;
  }

  // Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
    return dist(engine_);
  }

  // Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    std::uniform_int_distribution<std::uint64_t> dist(lo, hi);
    return dist(engine_);
  }

  double unit() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t coin_word_ = 0;
  int coins_left_ = 0;
};

std::string to_string(const Rational& q);
// Nearest double (mpq get_d truncates toward zero).
double to_double(const Rational& q);

}  // namespace lslab

#endif  // LSLAB_COMMON_HPP_
