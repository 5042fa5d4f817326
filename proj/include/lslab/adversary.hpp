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

#ifndef LSLAB_ADVERSARY_HPP_
#define LSLAB_ADVERSARY_HPP_

// Exact adversary quantities on finite input families.
//
// A relation system pairs a set A of 0-inputs with a set B of 1-inputs
// (each a total map position -> symbol) through nonnegative weights R(A, B).
// For an input and a position x, theta is the fraction of the input's
// relation weight carried by partners that differ from it at x. The
// geometric-mean bound (quantum) and the min bound (randomized) maximize
// sqrt(theta_A theta_B) and min(theta_A, theta_B) over related pairs and the
// positions where they differ. Everything here is exact rational arithmetic;
// the geometric mean is kept as its square.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lslab/common.hpp"
#include "lslab/snake.hpp"
#include "json.hpp"

namespace lslab {

using Symbol = std::int64_t;
using InputTable = std::vector<std::vector<Symbol>>;

struct RelationEntry {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  Rational weight;
};

class RelationSystem {
 public:
  // Entries with zero weight are dropped. Throws kDegenerateRelation when an
  // input has zero total weight, kInvalidArgument on shape errors or
  // negative weights.
  RelationSystem(std::size_t positions, InputTable a_inputs, InputTable b_inputs,
                 std::vector<RelationEntry> entries);

  std::size_t positions() const { return positions_; }
  std::size_t a_count() const { return a_inputs_.size(); }
  std::size_t b_count() const { return b_inputs_.size(); }
  const InputTable& a_inputs() const { return a_inputs_; }
  const InputTable& b_inputs() const { return b_inputs_; }

  // Nonzero entries, sorted by (a, b).
  const std::vector<RelationEntry>& entries() const { return entries_; }
  // Entry indices of row a / column b.
  std::span<const std::uint32_t> row(std::uint32_t a) const;
  std::span<const std::uint32_t> column(std::uint32_t b) const;

  Rational weight(std::uint32_t a, std::uint32_t b) const;
  const Rational& mass_a(std::uint32_t a) const { return mass_a_[a]; }
  const Rational& mass_b(std::uint32_t b) const { return mass_b_[b]; }
  const Rational& total() const { return total_; }

 private:
  std::size_t positions_;
  InputTable a_inputs_;
  InputTable b_inputs_;
  std::vector<RelationEntry> entries_;
  std::vector<std::uint32_t> row_start_, col_start_, row_entries_, col_entries_;
  std::vector<Rational> mass_a_, mass_b_;
  Rational total_;
};

enum class Side { kA, kB };

// theta(input, x); exact.
Rational theta(const RelationSystem& sys, Side side, std::uint32_t input,
               std::uint32_t position);

struct AdversaryWitness {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint32_t position = 0;
};

struct AdversaryReport {
  Rational upsilon_geom_squared;
  Rational upsilon_min;
  AdversaryWitness geom_witness;
  AdversaryWitness min_witness;
  double upsilon_geom = 0.0;
  Rational randomized_bound;     // 1 / (5 upsilon_min)
  double quantum_bound = 0.0;    // 1 / upsilon_geom, up to a constant
};

// Throws kInvalidArgument when no related pair differs anywhere.
AdversaryReport upsilon_bounds(const RelationSystem& sys);

// A = {sigma : sigma^-1(1) <= N/2}, B = the rest; R = 1 when the two
// permutations differ exactly at their positions of 1.
RelationSystem permutation_inversion_system(std::uint32_t n);

// Snake relation on the hypercube with head 0: every snake X of D_{0,L}
// gives f_X (answer bit 0) in A and g_X (bit 1) in B, and
// R(f_X, g_Y) = w(X, Y) when X and Y intersect consistently, else 0, with
// w(X, Y) = p(X)/L * sum_j q_j(X, Y).
struct SnakeRelation {
  std::vector<Snake> snakes;
  std::vector<Rational> probability;           // p(X)
  std::vector<std::vector<Rational>> w;        // w(X, Y), dense
  std::vector<std::vector<bool>> consistent;   // E(X, Y)
  RelationSystem system;
};

// q_j(X, Y): probability that regrowing X below j yields Y.
Rational regrowth_probability(const Snake& x, const Snake& y, std::uint64_t j);

SnakeRelation snake_relation_system(std::uint32_t n, std::uint64_t length);

// Symbol of vertex v in the answer-bit instance: 3 f(v), plus 1 + bit at the
// designated minimum.
Symbol answer_symbol(std::uint64_t value, bool is_minimum, int bit);

// Weighted min-degree subgraph: repeatedly drops the lowest index i with
// sum_{j in U} w(i, j) < r p(i) / 2. Returns U (ascending, nonempty).
std::vector<std::size_t> subgraph_prune(const std::vector<Rational>& p,
                                        const std::vector<std::vector<Rational>>& w,
                                        const Rational& r);

struct TranscriptEntry {
  std::uint32_t position = 0;
  Symbol symbol = 0;
};

struct PolicyAction {
  bool answer = false;      // true: halt with `value` as the answer bit
  std::uint32_t value = 0;  // position to query, or the answer bit

  static PolicyAction query(std::uint32_t x) { return {false, x}; }
  static PolicyAction halt(std::uint32_t bit) { return {true, bit}; }
};

// Deterministic adaptive query policy.
using QueryPolicy = std::function<PolicyAction(std::span<const TranscriptEntry>)>;

struct ProgressTrace {
  std::vector<Rational> progress;    // S^(t), t = 0..T
  std::vector<Rational> increments;  // Delta S^(t), t = 1..T
  std::vector<std::uint32_t> winners_a;  // W_A: A-inputs answered 0
  std::vector<std::uint32_t> winners_b;  // W_B: B-inputs answered 1
  Rational success_weight_a;
  Rational success_weight_b;
  Rational total;                    // M
  Rational upsilon_min;
  Rational step_bound;               // 3 upsilon_min M

  bool nondecreasing() const;
  bool within_step_bound() const;
  // Success probability under the mixture of M(A)/M and M(B)/M.
  Rational success_probability() const;
};

// Runs `policy` for at most `depth` queries on every input. A run that has
// not answered after `depth` queries counts as a failure.
ProgressTrace progress_trace(const RelationSystem& sys, const QueryPolicy& policy,
                             std::uint32_t depth);

nlohmann::json to_json(const AdversaryReport& rep);
nlohmann::json to_json(const ProgressTrace& trace);

// {"positions": P, "a_inputs": [[...]], "b_inputs": [[...]],
//  "relation": [[a, b, w], ...]} or "matrix": [[w...]...]; weights are
// integers, decimals, or "p/q" strings.
RelationSystem relation_system_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RelationSystem& sys);

Rational parse_rational(const nlohmann::json& j);

}  // namespace lslab

#endif  // LSLAB_ADVERSARY_HPP_
