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

#ifndef LSLAB_INSTANCE_HPP_
#define LSLAB_INSTANCE_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lslab/common.hpp"
#include "lslab/graph.hpp"
#include "json.hpp"

namespace lslab {

using ValueRule = std::function<std::uint64_t(Vertex)>;

// Instances up to this many vertices are stored as a dense value array.
inline constexpr std::uint64_t kMaterializeLimit = std::uint64_t{1} << 22;

// A total value function f : V -> N over a graph, either materialized in
// canonical order or given as a pure rule. Copies share the value storage.
class Instance {
 public:
  Instance(Graph graph, std::vector<std::uint64_t> values);
  Instance(Graph graph, ValueRule rule);

  const Graph& graph() const { return graph_; }
  std::uint64_t value(Vertex v) const {
    return dense_ ? (*dense_)[v] : rule_(v);
  }
  bool materialized() const { return dense_ != nullptr; }
  // Dense values; empty for lazy instances.
  const std::vector<std::uint64_t>& values() const;

  // Designated local minimum, when the generator declares a unique one.
  const std::optional<Vertex>& minimum() const { return minimum_; }
  void set_minimum(Vertex v);

  const std::optional<int>& answer_bit() const { return answer_bit_; }

  nlohmann::json& meta() { return meta_; }
  const nlohmann::json& meta() const { return meta_; }

  // Copy carrying `bit` at the designated minimum.
  Instance with_answer_bit(int bit) const;

 private:
  Graph graph_;
  std::shared_ptr<const std::vector<std::uint64_t>> dense_;
  ValueRule rule_;
  std::optional<Vertex> minimum_;
  std::optional<int> answer_bit_;
  nlohmann::json meta_ = nlohmann::json::object();
};

struct QueryAnswer {
  std::uint64_t value = 0;
  std::optional<int> bit;
};

// Query-counting oracle over one instance. Single owner; not thread safe.
class QueryOracle {
 public:
  explicit QueryOracle(const Instance& instance) : instance_(&instance) {}

  QueryAnswer query(Vertex v);

  std::uint64_t count() const { return log_.size(); }
  const std::vector<std::pair<Vertex, std::uint64_t>>& log() const { return log_; }
  const Instance& instance() const { return *instance_; }

 private:
  const Instance* instance_;
  std::vector<std::pair<Vertex, std::uint64_t>> log_;
};

// f(v) <= f(w) for every neighbor w.
template <typename Values>
bool is_local_min(const Graph& g, Values&& f, Vertex v) {
  g.check(v);
  std::vector<Vertex> nbrs;
  g.neighbors(v, nbrs);
  const std::uint64_t fv = f(v);
  for (Vertex w : nbrs) {
    if (f(w) < fv) return false;
  }
  return true;
}

bool is_local_min(const Instance& inst, Vertex v);

// Every local minimum by full scan. Requires N <= `cap`.
std::vector<Vertex> brute_force_minima(const Graph& g, const ValueRule& f,
                                       std::uint64_t cap = enumeration_cap());
std::vector<Vertex> brute_force_minima(const Instance& inst,
                                       std::uint64_t cap = enumeration_cap());

// Unique local minimum at a uniformly chosen neighbor w of v:
// f(w)=1, f(v)=2, other neighbors 3, and 3 + dist(x, N[v]) beyond.
Instance staircase_instance(const Graph& g, Vertex v, Rng& rng);

// f(v) = first time a discrete unbiased walk from a uniform start visits v.
Instance hitting_time_instance(const Graph& g, Rng& rng,
                               std::uint64_t step_budget = 1'000'000'000ULL);

// Attaches the answer bit to the designated minimum.
Instance decision_wrap(const Instance& inst, int bit);

nlohmann::json to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

}  // namespace lslab

#endif  // LSLAB_INSTANCE_HPP_
