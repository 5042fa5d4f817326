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

#include "lslab/instance.hpp"

#include <limits>

namespace lslab {

Instance::Instance(Graph graph, std::vector<std::uint64_t> values)
    : graph_(std::move(graph)) {
  if (values.size() != graph_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "instance: value count " + std::to_string(values.size()) +
                    " does not match N = " + std::to_string(graph_.size()));
  }
  dense_ = std::make_shared<const std::vector<std::uint64_t>>(std::move(values));
}

Instance::Instance(Graph graph, ValueRule rule)
    : graph_(std::move(graph)), rule_(std::move(rule)) {
  if (!rule_) throw Error(ErrorCode::kInvalidArgument, "instance: empty value rule");
}

const std::vector<std::uint64_t>& Instance::values() const {
  static const std::vector<std::uint64_t> kEmpty;
  return dense_ ? *dense_ : kEmpty;
}

void Instance::set_minimum(Vertex v) {
  graph_.check(v);
  minimum_ = v;
}

Instance Instance::with_answer_bit(int bit) const {
  if (!minimum_) {
    throw Error(ErrorCode::kInvalidArgument,
                "decision_wrap: instance has no designated minimum");
  }
  if (bit != 0 && bit != 1) {
    throw Error(ErrorCode::kInvalidArgument, "decision_wrap: bit must be 0 or 1");
  }
  Instance out = *this;
  out.answer_bit_ = bit;
  return out;
}

QueryAnswer QueryOracle::query(Vertex v) {
  instance_->graph().check(v);
  QueryAnswer a;
  a.value = instance_->value(v);
  if (instance_->answer_bit() && instance_->minimum() == v) {
    a.bit = instance_->answer_bit();
  }
  log_.emplace_back(v, a.value);
  return a;
}

bool is_local_min(const Instance& inst, Vertex v) {
  return is_local_min(inst.graph(), [&](Vertex u) { return inst.value(u); }, v);
}

std::vector<Vertex> brute_force_minima(const Graph& g, const ValueRule& f,
                                       std::uint64_t cap) {
  require_budget(g.size(), cap, "brute_force_minima");
  std::vector<Vertex> out;
  std::vector<Vertex> nbrs;
  for (Vertex v : g.vertices()) {
    const std::uint64_t fv = f(v);
    g.neighbors(v, nbrs);
    bool minimal = true;
    for (Vertex w : nbrs) {
      if (f(w) < fv) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(v);
  }
  return out;
}

std::vector<Vertex> brute_force_minima(const Instance& inst, std::uint64_t cap) {
  if (inst.materialized()) {
    const auto& vals = inst.values();
    return brute_force_minima(inst.graph(), [&](Vertex v) { return vals[v]; }, cap);
  }
  return brute_force_minima(inst.graph(), [&](Vertex v) { return inst.value(v); },
                            cap);
}

Instance staircase_instance(const Graph& g, Vertex v, Rng& rng) {
  g.check(v);
  const std::vector<Vertex> nbrs = g.neighbors(v);
  if (nbrs.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "staircase_instance: vertex " + std::to_string(v) + " is isolated");
  }
  const Vertex w = nbrs[rng.below(nbrs.size())];
  // Off N[v], dist(x, N[v]) = dist(x, v) - 1 in any connected graph, so
  // f(x) = 2 + dist(x, v).
  auto rule = [g, v, w](Vertex x) -> std::uint64_t {
    if (x == w) return 1;
    if (x == v) return 2;
    const std::uint64_t d = g.distance(x, v);
    return d == 1 ? 3 : 2 + d;
  };
  Instance inst = [&] {
    if (g.size() <= kMaterializeLimit) {
      std::vector<std::uint64_t> values(g.size());
      for (Vertex x : g.vertices()) values[x] = rule(x);
      return Instance(g, std::move(values));
    }
    return Instance(g, rule);
  }();
  inst.set_minimum(w);
  inst.meta() = {{"generator", "staircase"},
                 {"center", v},
                 {"unique_minimum", true}};
  return inst;
}

Instance hitting_time_instance(const Graph& g, Rng& rng, std::uint64_t step_budget) {
  require_budget(g.size(), enumeration_cap(), "hitting_time_instance");
  constexpr std::uint64_t kUnvisited = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> hit(g.size(), kUnvisited);
  const Vertex start = rng.below(g.size());
  Vertex cur = start;
  hit[cur] = 0;
  std::uint64_t visited = 1;
  std::uint64_t t = 0;
  std::vector<Vertex> nbrs;
  while (visited < g.size()) {
    if (t == step_budget) {
      throw Error(ErrorCode::kBudgetExceeded,
                  "hitting_time_instance: cover walk exceeded " +
                      std::to_string(step_budget) + " steps");
    }
    g.neighbors(cur, nbrs);
    if (nbrs.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "hitting_time_instance: graph is not connected");
    }
    cur = nbrs[rng.below(nbrs.size())];
    ++t;
    if (hit[cur] == kUnvisited) {
      hit[cur] = t;
      ++visited;
    }
  }
  Instance inst(g, std::move(hit));
  inst.set_minimum(start);
  inst.meta() = {{"generator", "hitting-time"},
                 {"start", start},
                 {"cover_steps", t},
                 {"unique_minimum", true}};
  return inst;
}

Instance decision_wrap(const Instance& inst, int bit) {
  return inst.with_answer_bit(bit);
}

nlohmann::json to_json(const Instance& inst) {
  const Graph& g = inst.graph();
  require_budget(g.size(), enumeration_cap(), "instance serialization");
  nlohmann::json j;
  j["graph"] = to_json(g.kind());
  if (inst.materialized()) {
    j["values"] = inst.values();
  } else {
    std::vector<std::uint64_t> values(g.size());
    for (Vertex v : g.vertices()) values[v] = inst.value(v);
    j["values"] = std::move(values);
  }
  j["minimum"] = inst.minimum() ? nlohmann::json(*inst.minimum()) : nlohmann::json();
  j["answer_bit"] =
      inst.answer_bit() ? nlohmann::json(*inst.answer_bit()) : nlohmann::json();
  j["meta"] = inst.meta();
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  try {
    Graph g(graph_kind_from_json(j.at("graph")));
    Instance inst(std::move(g), j.at("values").get<std::vector<std::uint64_t>>());
    if (j.contains("minimum") && !j.at("minimum").is_null()) {
      inst.set_minimum(j.at("minimum").get<Vertex>());
    }
    if (j.contains("meta") && j.at("meta").is_object()) inst.meta() = j.at("meta");
    if (j.contains("answer_bit") && !j.at("answer_bit").is_null()) {
      nlohmann::json meta = inst.meta();
      inst = inst.with_answer_bit(j.at("answer_bit").get<int>());
      inst.meta() = std::move(meta);
    }
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("instance JSON: ") + e.what());
  }
}

}  // namespace lslab
