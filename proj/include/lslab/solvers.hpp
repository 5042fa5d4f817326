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

#ifndef LSLAB_SOLVERS_HPP_
#define LSLAB_SOLVERS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lslab/common.hpp"
#include "lslab/graph.hpp"
#include "lslab/instance.hpp"
#include "json.hpp"

namespace lslab {

struct SolverResult {
  Vertex output = 0;
  std::uint64_t queries = 0;
  std::uint64_t moves = 0;   // descent steps taken
  bool verified = false;     // output passed is_local_min
  const std::vector<std::pair<Vertex, std::uint64_t>>* transcript = nullptr;
};

// Oracle front end that serves repeated queries from the transcript, so each
// vertex is charged once per run.
class CachedOracle {
 public:
  explicit CachedOracle(QueryOracle& oracle) : oracle_(&oracle) {}

  std::uint64_t operator()(Vertex v);
  bool known(Vertex v) const { return cache_.contains(v); }
  QueryOracle& oracle() { return *oracle_; }

 private:
  QueryOracle* oracle_;
  std::unordered_map<Vertex, std::uint64_t> cache_;
};

// Moves to the smallest-valued neighbor (ties by lower index) until the
// current vertex is a local minimum.
SolverResult steepest_descent(const Graph& g, QueryOracle& oracle, Vertex start);
SolverResult steepest_descent(const Graph& g, CachedOracle& values, Vertex start);

// ceil(sqrt(N * delta)).
std::uint64_t default_sample_count(const Graph& g);

// Samples vertices uniformly (every vertex once when samples >= N), then
// descends from the best one.
SolverResult random_sample_descent(const Graph& g, QueryOracle& oracle, Rng& rng,
                                   std::optional<std::uint64_t> samples = std::nullopt);

// Halving search on a line: compare the two middle vertices and keep the half
// holding the smaller one. At most 2*ceil(log2 N) + 3 queries.
SolverResult line_binary_search(const Graph& g, QueryOracle& oracle);

std::uint64_t line_query_cap(std::uint64_t n);

// Analytic cost of the Grover-based local search; never simulated.
struct QuantumCostModel {
  double sample_size = 0.0;        // N^(2/3) delta^(1/3)
  double expected_better = 0.0;    // (N/delta)^(1/3)
  double headline_cost = 0.0;      // N^(1/3) delta^(1/6)
  double descent_cost = 0.0;       // (N/delta)^(1/3) sqrt(delta)
  double verification_cost = 0.0;  // log(N/delta) sqrt(delta)
};
QuantumCostModel quantum_cost_model(double n_vertices, double max_degree);

nlohmann::json to_json(const SolverResult& r);
nlohmann::json to_json(const QuantumCostModel& m);

// Runs a solver by name: "steepest-descent", "random-sample-descent",
// "line-binary-search".
SolverResult run_solver(const std::string& name, const Graph& g, QueryOracle& oracle,
                        Rng& rng, std::optional<Vertex> start,
                        std::optional<std::uint64_t> samples);

}  // namespace lslab

#endif  // LSLAB_SOLVERS_HPP_
