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

#include "lslab/solvers.hpp"

#include <bit>
#include <cmath>

namespace lslab {

namespace {

SolverResult finish(const Graph& g, CachedOracle& values, Vertex out,
                    std::uint64_t moves) {
  SolverResult r;
  r.output = out;
  r.moves = moves;
  r.queries = values.oracle().count();
  // Checked against the instance itself, outside the query budget.
  r.verified = is_local_min(g, [&](Vertex v) { return values.oracle().instance().value(v); }, out);
  r.transcript = &values.oracle().log();
  return r;
}

}  // namespace

std::uint64_t CachedOracle::operator()(Vertex v) {
  auto it = cache_.find(v);
  if (it != cache_.end()) return it->second;
  const std::uint64_t value = oracle_->query(v).value;
  cache_.emplace(v, value);
  return value;
}

SolverResult steepest_descent(const Graph& g, QueryOracle& oracle, Vertex start) {
  CachedOracle values(oracle);
  return steepest_descent(g, values, start);
}

SolverResult steepest_descent(const Graph& g, CachedOracle& values, Vertex start) {
  g.check(start);
  Vertex cur = start;
  std::uint64_t fcur = values(cur);
  std::uint64_t moves = 0;
  std::vector<Vertex> nbrs;
  for (;;) {
    g.neighbors(cur, nbrs);
    Vertex best = cur;
    std::uint64_t fbest = fcur;
    // Neighbors arrive in ascending index order, so strict < keeps the lowest
    // index among equal values.
    for (Vertex w : nbrs) {
      const std::uint64_t fw = values(w);
      if (fw < fbest) {
        best = w;
        fbest = fw;
      }
    }
    if (best == cur) break;
    cur = best;
    fcur = fbest;
    ++moves;
  }
  return finish(g, values, cur, moves);
}

std::uint64_t default_sample_count(const Graph& g) {
  const double x = static_cast<double>(g.size()) * std::max<double>(g.max_degree(), 1.0);
  auto s = static_cast<std::uint64_t>(std::ceil(std::sqrt(x)));
  // Guard against rounding at perfect squares.
  while (s > 1 && (s - 1) * (s - 1) >= x) --s;
  return std::max<std::uint64_t>(s, 1);
}

SolverResult random_sample_descent(const Graph& g, QueryOracle& oracle, Rng& rng,
                                   std::optional<std::uint64_t> samples) {
  const std::uint64_t k = samples.value_or(default_sample_count(g));
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "random_sample_descent: samples = 0");
  CachedOracle values(oracle);
  Vertex best = 0;
  std::uint64_t fbest = 0;
  bool any = false;
  auto consider = [&](Vertex v) {
    const std::uint64_t fv = values(v);
    if (!any || fv < fbest || (fv == fbest && v < best)) {
      best = v;
      fbest = fv;
      any = true;
    }
  };
  if (k >= g.size()) {
    for (Vertex v : g.vertices()) consider(v);
  } else {
    for (std::uint64_t s = 0; s < k; ++s) consider(rng.below(g.size()));
  }
  return steepest_descent(g, values, best);
}

std::uint64_t line_query_cap(std::uint64_t n) {
  const std::uint64_t log2_ceil = n <= 1 ? 0 : std::bit_width(n - 1);
  return 2 * log2_ceil + 3;
}

SolverResult line_binary_search(const Graph& g, QueryOracle& oracle) {
  if (g.family() != Family::kLine) {
    throw Error(ErrorCode::kInvalidArgument, "line_binary_search: graph is not a line");
  }
  CachedOracle values(oracle);
  // Invariant: f(lo-1) > f(lo) when lo > 0 and f(hi+1) >= f(hi) when
  // hi < N-1, so the minimum over [lo, hi] is a local minimum of the line.
  Vertex lo = 0;
  Vertex hi = g.size() - 1;
  while (lo < hi) {
    const Vertex mid = lo + (hi - lo) / 2;
    if (values(mid) <= values(mid + 1)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  values(lo);
  return finish(g, values, lo, 0);
}

QuantumCostModel quantum_cost_model(double n_vertices, double max_degree) {
  if (n_vertices < 1.0 || max_degree < 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "quantum_cost_model: need N, delta >= 1");
  }
  QuantumCostModel m;
  m.sample_size = std::cbrt(n_vertices * n_vertices * max_degree);
  m.expected_better = std::cbrt(n_vertices / max_degree);
  m.headline_cost = std::cbrt(n_vertices) * std::pow(max_degree, 1.0 / 6.0);
  m.descent_cost = m.expected_better * std::sqrt(max_degree);
  m.verification_cost = std::log2(std::max(n_vertices / max_degree, 1.0)) *
                        std::sqrt(max_degree);
  return m;
}

nlohmann::json to_json(const SolverResult& r) {
  return {{"output", r.output},
          {"queries", r.queries},
          {"moves", r.moves},
          {"verified", r.verified}};
}

nlohmann::json to_json(const QuantumCostModel& m) {
  return {{"kind", "analytic cost model (not a simulation)"},
          {"sample_size", m.sample_size},
          {"expected_better_than_v0", m.expected_better},
          {"headline_cost", m.headline_cost},
          {"descent_cost", m.descent_cost},
          {"verification_cost", m.verification_cost}};
}

SolverResult run_solver(const std::string& name, const Graph& g, QueryOracle& oracle,
                        Rng& rng, std::optional<Vertex> start,
                        std::optional<std::uint64_t> samples) {
  if (name == "steepest-descent") {
    return steepest_descent(g, oracle, start.value_or(rng.below(g.size())));
  }
  if (name == "random-sample-descent") return random_sample_descent(g, oracle, rng, samples);
  if (name == "line-binary-search") return line_binary_search(g, oracle);
  throw Error(ErrorCode::kConfig, "unknown solver \"" + name + "\"");
}

}  // namespace lslab
