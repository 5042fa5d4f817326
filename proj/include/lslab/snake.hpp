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

#ifndef LSLAB_SNAKE_HPP_
#define LSLAB_SNAKE_HPP_

// Snake distributions on the hypercube and the grid.
//
// A snake is a path x_0 .. x_{L-1} whose head x_{L-1} = h is fixed. Snakes
// are generated from the head towards the tail:
//
//  * hypercube (coordinate loop): the step from index t to t-1 keeps the
//    vertex or flips bit (t mod n), each with probability 1/2;
//  * grid (straight lines): index t belongs to block T = t / side, whose
//    direction is T mod d. A block starts at index side*(T+1) (the head for
//    the top block), draws a uniform target for its coordinate, and walks one
//    unit per index towards it down to index side*T, stalling once there.
//
// The instance built from a snake has its unique local minimum at x_0.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lslab/common.hpp"
#include "lslab/graph.hpp"
#include "lslab/instance.hpp"
#include "json.hpp"

namespace lslab {

struct Snake {
  GraphKind kind;
  Vertex head = 0;
  std::vector<Vertex> path;  // path.back() == head

  std::uint64_t length() const { return path.size(); }
  friend bool operator==(const Snake&, const Snake&) = default;
};

// Throws kInvalidArgument unless the snake is a valid path ending at its head.
void validate_snake(const Graph& g, const Snake& x);

// Continues the coordinate loop from path[j] down to index 0, overwriting
// path[0 .. j-1]. The step from t to t-1 flips bit (t mod n) iff coin().
template <typename CoinFn>
void regrow_coordinate_loop(std::span<Vertex> path, std::uint64_t j,
                            std::uint32_t n, CoinFn&& coin) {
  for (std::uint64_t t = j; t > 0; --t) {
    Vertex v = path[t];
    if (n > 0 && coin()) v ^= Vertex{1} << (t % n);
    path[t - 1] = v;
  }
}

Snake sample_hypercube_snake(std::uint32_t n, Vertex h, std::uint64_t length, Rng& rng);
Snake sample_grid_snake(std::uint32_t d, std::uint32_t side, Vertex h,
                        std::uint64_t length, Rng& rng);
// Dispatches on the graph family (hypercube or grid).
Snake sample_snake(const Graph& g, Vertex h, std::uint64_t length, Rng& rng);

// All 2^(L-1) hypercube snakes with head h. Snake k uses bit (t-1) of k as
// the coin of the step from t to t-1, so every snake has probability
// 2^-(L-1).
std::vector<Snake> enumerate_hypercube_snakes(std::uint32_t n, Vertex h,
                                              std::uint64_t length);

// Block that generates index j-1 of a grid snake whose indices >= j are
// known, together with the targets still consistent with what was observed.
struct GridBlockState {
  std::uint64_t block = 0;        // T
  std::uint32_t direction = 0;    // T mod d
  std::uint64_t start_index = 0;  // side*(T+1), or L-1 for the top block
  std::uint32_t start = 0;        // coordinate value at start_index, 1-based
  std::uint32_t target_lo = 1;    // consistent targets [lo, hi], 1-based
  std::uint32_t target_hi = 1;
  bool stalled = false;           // observed line already stopped moving
  std::uint64_t observed_index = 0;  // j

  // No step of this block has been observed yet.
  bool fresh() const { return start_index == observed_index; }
};

// Requires 1 <= j < L.
GridBlockState grid_block_state(const Graph& g, std::span<const Vertex> path,
                                std::uint64_t j);

// Regrows path[0 .. j-1] of a grid snake from its known suffix. `choose(lo,
// hi)` must return a target in [lo, hi]; the sampler draws it uniformly,
// which is the exact conditional of the generating process.
template <typename ChooseFn>
void regrow_grid_lines(const Graph& g, std::span<Vertex> path, std::uint64_t j,
                       ChooseFn&& choose) {
  const std::uint64_t side = g.kind().side;
  std::uint64_t t = j;
  while (t > 0) {
    GridBlockState st = grid_block_state(g, path, t);
    const std::uint32_t target = choose(st.target_lo, st.target_hi) - 1;
    const std::uint64_t stride = g.stride(st.direction);
    Vertex cur = path[t];
    const std::uint64_t block_end = side * st.block;
    for (std::uint64_t u = t; u > block_end; --u) {
      const std::uint32_t c = g.grid_coordinate(cur, st.direction);
      if (c < target) {
        cur += stride;
      } else if (c > target) {
        cur -= stride;
      }
      path[u - 1] = cur;
    }
    t = block_end;
  }
}

// Outcome of the snake flicking its tail: indices >= j are kept, the rest is
// redrawn from the generating process conditioned on that suffix.
struct FlickResult {
  std::uint64_t j = 0;
  Snake y;
  std::vector<Vertex> shared;  // S_{X,Y}, ascending
  bool agree = false;          // X and Y intersect exactly in S_{X,Y}
};

// S_{X,Y}: common vertices whose first occurrence index is the same in both
// snakes. `agree` is the event that every common vertex is in it.
// Which occurrence of a revisited vertex defines its index. kTailSide is
// min{t : x_t = v}, the index the instance f_X uses. kHeadSide is
// max{t : x_t = v}, the first visit when walking from the head; it is kept as
// a diagnostic only.
enum class FirstVisit { kTailSide, kHeadSide };

struct SnakeComparison {
  std::vector<Vertex> shared;
  bool agree = false;
};
SnakeComparison compare_snakes(const Snake& x, const Snake& y,
                               FirstVisit rule = FirstVisit::kTailSide);

FlickResult flick_tail(const Graph& g, const Snake& x, Rng& rng);
FlickResult flick_tail_at(const Graph& g, const Snake& x, std::uint64_t j, Rng& rng);

// Least k such that x and v agree outside the cyclic coordinate window
// {i, i-1, ..., i-k+1}.
std::uint32_t delta_scan(const Graph& g, Vertex x, Vertex v, std::uint32_t i);

// Coordinate index used at path position t: t mod n on the hypercube,
// (t / side) mod d on the grid.
std::uint32_t scan_index(const Graph& g, std::uint64_t t);

enum class CheckMode { kExact, kSampled };

struct SparsenessReport {
  bool sparse = true;
  double c = 3.0;
  Vertex worst_vertex = 0;
  std::uint32_t worst_k = 0;
  std::uint64_t worst_count = 0;
  double worst_threshold = 0.0;
  std::vector<double> expected;  // mu_k for k = 0..K
  std::uint64_t vertices_checked = 0;
};

// Bound on |{t : delta(x_t, v, scan_index(t)) = k}| for a sparse snake.
double sparseness_threshold(const Graph& g, std::uint64_t length, double c,
                            std::uint32_t k);

// Exact mode scans every vertex (N * L must fit the enumeration cap);
// sampled mode checks `sample_count` uniformly drawn vertices.
SparsenessReport sparseness_check(const Graph& g, const Snake& x, double c,
                                  CheckMode mode, std::uint64_t sample_count = 0,
                                  Rng* rng = nullptr);

struct GoodnessEstimate {
  double p_agree = 0.0;   // Pr_{j,Y}[X and Y intersect exactly in S_{X,Y}]
  double p_agree_head_side = 0.0;  // same event under FirstVisit::kHeadSide
  double eps_hat = 0.0;   // max_v Pr_{j,Y}[v in {y_0, ..., y_j}]
  Vertex eps_witness = 0;
  std::uint64_t flicks = 0;  // 0 in exact mode

  bool good(double eps) const { return p_agree >= 0.9 && eps_hat <= eps; }
};

// Exact mode enumerates every regrowth for every j (hypercube L <= 20, or
// grids within the enumeration cap); Monte Carlo mode performs `trials`
// flicks.
GoodnessEstimate goodness_estimate(const Graph& g, const Snake& x,
                                   std::uint64_t trials, Rng& rng, CheckMode mode);

// Visits every regrowth of x below j with its exact probability.
void enumerate_regrowths(
    const Graph& g, const Snake& x, std::uint64_t j,
    const std::function<void(std::span<const Vertex>, double)>& visit,
    std::uint64_t cap = enumeration_cap());

// f(v) = first index of v on the path, dist(v, h) + L off the path.
Instance snake_instance(const Graph& g, const Snake& x);

// Exact law of x_0 for a snake of length gap + 1 with head `start`.
std::vector<double> generating_distribution(const Graph& g, Vertex start,
                                            std::uint64_t gap);
// max_v |Pr[x_0 = v] - 1/N| for that law.
double mixing_check(const GraphKind& kind, Vertex start, std::uint64_t gap);

nlohmann::json to_json(const Snake& x);
Snake snake_from_json(const nlohmann::json& j);

}  // namespace lslab

#endif  // LSLAB_SNAKE_HPP_
