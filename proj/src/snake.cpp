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

#include "lslab/snake.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace lslab {

namespace {

constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

// Graphs up to this size get dense per-vertex scratch arrays.
constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 22;

void require_snake_family(const Graph& g, const char* what) {
  if (g.family() != Family::kHypercube && g.family() != Family::kGrid) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + ": snakes live on hypercubes and grids");
  }
}

// Per-vertex counters and stamps, dense for small graphs.
class VertexScratch {
 public:
  explicit VertexScratch(std::uint64_t n) : dense_(n <= kDenseLimit) {
    if (dense_) {
      stamp_.assign(n, 0);
      count_.assign(n, 0);
    }
  }

  // True the first time v is seen since the last new_round().
  bool first_visit(Vertex v) {
    if (dense_) {
      if (stamp_[v] == round_) return false;
      stamp_[v] = round_;
      return true;
    }
    return seen_.insert(v).second;
  }

  void new_round() {
    ++round_;
    if (!dense_) seen_.clear();
  }

  void add(Vertex v, double w) {
    if (dense_) {
      count_[v] += w;
    } else {
      sparse_count_[v] += w;
    }
  }

  // Largest accumulated weight, lowest vertex on ties.
  std::pair<Vertex, double> max() const {
    Vertex best = 0;
    double best_w = -1.0;
    if (dense_) {
      for (Vertex v = 0; v < count_.size(); ++v) {
        if (count_[v] > best_w) {
          best = v;
          best_w = count_[v];
        }
      }
    } else {
      for (const auto& [v, w] : sparse_count_) {
        if (w > best_w || (w == best_w && v < best)) {
          best = v;
          best_w = w;
        }
      }
    }
    return {best, std::max(best_w, 0.0)};
  }

 private:
  bool dense_;
  std::uint64_t round_ = 0;
  std::vector<std::uint64_t> stamp_;
  std::vector<double> count_;
  std::unordered_set<Vertex> seen_;
  std::unordered_map<Vertex, double> sparse_count_;
};

// First occurrence index of every vertex of a fixed snake X, used to test
// the event X ∩ Y = S_{X,Y} for many regrowths Y of X.
class FirstIndex {
 public:
  FirstIndex(const Graph& g, std::span<const Vertex> path, FirstVisit rule)
      : dense_(g.size() <= kDenseLimit) {
    if (dense_) first_.assign(g.size(), kAbsent);
    const std::uint64_t L = path.size();
    // The last write wins, so visit the preferred occurrence last.
    for (std::uint64_t s = 0; s < L; ++s) {
      const std::uint64_t t = rule == FirstVisit::kTailSide ? L - 1 - s : s;
      if (dense_) {
        first_[path[t]] = static_cast<std::uint32_t>(t);
      } else {
        sparse_[path[t]] = static_cast<std::uint32_t>(t);
      }
    }
  }

  std::uint32_t operator()(Vertex v) const {
    if (dense_) return first_[v];
    auto it = sparse_.find(v);
    return it == sparse_.end() ? kAbsent : it->second;
  }

 private:
  bool dense_;
  std::vector<std::uint32_t> first_;
  std::unordered_map<Vertex, std::uint32_t> sparse_;
};

// X ∩ Y = S_{X,Y}: every distinct vertex of Y either misses X or has the
// same first index in both.
bool intersect_consistently(const FirstIndex& first_x, std::span<const Vertex> y,
                            VertexScratch& scratch, FirstVisit rule) {
  scratch.new_round();
  const std::uint64_t L = y.size();
  for (std::uint64_t s = 0; s < L; ++s) {
    const std::uint64_t t = rule == FirstVisit::kTailSide ? s : L - 1 - s;
    if (!scratch.first_visit(y[t])) continue;
    const std::uint32_t fx = first_x(y[t]);
    if (fx != kAbsent && fx != t) return false;
  }
  return true;
}

void regrow(const Graph& g, std::span<Vertex> path, std::uint64_t j, Rng& rng) {
  if (g.family() == Family::kHypercube) {
    regrow_coordinate_loop(path, j, g.kind().bits, [&] { return rng.coin(); });
  } else {
    regrow_grid_lines(g, path, j, [&](std::uint32_t lo, std::uint32_t hi) {
      return static_cast<std::uint32_t>(rng.between(lo, hi));
    });
  }
}

}  // namespace

void validate_snake(const Graph& g, const Snake& x) {
  if (x.path.empty()) throw Error(ErrorCode::kInvalidArgument, "snake: empty path");
  if (x.path.back() != x.head) {
    throw Error(ErrorCode::kInvalidArgument, "snake: last vertex is not the head");
  }
  for (Vertex v : x.path) g.check(v);
  for (std::uint64_t t = 0; t + 1 < x.path.size(); ++t) {
    if (g.distance(x.path[t], x.path[t + 1]) > 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "snake: x_" + std::to_string(t) + " and x_" + std::to_string(t + 1) +
                      " are neither equal nor adjacent");
    }
  }
}

Snake sample_hypercube_snake(std::uint32_t n, Vertex h, std::uint64_t length, Rng& rng) {
  return sample_snake(Graph(GraphKind::hypercube(n)), h, length, rng);
}

Snake sample_grid_snake(std::uint32_t d, std::uint32_t side, Vertex h,
                        std::uint64_t length, Rng& rng) {
  return sample_snake(Graph(GraphKind::grid(d, side)), h, length, rng);
}

Snake sample_snake(const Graph& g, Vertex h, std::uint64_t length, Rng& rng) {
  require_snake_family(g, "sample_snake");
  g.check(h);
  if (length == 0) throw Error(ErrorCode::kInvalidArgument, "sample_snake: L must be >= 1");
  Snake x;
  x.kind = g.kind();
  x.head = h;
  x.path.assign(length, h);
  regrow(g, x.path, length - 1, rng);
  return x;
}

std::vector<Snake> enumerate_hypercube_snakes(std::uint32_t n, Vertex h,
                                              std::uint64_t length) {
  const Graph g(GraphKind::hypercube(n));
  g.check(h);
  if (length == 0) throw Error(ErrorCode::kInvalidArgument, "snake length must be >= 1");
  require_budget(length - 1, 62, "enumerate_hypercube_snakes");
  const std::uint64_t count = std::uint64_t{1} << (length - 1);
  require_budget(count, enumeration_cap(), "enumerate_hypercube_snakes");
  std::vector<Snake> out;
  out.reserve(count);
  for (std::uint64_t coins = 0; coins < count; ++coins) {
    Snake x;
    x.kind = g.kind();
    x.head = h;
    x.path.assign(length, h);
    regrow_coordinate_loop(std::span<Vertex>(x.path), length - 1, n,
                           [&, t = length - 1]() mutable {
                             return ((coins >> (--t)) & 1u) != 0;
                           });
    out.push_back(std::move(x));
  }
  return out;
}

GridBlockState grid_block_state(const Graph& g, std::span<const Vertex> path,
                                std::uint64_t j) {
  if (g.family() != Family::kGrid) {
    throw Error(ErrorCode::kInvalidArgument, "grid_block_state: not a grid");
  }
  const std::uint64_t length = path.size();
  if (j == 0 || j >= length) {
    throw Error(ErrorCode::kInvalidArgument, "grid_block_state: need 1 <= j < L");
  }
  const std::uint32_t side = g.kind().side;
  const std::uint32_t d = g.kind().dimension;
  GridBlockState st;
  st.block = (j - 1) / side;
  st.direction = static_cast<std::uint32_t>(st.block % d);
  const std::uint64_t top = (length - 1) / side;
  st.start_index = st.block == top ? length - 1 : side * (st.block + 1);
  st.observed_index = j;
  const std::uint32_t a = g.grid_coordinate(path[st.start_index], st.direction) + 1;
  const std::uint32_t b = g.grid_coordinate(path[j], st.direction) + 1;
  st.start = a;
  const std::uint64_t steps = st.start_index - j;
  if (steps == 0) {
    st.target_lo = 1;
    st.target_hi = side;
  } else if (a == b) {
    st.target_lo = st.target_hi = a;
    st.stalled = true;
  } else {
    const std::uint64_t moved = a < b ? b - a : a - b;
    if (moved < steps) {
      st.target_lo = st.target_hi = b;
      st.stalled = true;
    } else if (moved == steps) {
      st.target_lo = a < b ? b : 1;
      st.target_hi = a < b ? side : b;
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "grid_block_state: line moved faster than one unit per index");
    }
  }
  return st;
}

SnakeComparison compare_snakes(const Snake& x, const Snake& y, FirstVisit rule) {
  auto index = [rule](const std::vector<Vertex>& path) {
    std::unordered_map<Vertex, std::uint64_t> first;
    const std::uint64_t L = path.size();
    for (std::uint64_t s = 0; s < L; ++s) {
      const std::uint64_t t = rule == FirstVisit::kTailSide ? L - 1 - s : s;
      first[path[t]] = t;
    }
    return first;
  };
  const auto first_x = index(x.path);
  const auto first_y = index(y.path);
  SnakeComparison out;
  out.agree = true;
  for (const auto& [v, tx] : first_x) {
    auto it = first_y.find(v);
    if (it == first_y.end()) continue;
    if (it->second == tx) {
      out.shared.push_back(v);
    } else {
      out.agree = false;
    }
  }
  std::sort(out.shared.begin(), out.shared.end());
  return out;
}

FlickResult flick_tail(const Graph& g, const Snake& x, Rng& rng) {
  if (x.path.empty()) throw Error(ErrorCode::kInvalidArgument, "flick_tail: empty snake");
  const std::uint64_t j = rng.below(x.length());
  return flick_tail_at(g, x, j, rng);
}

FlickResult flick_tail_at(const Graph& g, const Snake& x, std::uint64_t j, Rng& rng) {
  require_snake_family(g, "flick_tail");
  if (j >= x.length()) throw Error(ErrorCode::kInvalidArgument, "flick_tail: j >= L");
  FlickResult r;
  r.j = j;
  r.y = x;
  regrow(g, r.y.path, j, rng);
  SnakeComparison cmp = compare_snakes(x, r.y);
  r.shared = std::move(cmp.shared);
  r.agree = cmp.agree;
  return r;
}

std::uint32_t delta_scan(const Graph& g, Vertex x, Vertex v, std::uint32_t i) {
  g.check(x);
  g.check(v);
  const std::uint32_t n = g.coordinate_count();
  if (i >= n) throw Error(ErrorCode::kInvalidArgument, "delta_scan: i out of range");
  // Window position of coordinate b is (i - b) mod n; k is one past the
  // farthest position holding a difference.
  std::uint32_t k = 0;
  if (g.family() == Family::kHypercube) {
    Vertex diff = x ^ v;
    while (diff != 0) {
      const auto b = static_cast<std::uint32_t>(std::countr_zero(diff));
      diff &= diff - 1;
      k = std::max(k, (i + n - b) % n + 1);
    }
  } else if (g.family() == Family::kGrid) {
    for (std::uint32_t b = 0; b < n; ++b) {
      if (g.grid_coordinate(x, b) != g.grid_coordinate(v, b)) {
        k = std::max(k, (i + n - b) % n + 1);
      }
    }
  } else {
    k = x == v ? 0 : 1;
  }
  return k;
}

std::uint32_t scan_index(const Graph& g, std::uint64_t t) {
  if (g.family() == Family::kHypercube) {
    return g.kind().bits == 0 ? 0 : static_cast<std::uint32_t>(t % g.kind().bits);
  }
  if (g.family() == Family::kGrid) {
    return static_cast<std::uint32_t>((t / g.kind().side) % g.kind().dimension);
  }
  return 0;
}

double sparseness_threshold(const Graph& g, std::uint64_t length, double c,
                            std::uint32_t k) {
  const double L = static_cast<double>(length);
  if (g.family() == Family::kHypercube) {
    const double n = g.kind().bits;
    return c * n * (n + L / std::ldexp(1.0, static_cast<int>(g.kind().bits - k)));
  }
  const double N = static_cast<double>(g.size());
  const double d = g.kind().dimension;
  return c * std::log2(N) *
         (g.kind().side + L / std::pow(N, 1.0 - static_cast<double>(k) / d));
}

SparsenessReport sparseness_check(const Graph& g, const Snake& x, double c,
                                  CheckMode mode, std::uint64_t sample_count, Rng* rng) {
  require_snake_family(g, "sparseness_check");
  if (x.path.empty()) throw Error(ErrorCode::kInvalidArgument, "sparseness_check: empty snake");
  const std::uint32_t K = g.coordinate_count();
  const std::uint64_t L = x.length();
  const double N = static_cast<double>(g.size());

  SparsenessReport rep;
  rep.c = c;
  rep.expected.resize(K + 1);
  for (std::uint32_t k = 0; k <= K; ++k) {
    // L/K indices share a scan coordinate; each lands in the window with
    // probability (cells of the window) / N.
    const double cells = g.family() == Family::kHypercube
                             ? std::ldexp(1.0, static_cast<int>(k))
                             : std::pow(static_cast<double>(g.kind().side), k);
    rep.expected[k] = static_cast<double>(L) / K * cells / N;
  }
  std::vector<double> threshold(K + 1);
  for (std::uint32_t k = 0; k <= K; ++k) threshold[k] = sparseness_threshold(g, L, c, k);

  std::vector<Vertex> targets;
  if (mode == CheckMode::kExact) {
    require_budget(g.size() * L, enumeration_cap(), "sparseness_check (exact)");
  } else {
    if (rng == nullptr || sample_count == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sparseness_check: sampled mode needs a sample count and a stream");
    }
    targets.reserve(sample_count);
    for (std::uint64_t s = 0; s < sample_count; ++s) targets.push_back(rng->below(g.size()));
  }
  const std::uint64_t vcount = mode == CheckMode::kExact ? g.size() : targets.size();
  rep.vertices_checked = vcount;

  std::vector<std::uint32_t> counts(K + 1);
  double worst_ratio = -1.0;
  for (std::uint64_t s = 0; s < vcount; ++s) {
    const Vertex v = mode == CheckMode::kExact ? s : targets[s];
    std::fill(counts.begin(), counts.end(), 0);
    for (std::uint64_t t = 0; t < L; ++t) {
      ++counts[delta_scan(g, x.path[t], v, scan_index(g, t))];
    }
    for (std::uint32_t k = 0; k <= K; ++k) {
      const double ratio = counts[k] / threshold[k];
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        rep.worst_vertex = v;
        rep.worst_k = k;
        rep.worst_count = counts[k];
        rep.worst_threshold = threshold[k];
      }
      if (counts[k] > threshold[k]) rep.sparse = false;
    }
  }
  return rep;
}

void enumerate_regrowths(const Graph& g, const Snake& x, std::uint64_t j,
                         const std::function<void(std::span<const Vertex>, double)>& visit,
                         std::uint64_t cap) {
  require_snake_family(g, "enumerate_regrowths");
  if (j >= x.length()) throw Error(ErrorCode::kInvalidArgument, "enumerate_regrowths: j >= L");
  std::vector<Vertex> path = x.path;
  if (g.family() == Family::kHypercube) {
    const std::uint32_t n = g.kind().bits;
    require_budget(j, 62, "enumerate_regrowths");
    const std::uint64_t count = std::uint64_t{1} << j;
    require_budget(count, cap, "enumerate_regrowths");
    const double p = std::ldexp(1.0, -static_cast<int>(j));
    for (std::uint64_t coins = 0; coins < count; ++coins) {
      regrow_coordinate_loop(std::span<Vertex>(path), j, n,
                             [&, t = j]() mutable { return ((coins >> (--t)) & 1u) != 0; });
      visit(path, p);
    }
    return;
  }
  const std::uint64_t side = g.kind().side;
  std::uint64_t leaves = 0;
  std::function<void(std::uint64_t, double)> rec = [&](std::uint64_t t, double p) {
    if (t == 0) {
      require_budget(++leaves, cap, "enumerate_regrowths");
      visit(path, p);
      return;
    }
    const GridBlockState st = grid_block_state(g, path, t);
    const std::uint64_t block_end = side * st.block;
    const double branch = p / (st.target_hi - st.target_lo + 1);
    for (std::uint32_t z = st.target_lo; z <= st.target_hi; ++z) {
      // Regrow only this block by pinning its target to z.
      Vertex cur = path[t];
      const std::uint64_t stride = g.stride(st.direction);
      for (std::uint64_t u = t; u > block_end; --u) {
        const std::uint32_t c = g.grid_coordinate(cur, st.direction) + 1;
        if (c < z) {
          cur += stride;
        } else if (c > z) {
          cur -= stride;
        }
        path[u - 1] = cur;
      }
      rec(block_end, branch);
    }
  };
  rec(j, 1.0);
}

GoodnessEstimate goodness_estimate(const Graph& g, const Snake& x, std::uint64_t trials,
                                   Rng& rng, CheckMode mode) {
  require_snake_family(g, "goodness_estimate");
  const std::uint64_t L = x.length();
  if (L == 0) throw Error(ErrorCode::kInvalidArgument, "goodness_estimate: empty snake");
  const FirstIndex first_x(g, x.path, FirstVisit::kTailSide);
  const FirstIndex last_x(g, x.path, FirstVisit::kHeadSide);
  VertexScratch agree_scratch(g.size());
  VertexScratch hit(g.size());

  GoodnessEstimate est;
  double agree_mass = 0.0;
  double agree_head_mass = 0.0;
  auto record = [&](std::span<const Vertex> y, std::uint64_t j, double w) {
    if (intersect_consistently(first_x, y, agree_scratch, FirstVisit::kTailSide)) {
      agree_mass += w;
    }
    if (intersect_consistently(last_x, y, agree_scratch, FirstVisit::kHeadSide)) {
      agree_head_mass += w;
    }
    hit.new_round();
    for (std::uint64_t t = 0; t <= j; ++t) {
      if (hit.first_visit(y[t])) hit.add(y[t], w);
    }
  };

  if (mode == CheckMode::kExact) {
    if (g.family() == Family::kHypercube) {
      require_budget(L, 62, "goodness_estimate (exact)");
      require_budget(std::uint64_t{1} << L, enumeration_cap() / 4,
                     "goodness_estimate (exact)");
    }
    const double pj = 1.0 / static_cast<double>(L);
    for (std::uint64_t j = 0; j < L; ++j) {
      enumerate_regrowths(g, x, j, [&](std::span<const Vertex> y, double p) {
        record(y, j, pj * p);
      });
    }
  } else {
    if (trials == 0) throw Error(ErrorCode::kInvalidArgument, "goodness_estimate: trials = 0");
    std::vector<Vertex> y = x.path;
    const double w = 1.0 / static_cast<double>(trials);
    for (std::uint64_t s = 0; s < trials; ++s) {
      const std::uint64_t j = rng.below(L);
      regrow(g, y, j, rng);
      record(y, j, w);
      // Restore the prefix for the next flick.
      std::copy(x.path.begin(), x.path.begin() + static_cast<std::ptrdiff_t>(j), y.begin());
    }
    est.flicks = trials;
  }
  est.p_agree = std::min(agree_mass, 1.0);
  est.p_agree_head_side = std::min(agree_head_mass, 1.0);
  const auto [v, mass] = hit.max();
  est.eps_witness = v;
  est.eps_hat = std::min(mass, 1.0);
  return est;
}

Instance snake_instance(const Graph& g, const Snake& x) {
  validate_snake(g, x);
  const std::uint64_t L = x.length();
  const Vertex h = x.head;
  Instance inst = [&] {
    if (g.size() <= kMaterializeLimit) {
      std::vector<std::uint64_t> values(g.size());
      for (Vertex v : g.vertices()) values[v] = g.distance(v, h) + L;
      for (std::uint64_t t = L; t-- > 0;) values[x.path[t]] = t;
      return Instance(g, std::move(values));
    }
    auto first = std::make_shared<std::unordered_map<Vertex, std::uint64_t>>();
    for (std::uint64_t t = L; t-- > 0;) (*first)[x.path[t]] = t;
    return Instance(g, [g, first, h, L](Vertex v) -> std::uint64_t {
      auto it = first->find(v);
      return it != first->end() ? it->second : g.distance(v, h) + L;
    });
  }();
  inst.set_minimum(x.path.front());
  inst.meta() = {{"generator", "snake"},
                 {"head", h},
                 {"L", L},
                 {"unique_minimum", true}};
  return inst;
}

std::vector<double> generating_distribution(const Graph& g, Vertex start,
                                            std::uint64_t gap) {
  require_snake_family(g, "mixing_check");
  g.check(start);
  require_budget(g.size(), std::max<std::uint64_t>(enumeration_cap() / 64, 1),
                 "mixing_check");
  std::vector<double> dist(g.size(), 0.0);
  std::vector<double> next(g.size(), 0.0);
  dist[start] = 1.0;
  if (g.family() == Family::kHypercube) {
    const std::uint32_t n = g.kind().bits;
    if (n == 0) return dist;
    for (std::uint64_t t = gap; t > 0; --t) {
      const Vertex bit = Vertex{1} << (t % n);
      for (Vertex v : g.vertices()) next[v] = 0.5 * (dist[v] + dist[v ^ bit]);
      dist.swap(next);
    }
    return dist;
  }
  const std::uint32_t side = g.kind().side;
  const std::uint32_t d = g.kind().dimension;
  const std::uint64_t top = gap / side;
  for (std::uint64_t T = top + 1; T-- > 0;) {
    const std::uint64_t start_index = T == top ? gap : side * (T + 1);
    const std::uint64_t steps = start_index - side * T;
    if (steps == 0) continue;
    const auto dir = static_cast<std::uint32_t>(T % d);
    const std::uint64_t stride = g.stride(dir);
    std::fill(next.begin(), next.end(), 0.0);
    for (Vertex v : g.vertices()) {
      if (dist[v] == 0.0) continue;
      const std::int64_t a = g.grid_coordinate(v, dir);
      const double share = dist[v] / side;
      for (std::int64_t z = 0; z < side; ++z) {
        const std::int64_t gapz = z - a;
        const std::int64_t move =
            std::min<std::int64_t>(static_cast<std::int64_t>(steps), std::llabs(gapz));
        const std::int64_t c = a + (gapz < 0 ? -move : move);
        next[v + static_cast<Vertex>(c - a) * stride] += share;
      }
    }
    dist.swap(next);
  }
  return dist;
}

double mixing_check(const GraphKind& kind, Vertex start, std::uint64_t gap) {
  const Graph g(kind);
  const std::vector<double> dist = generating_distribution(g, start, gap);
  const double uniform = 1.0 / static_cast<double>(g.size());
  double dev = 0.0;
  for (double p : dist) dev = std::max(dev, std::abs(p - uniform));
  return dev;
}

nlohmann::json to_json(const Snake& x) {
  return {{"graph", to_json(x.kind)},
          {"head", x.head},
          {"L", x.length()},
          {"path", x.path}};
}

Snake snake_from_json(const nlohmann::json& j) {
  try {
    Snake x;
    x.kind = graph_kind_from_json(j.at("graph"));
    x.head = j.at("head").get<Vertex>();
    x.path = j.at("path").get<std::vector<Vertex>>();
    if (j.contains("L") && j.at("L").get<std::uint64_t>() != x.path.size()) {
      throw Error(ErrorCode::kConfig, "snake JSON: L does not match path length");
    }
    validate_snake(Graph(x.kind), x);
    return x;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("snake JSON: ") + e.what());
  }
}

}  // namespace lslab
