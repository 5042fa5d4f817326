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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "lslab/instance.hpp"
#include "lslab/snake.hpp"

namespace lslab {
namespace {

using Path = std::vector<Vertex>;

double TotalVariation(const std::map<Path, double>& a, const std::map<Path, double>& b) {
  std::set<Path> keys;
  for (const auto& [k, _] : a) keys.insert(k);
  for (const auto& [k, _] : b) keys.insert(k);
  double tv = 0.0;
  for (const Path& k : keys) {
    auto ia = a.find(k);
    auto ib = b.find(k);
    tv += std::abs((ia == a.end() ? 0.0 : ia->second) - (ib == b.end() ? 0.0 : ib->second));
  }
  return tv / 2;
}

bool SuffixMatches(const Path& a, const Path& b, std::uint64_t j) {
  return std::equal(a.begin() + static_cast<std::ptrdiff_t>(j), a.end(),
                    b.begin() + static_cast<std::ptrdiff_t>(j));
}

TEST(HypercubeSnake, SpecExamples) {
  Rng rng(1);
  Snake one = sample_hypercube_snake(5, 9, 1, rng);
  EXPECT_EQ(one.path, Path{9});

  int ones = 0;
  for (int s = 0; s < 4000; ++s) {
    Snake x = sample_hypercube_snake(1, 0, 2, rng);
    ASSERT_EQ(x.path[1], 0u);
    ASSERT_LE(x.path[0], 1u);
    ones += static_cast<int>(x.path[0]);
  }
  EXPECT_NEAR(ones / 4000.0, 0.5, 0.04);
}

TEST(HypercubeSnake, TailUniformAfterFullLoops) {
  // L = 4n + 1: x_0 is exactly uniform over {0,1}^4.
  const auto all = enumerate_hypercube_snakes(4, 0b1010, 17);
  ASSERT_EQ(all.size(), 1u << 16);
  std::vector<int> count(16, 0);
  for (const Snake& x : all) ++count[x.path[0]];
  for (int c : count) EXPECT_EQ(c, (1 << 16) / 16);
}

TEST(HypercubeSnake, EnumerationIsTheSupport) {
  const std::uint32_t n = 3;
  const std::uint64_t L = 6;
  const auto all = enumerate_hypercube_snakes(n, 5, L);
  std::set<Path> paths;
  for (const Snake& x : all) {
    validate_snake(Graph(x.kind), x);
    // step t -> t-1 touches bit t mod n only
    for (std::uint64_t t = L - 1; t > 0; --t) {
      const Vertex diff = x.path[t] ^ x.path[t - 1];
      ASSERT_TRUE(diff == 0 || diff == (Vertex{1} << (t % n)));
    }
    paths.insert(x.path);
  }
  EXPECT_EQ(paths.size(), all.size());  // coins <-> paths is a bijection

  // Sampler frequencies against the uniform-over-support law.
  Rng rng(42);
  std::map<Path, double> freq;
  const int samples = 64000;
  for (int s = 0; s < samples; ++s) freq[sample_hypercube_snake(n, 5, L, rng).path] += 1.0 / samples;
  std::map<Path, double> exact;
  for (const Path& p : paths) exact[p] = 1.0 / all.size();
  EXPECT_LT(TotalVariation(freq, exact), 0.03);
}

TEST(GridSnake, OneDimensionalExample) {
  Graph g(GraphKind::grid(1, 4));
  std::map<Vertex, int> tails;
  for (std::uint64_t s = 0; s < 4000; ++s) {
    Rng rng(s);
    Snake x = sample_grid_snake(1, 4, 0, 4, rng);
    const std::uint32_t z = g.coordinates(x.path[0])[0];
    ++tails[z];
    for (std::uint64_t t = 0; t < 4; ++t) {
      const std::uint32_t expect = std::min<std::uint32_t>(1 + static_cast<std::uint32_t>(3 - t), z);
      ASSERT_EQ(g.coordinates(x.path[t])[0], expect);
    }
  }
  ASSERT_EQ(tails.size(), 4u);
  for (auto [z, c] : tails) EXPECT_NEAR(c / 4000.0, 0.25, 0.03) << z;
  Rng rng(1);
  EXPECT_EQ(sample_grid_snake(3, 4, 17, 1, rng).path, Path{17});
}

TEST(GridSnake, BlockBoundariesDifferInOneCoordinate) {
  const std::uint32_t d = 3, side = 4;
  Graph g(GraphKind::grid(d, side));
  for (std::uint64_t s = 0; s < 500; ++s) {
    Rng rng(s);
    Snake x = sample_grid_snake(d, side, rng.below(g.size()), 41, rng);
    for (std::uint64_t T = 0; side * (T + 1) < x.length(); ++T) {
      const auto a = g.coordinates(x.path[side * T]);
      const auto b = g.coordinates(x.path[side * (T + 1)]);
      for (std::uint32_t i = 0; i < d; ++i) {
        if (i != T % d) ASSERT_EQ(a[i], b[i]) << "block " << T;
      }
    }
  }
}

TEST(Snakes, PathValidityOverManySeeds) {
  Graph h(GraphKind::hypercube(7));
  Graph g(GraphKind::grid(2, 5));
  for (std::uint64_t s = 0; s < 10000; ++s) {
    Rng rng = Rng::for_trial(3, s);
    const std::uint64_t L = 1 + rng.below(40);
    Snake a = sample_snake(h, rng.below(h.size()), L, rng);
    Snake b = sample_snake(g, rng.below(g.size()), L, rng);
    ASSERT_NO_THROW(validate_snake(h, a));
    ASSERT_NO_THROW(validate_snake(g, b));
    ASSERT_EQ(a.length(), L);
    ASSERT_EQ(b.path.back(), b.head);
  }
  Graph line(GraphKind::line(4));
  Rng rng(1);
  EXPECT_THROW(sample_snake(line, 0, 3, rng), Error);
  EXPECT_THROW(sample_snake(h, 0, 0, rng), Error);
}

TEST(GridBlockState, TargetRangeShrinksWithinBlock) {
  const std::uint32_t d = 2, side = 5;
  Graph g(GraphKind::grid(d, side));
  for (std::uint64_t s = 0; s < 300; ++s) {
    Rng rng(s);
    Snake x = sample_snake(g, rng.below(g.size()), 23, rng);
    std::uint32_t lo = 1, hi = side;
    std::uint64_t block = ~std::uint64_t{0};
    for (std::uint64_t j = x.length() - 1; j >= 1; --j) {
      GridBlockState st = grid_block_state(g, x.path, j);
      ASSERT_LE(st.target_lo, st.target_hi);
      ASSERT_GE(st.target_lo, 1u);
      ASSERT_LE(st.target_hi, side);
      if (st.block != block) {
        block = st.block;
        lo = 1;
        hi = side;
      }
      ASSERT_GE(st.target_lo, lo);
      ASSERT_LE(st.target_hi, hi);
      lo = st.target_lo;
      hi = st.target_hi;
      // the real tail of this block is consistent with the range
      const std::uint32_t end = g.coordinates(x.path[side * st.block])[st.direction];
      if (!st.stalled) {
        ASSERT_TRUE(end >= st.target_lo && end <= st.target_hi);
      }
    }
  }
}

// Exact conditional of the snake law given x_t for t >= j, by filtering the
// full enumeration.
TEST(Flick, HypercubeRegrowthsMatchFilteredEnumeration) {
  for (std::uint32_t n : {2u, 3u, 5u}) {
    for (std::uint64_t L : {1u, 4u, 8u}) {
      const auto all = enumerate_hypercube_snakes(n, 1, L);
      Graph g(GraphKind::hypercube(n));
      Rng pick(n * 100 + L);
      const Snake& x = all[pick.below(all.size())];
      for (std::uint64_t j = 0; j < L; ++j) {
        std::map<Path, double> oracle;
        double mass = 0;
        for (const Snake& y : all) {
          if (SuffixMatches(x.path, y.path, j)) {
            oracle[y.path] += 1.0;
            mass += 1.0;
          }
        }
        for (auto& [_, p] : oracle) p /= mass;
        std::map<Path, double> got;
        enumerate_regrowths(g, x, j, [&](std::span<const Vertex> y, double p) {
          got[Path(y.begin(), y.end())] += p;
        });
        EXPECT_LE(TotalVariation(got, oracle), 1e-12) << "n=" << n << " L=" << L << " j=" << j;
      }
    }
  }
}

TEST(Flick, GridMatchesRejectionSampling) {
  const std::uint32_t d = 2, side = 3;
  const std::uint64_t L = 7;
  Graph g(GraphKind::grid(d, side));
  Rng rng(77);
  const Vertex h = 4;
  Snake x = sample_snake(g, h, L, rng);
  for (std::uint64_t j : {1u, 2u, 4u, 6u}) {
    std::map<Path, double> rejection, flicked, exact;
    int kept = 0;
    while (kept < 20000) {
      Snake y = sample_snake(g, h, L, rng);
      if (!SuffixMatches(x.path, y.path, j)) continue;
      rejection[y.path] += 1;
      ++kept;
    }
    for (auto& [_, p] : rejection) p /= kept;
    for (int s = 0; s < 20000; ++s) flicked[flick_tail_at(g, x, j, rng).y.path] += 1.0 / 20000;
    enumerate_regrowths(g, x, j, [&](std::span<const Vertex> y, double p) {
      exact[Path(y.begin(), y.end())] += p;
    });
    EXPECT_LT(TotalVariation(rejection, exact), 0.04) << "j=" << j;
    EXPECT_LT(TotalVariation(flicked, exact), 0.04) << "j=" << j;
  }
}

TEST(Flick, FixedPrefixAndTrivialCases) {
  Graph g(GraphKind::hypercube(6));
  Rng rng(9);
  Snake x = sample_snake(g, 3, 20, rng);
  FlickResult none = flick_tail_at(g, x, 0, rng);
  EXPECT_EQ(none.y, x);
  EXPECT_TRUE(none.agree);
  for (int s = 0; s < 2000; ++s) {
    FlickResult r = flick_tail(g, x, rng);
    ASSERT_LT(r.j, x.length());
    ASSERT_TRUE(SuffixMatches(x.path, r.y.path, r.j));
    ASSERT_NO_THROW(validate_snake(g, r.y));
    // S is a subset of X ∩ Y
    std::set<Vertex> xs(x.path.begin(), x.path.end()), ys(r.y.path.begin(), r.y.path.end());
    for (Vertex v : r.shared) ASSERT_TRUE(xs.count(v) && ys.count(v));
  }
  EXPECT_THROW(flick_tail_at(g, x, 20, rng), Error);
}

TEST(Flick, SharedSetIsSymmetric) {
  Graph g(GraphKind::hypercube(5));
  Rng rng(4);
  for (int s = 0; s < 2000; ++s) {
    Snake x = sample_snake(g, 0, 12, rng);
    FlickResult r = flick_tail(g, x, rng);
    for (FirstVisit rule : {FirstVisit::kTailSide, FirstVisit::kHeadSide}) {
      SnakeComparison xy = compare_snakes(x, r.y, rule);
      SnakeComparison yx = compare_snakes(r.y, x, rule);
      ASSERT_EQ(xy.shared, yx.shared);
      ASSERT_EQ(xy.agree, yx.agree);
    }
  }
}

// First visits are counted from index 0, so a regrown stay-run at x_j can
// move the first index of x_j and break agreement on its own.
TEST(Flick, StayRunAtTheFlickPointCountsAsDisagreement) {
  Snake x;
  x.kind = GraphKind::hypercube(2);
  x.head = 0;
  x.path = {0, 0, 0};
  Snake y = x;
  y.path = {2, 0, 0};  // flicked at j = 1, bit 1 flipped on the way down
  SnakeComparison tail = compare_snakes(x, y, FirstVisit::kTailSide);
  EXPECT_FALSE(tail.agree);
  EXPECT_TRUE(tail.shared.empty());
  SnakeComparison head = compare_snakes(x, y, FirstVisit::kHeadSide);
  EXPECT_TRUE(head.agree);
  EXPECT_EQ(head.shared, Path{0});
}

TEST(DeltaScan, SpecExamples) {
  Graph g(GraphKind::hypercube(4));
  for (std::uint32_t i = 0; i < 4; ++i) EXPECT_EQ(delta_scan(g, 6, 6, i), 0u);
  EXPECT_EQ(delta_scan(g, 0b0000, 0b0001, 0), 1u);
  EXPECT_EQ(delta_scan(g, 0b0000, 0b1000, 0), 2u);
  EXPECT_EQ(delta_scan(g, 0b0000, 0b0010, 0), 4u);
  EXPECT_LE(delta_scan(g, 0, 15, 2), 4u);
  EXPECT_THROW(delta_scan(g, 0, 1, 4), Error);
}

// Pr[reach v in exactly k scan steps from x] = 2^-k when Δ(x, v, i) = k.
TEST(DeltaScan, ReachProbabilityIsTwoToMinusK) {
  for (std::uint32_t n = 1; n <= 4; ++n) {
    Graph g(GraphKind::hypercube(n));
    for (Vertex x = 0; x < g.size(); ++x) {
      for (Vertex v = 0; v < g.size(); ++v) {
        for (std::uint32_t i = 0; i < n; ++i) {
          const std::uint32_t k = delta_scan(g, x, v, i);
          // scan flips bits i, i-1, ... (mod n); enumerate all k-step coin strings
          int hits = 0;
          for (std::uint32_t coins = 0; coins < (1u << k); ++coins) {
            Vertex cur = x;
            for (std::uint32_t s = 0; s < k; ++s) {
              if ((coins >> s) & 1u) cur ^= Vertex{1} << ((i + n - s) % n);
            }
            hits += cur == v;
          }
          ASSERT_EQ(hits, 1) << "n=" << n << " x=" << x << " v=" << v << " i=" << i;
          // and fewer steps never suffice
          if (k > 0) {
            bool reachable = false;
            for (std::uint32_t coins = 0; coins < (1u << (k - 1)); ++coins) {
              Vertex cur = x;
              for (std::uint32_t s = 0; s + 1 < k; ++s) {
                if ((coins >> s) & 1u) cur ^= Vertex{1} << ((i + n - s) % n);
              }
              reachable |= cur == v;
            }
            ASSERT_FALSE(reachable);
          }
        }
      }
    }
  }
}

TEST(Sparseness, TrivialCases) {
  Graph g(GraphKind::hypercube(6));
  Rng rng(3);
  Snake one = sample_snake(g, 7, 1, rng);
  EXPECT_TRUE(sparseness_check(g, one, 1.0, CheckMode::kExact).sparse);
  // k = n always admits L indices
  Snake x = sample_snake(g, 7, 30, rng);
  EXPECT_GE(sparseness_threshold(g, 30, 1.0, 6), 30.0);
  SparsenessReport rep = sparseness_check(g, x, 3.0, CheckMode::kExact);
  EXPECT_EQ(rep.expected.size(), 7u);
  EXPECT_EQ(rep.vertices_checked, 64u);
  EXPECT_DOUBLE_EQ(rep.c, 3.0);
  EXPECT_LE(rep.worst_count, rep.worst_threshold);
  EXPECT_THROW(sparseness_check(g, x, 3.0, CheckMode::kSampled), Error);
}

TEST(Sparseness, CountsMatchDirectDefinition) {
  Graph g(GraphKind::hypercube(5));
  Rng rng(12);
  Snake x = sample_snake(g, 0, 80, rng);
  const double c = 0.05;  // small enough to make some counts exceed
  SparsenessReport rep = sparseness_check(g, x, c, CheckMode::kExact);
  bool sparse = true;
  for (Vertex v = 0; v < g.size(); ++v) {
    std::vector<int> cnt(6, 0);
    for (std::uint64_t t = 0; t < x.length(); ++t) ++cnt[delta_scan(g, x.path[t], v, t % 5)];
    for (std::uint32_t k = 0; k <= 5; ++k) {
      sparse &= cnt[k] <= c * 5 * (5 + 80.0 / std::pow(2.0, 5 - k));
    }
  }
  EXPECT_EQ(rep.sparse, sparse);
  EXPECT_FALSE(rep.sparse);
}

TEST(Sparseness, MostSnakesAreSparseAtModerateSize) {
  Graph g(GraphKind::hypercube(12));
  int sparse = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng = Rng::for_trial(2024, s);
    Snake x = sample_snake(g, rng.below(g.size()), 64, rng);
    sparse += sparseness_check(g, x, 3.0, CheckMode::kExact).sparse;
  }
  EXPECT_GE(sparse / 200.0, 0.9);
}

TEST(Sparseness, SampledNeverContradictsExact) {
  Graph g(GraphKind::grid(2, 8));
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(s);
    Snake x = sample_snake(g, rng.below(g.size()), 16, rng);
    const bool exact = sparseness_check(g, x, 1.0, CheckMode::kExact).sparse;
    const bool sampled = sparseness_check(g, x, 1.0, CheckMode::kSampled, 20, &rng).sparse;
    if (exact) EXPECT_TRUE(sampled);
  }
}

TEST(Goodness, TrivialCases) {
  Graph g(GraphKind::hypercube(6));
  Rng rng(2);
  Snake one = sample_snake(g, 5, 1, rng);
  GoodnessEstimate e1 = goodness_estimate(g, one, 0, rng, CheckMode::kExact);
  EXPECT_DOUBLE_EQ(e1.p_agree, 1.0);
  EXPECT_DOUBLE_EQ(e1.eps_hat, 1.0);

  Snake x = sample_snake(g, 5, 10, rng);
  GoodnessEstimate e = goodness_estimate(g, x, 0, rng, CheckMode::kExact);
  EXPECT_GE(e.eps_hat, 1.0 / 10);
  EXPECT_GE(e.p_agree, 1.0 / 10);  // j = 0 always agrees
  EXPECT_THROW(goodness_estimate(g, x, 0, rng, CheckMode::kSampled), Error);
}

// Exact mode, computed here from scratch with compare_snakes and
// enumerate_regrowths, against the estimator's own exact mode and its
// Monte Carlo mode.
TEST(Goodness, ExactAgreesWithIndependentSumAndMonteCarlo) {
  Graph g(GraphKind::hypercube(6));
  Rng rng(31);
  Snake x = sample_snake(g, 0, 9, rng);
  double agree = 0.0;
  std::vector<double> hit(g.size(), 0.0);
  for (std::uint64_t j = 0; j < x.length(); ++j) {
    enumerate_regrowths(g, x, j, [&](std::span<const Vertex> y, double p) {
      Snake ys = x;
      ys.path.assign(y.begin(), y.end());
      const double w = p / static_cast<double>(x.length());
      if (compare_snakes(x, ys).agree) agree += w;
      std::set<Vertex> seen(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(j) + 1);
      for (Vertex v : seen) hit[v] += w;
    });
  }
  const double eps = *std::max_element(hit.begin(), hit.end());
  GoodnessEstimate ex = goodness_estimate(g, x, 0, rng, CheckMode::kExact);
  EXPECT_NEAR(ex.p_agree, agree, 1e-12);
  EXPECT_NEAR(ex.eps_hat, eps, 1e-12);
  GoodnessEstimate mc = goodness_estimate(g, x, 40000, rng, CheckMode::kSampled);
  EXPECT_NEAR(mc.p_agree, agree, 0.02);
  EXPECT_NEAR(mc.eps_hat, eps, 0.02);
  EXPECT_EQ(mc.flicks, 40000u);
  EXPECT_GE(ex.p_agree_head_side, ex.p_agree - 1e-12);
}

TEST(SnakeInstance, Construction) {
  Graph g(GraphKind::hypercube(5));
  Rng rng(6);
  Snake one = sample_snake(g, 9, 1, rng);
  Instance f1 = snake_instance(g, one);
  EXPECT_EQ(f1.value(9), 0u);
  for (Vertex v = 0; v < g.size(); ++v) {
    if (v != 9) EXPECT_EQ(f1.value(v), g.distance(v, 9) + 1);
  }
  Snake x = sample_snake(g, 9, 12, rng);
  Instance f = snake_instance(g, x);
  EXPECT_EQ(f.value(x.path[0]), 0u);
  EXPECT_EQ(*f.minimum(), x.path[0]);
  std::set<Vertex> on(x.path.begin(), x.path.end());
  for (Vertex v = 0; v < g.size(); ++v) {
    if (on.count(v)) {
      EXPECT_LT(f.value(v), 12u);
      EXPECT_EQ(x.path[f.value(v)], v);
    } else {
      EXPECT_GE(f.value(v), 12u);
    }
  }
}

TEST(SnakeInstance, UniqueMinimumAtTail) {
  struct Case { GraphKind kind; std::uint64_t L; };
  for (const Case& c : {Case{GraphKind::hypercube(6), 2}, Case{GraphKind::hypercube(8), 4},
                        Case{GraphKind::hypercube(8), 10}, Case{GraphKind::grid(3, 5), 9},
                        Case{GraphKind::grid(2, 6), 30}}) {
    Graph g(c.kind);
    for (std::uint64_t s = 0; s < 300; ++s) {
      Rng rng = Rng::for_trial(5, s);
      Snake x = sample_snake(g, rng.below(g.size()), c.L, rng);
      ASSERT_EQ(brute_force_minima(snake_instance(g, x)), Path{x.path[0]});
    }
  }
}

TEST(Mixing, Examples) {
  EXPECT_LE(mixing_check(GraphKind::hypercube(4), 0, 4), 1e-12);
  EXPECT_GT(mixing_check(GraphKind::hypercube(4), 0, 3), 0.0);
  EXPECT_LE(mixing_check(GraphKind::grid(2, 4), 5, 8), 1e-12);
  EXPECT_LE(mixing_check(GraphKind::grid(2, 4), 5, 7), 1e-12);  // 3 steps span side 4
  EXPECT_GT(mixing_check(GraphKind::grid(2, 4), 0, 6), 0.0);  // corner: 3 needed
  EXPECT_GT(mixing_check(GraphKind::grid(2, 4), 5, 4), 0.0);
  for (std::uint32_t n = 1; n <= 6; ++n) {
    for (Vertex s : {Vertex{0}, (Vertex{1} << n) - 1}) {
      EXPECT_LE(mixing_check(GraphKind::hypercube(n), s, n), 1e-12);
      EXPECT_LE(mixing_check(GraphKind::hypercube(n), s, 3 * n + 1), 1e-12);
      EXPECT_GT(mixing_check(GraphKind::hypercube(n), s, n - 1), 0.0);
    }
  }
  const auto dist = generating_distribution(Graph(GraphKind::hypercube(3)), 0, 2);
  double total = 0;
  for (double p : dist) total += p;
  EXPECT_NEAR(total, 1.0, 1e-15);
}

TEST(Json, RoundTripAndValidation) {
  Graph g(GraphKind::grid(2, 4));
  Rng rng(1);
  Snake x = sample_snake(g, 3, 9, rng);
  EXPECT_EQ(snake_from_json(to_json(x)), x);
  auto j = to_json(x);
  j["L"] = 4;
  EXPECT_THROW(snake_from_json(j), Error);
  auto broken = to_json(x);
  broken["path"] = {0, 15, 3};
  EXPECT_THROW(snake_from_json(broken), Error);
}

}  // namespace
}  // namespace lslab
