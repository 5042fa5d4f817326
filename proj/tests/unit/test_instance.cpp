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
#include <bit>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "lslab/instance.hpp"

namespace lslab {
namespace {

// Independent local-min scan over a dense value table.
std::vector<Vertex> ScanMinima(const Graph& g, const std::vector<std::uint64_t>& f) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.size(); ++v) {
    bool ok = true;
    for (Vertex w : g.neighbors(v)) ok &= f[v] <= f[w];
    if (ok) out.push_back(v);
  }
  return out;
}

std::vector<std::uint64_t> Dense(const Instance& inst) {
  std::vector<std::uint64_t> f(inst.graph().size());
  for (Vertex v = 0; v < f.size(); ++v) f[v] = inst.value(v);
  return f;
}

std::vector<GraphKind> GeneratorKinds() {
  return {GraphKind::hypercube(1), GraphKind::hypercube(5), GraphKind::hypercube(8),
          GraphKind::grid(1, 6),   GraphKind::grid(2, 5),   GraphKind::grid(3, 4),
          GraphKind::line(2),      GraphKind::line(17),     GraphKind::complete(2),
          GraphKind::complete(9)};
}

TEST(Query, CountsAndLog) {
  Graph g(GraphKind::line(5));
  Instance zero(g, std::vector<std::uint64_t>(5, 0));
  QueryOracle o(zero);
  EXPECT_EQ(o.query(3).value, 0u);
  EXPECT_EQ(o.count(), 1u);
  EXPECT_EQ(o.query(3).value, 0u);
  EXPECT_EQ(o.count(), 2u);
  EXPECT_EQ(o.log().size(), o.count());
  EXPECT_THROW(o.query(5), Error);
}

TEST(Query, CountEqualsCallsForAnyPattern) {
  Graph g(GraphKind::hypercube(4));
  Rng rng(3);
  Instance inst = hitting_time_instance(g, rng);
  QueryOracle o(inst);
  for (int k = 1; k <= 200; ++k) {
    const Vertex v = rng.below(4);  // heavy repetition
    EXPECT_EQ(o.query(v).value, inst.value(v));
    EXPECT_EQ(o.count(), static_cast<std::uint64_t>(k));
  }
  for (auto [v, val] : o.log()) EXPECT_EQ(inst.value(v), val);
}

TEST(IsLocalMin, WeakInequality) {
  Graph line(GraphKind::line(4));
  Instance flat(line, std::vector<std::uint64_t>(4, 7));
  for (Vertex v = 0; v < 4; ++v) EXPECT_TRUE(is_local_min(flat, v));

  Graph h(GraphKind::hypercube(2));
  auto weight = [](Vertex v) { return static_cast<std::uint64_t>(std::popcount(v)); };
  EXPECT_TRUE(is_local_min(h, weight, 0));
  for (Vertex v = 1; v < 4; ++v) EXPECT_FALSE(is_local_min(h, weight, v));
}

TEST(BruteForce, SpecExamples) {
  Graph line(GraphKind::line(4));
  EXPECT_EQ(brute_force_minima(Instance(line, std::vector<std::uint64_t>(4, 0))),
            (std::vector<Vertex>{0, 1, 2, 3}));
  Graph k(GraphKind::complete(5));
  EXPECT_EQ(brute_force_minima(k, [](Vertex v) { return std::uint64_t{v}; }),
            (std::vector<Vertex>{0}));
  Graph big(GraphKind::hypercube(10));
  EXPECT_THROW(brute_force_minima(big, [](Vertex) { return std::uint64_t{0}; }, 512), Error);
}

TEST(Staircase, HypercubeExample) {
  Graph h(GraphKind::hypercube(3));
  // Find a seed that picks w = 001 and check the spec's table.
  bool found = false;
  for (std::uint64_t s = 0; s < 64 && !found; ++s) {
    Rng rng(s);
    Instance inst = staircase_instance(h, 0, rng);
    if (*inst.minimum() != 1) continue;
    found = true;
    EXPECT_EQ(inst.value(0b001), 1u);
    EXPECT_EQ(inst.value(0b000), 2u);
    EXPECT_EQ(inst.value(0b010), 3u);
    EXPECT_EQ(inst.value(0b100), 3u);
    EXPECT_EQ(inst.value(0b011), 4u);
    EXPECT_EQ(inst.value(0b111), 5u);
  }
  EXPECT_TRUE(found);
}

TEST(Staircase, CompleteGraphCoveredByNeighborhood) {
  Graph k(GraphKind::complete(4));
  Rng rng(1);
  Instance inst = staircase_instance(k, 2, rng);
  std::set<std::uint64_t> vals;
  for (Vertex v = 0; v < 4; ++v) vals.insert(inst.value(v));
  EXPECT_EQ(vals, (std::set<std::uint64_t>{1, 2, 3}));
}

TEST(Staircase, RejectsIsolatedVertex) {
  Graph single(GraphKind::line(1));
  Rng rng(1);
  EXPECT_THROW(staircase_instance(single, 0, rng), Error);
}

TEST(Staircase, DistanceToNeighborhoodOracle) {
  // f(x) = 3 + dist(x, N[v]) off N[v], computed here by explicit min.
  for (const GraphKind& kind : GeneratorKinds()) {
    Graph g(kind);
    Rng rng(11);
    const Vertex v = rng.below(g.size());
    Instance inst = staircase_instance(g, v, rng);
    const Vertex w = *inst.minimum();
    std::vector<Vertex> closed = g.neighbors(v);
    closed.push_back(v);
    for (Vertex x = 0; x < g.size(); ++x) {
      std::uint64_t expect;
      if (x == w) {
        expect = 1;
      } else if (x == v) {
        expect = 2;
      } else if (std::find(closed.begin(), closed.end(), x) != closed.end()) {
        expect = 3;
      } else {
        std::uint64_t best = ~std::uint64_t{0};
        for (Vertex s : closed) best = std::min(best, g.distance(x, s));
        expect = 3 + best;
      }
      ASSERT_EQ(inst.value(x), expect) << family_name(kind.family) << " x=" << x;
    }
  }
}

TEST(HittingTime, BasicShape) {
  Graph line(GraphKind::line(2));
  Rng rng(5);
  Instance inst = hitting_time_instance(line, rng);
  const Vertex s = *inst.minimum();
  EXPECT_EQ(inst.value(s), 0u);
  EXPECT_EQ(inst.value(1 - s), 1u);
}

TEST(HittingTime, StepBudgetIsExplicit) {
  Graph h(GraphKind::hypercube(8));
  Rng rng(1);
  EXPECT_THROW(hitting_time_instance(h, rng, 10), Error);
}

TEST(HittingTime, InjectiveValues) {
  for (const GraphKind& kind : GeneratorKinds()) {
    Graph g(kind);
    for (std::uint64_t s = 0; s < 5; ++s) {
      Rng rng(s);
      Instance inst = hitting_time_instance(g, rng);
      std::vector<std::uint64_t> f = Dense(inst);
      EXPECT_EQ(f[*inst.minimum()], 0u);
      std::sort(f.begin(), f.end());
      EXPECT_EQ(std::adjacent_find(f.begin(), f.end()), f.end());
    }
  }
}

// Declared minimum equals the brute-force set, for every generator and many
// seeds, on graphs up to 2^16 vertices.
TEST(Generators, DeclaredMinimumMatchesBruteForce) {
  std::vector<GraphKind> kinds = GeneratorKinds();
  kinds.push_back(GraphKind::hypercube(16));
  kinds.push_back(GraphKind::grid(2, 256));
  for (const GraphKind& kind : kinds) {
    Graph g(kind);
    const int seeds = g.size() > 4096 ? 3 : 40;
    for (int s = 0; s < seeds; ++s) {
      Rng rng = Rng::for_trial(99, s);
      Instance a = hitting_time_instance(g, rng);
      Instance b = staircase_instance(g, rng.below(g.size()), rng);
      for (const Instance* inst : {&a, &b}) {
        ASSERT_TRUE(inst->meta().value("unique_minimum", false));
        const auto mins = ScanMinima(g, Dense(*inst));
        ASSERT_EQ(mins, std::vector<Vertex>{*inst->minimum()})
            << family_name(kind.family) << " seed " << s;
        ASSERT_EQ(brute_force_minima(*inst), mins);
      }
    }
  }
}

TEST(DecisionWrap, BitOnlyAtMinimum) {
  Graph h(GraphKind::hypercube(4));
  Rng rng(2);
  Instance base = hitting_time_instance(h, rng);
  const Vertex m = *base.minimum();
  for (int bit : {0, 1}) {
    Instance wrapped = decision_wrap(base, bit);
    QueryOracle o(wrapped);
    QueryAnswer a = o.query(m);
    EXPECT_EQ(a.value, 0u);
    ASSERT_TRUE(a.bit.has_value());
    EXPECT_EQ(*a.bit, bit);
    QueryAnswer other = o.query(m ^ 1);
    EXPECT_FALSE(other.bit.has_value());
    EXPECT_EQ(other.value, base.value(m ^ 1));
  }
  QueryOracle plain(base);
  EXPECT_FALSE(plain.query(m).bit.has_value());
  Instance no_min(h, std::vector<std::uint64_t>(16, 1));
  EXPECT_THROW(decision_wrap(no_min, 0), Error);
  EXPECT_THROW(decision_wrap(base, 2), Error);
}

TEST(Json, RoundTrip) {
  Graph g(GraphKind::grid(2, 4));
  Rng rng(8);
  Instance inst = decision_wrap(hitting_time_instance(g, rng), 1);
  const nlohmann::json j = to_json(inst);
  EXPECT_EQ(j.at("answer_bit"), 1);
  Instance back = instance_from_json(j);
  EXPECT_EQ(Dense(back), Dense(inst));
  EXPECT_EQ(back.minimum(), inst.minimum());
  EXPECT_EQ(back.answer_bit(), inst.answer_bit());
  EXPECT_EQ(to_json(back), j);
  EXPECT_THROW(instance_from_json(nlohmann::json::parse(R"({"graph":{"family":"line","N":3}})")),
               Error);
  auto bad = j;
  bad["values"] = {1, 2};
  EXPECT_THROW(instance_from_json(bad), Error);
}

}  // namespace
}  // namespace lslab
