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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "lslab/harness.hpp"

namespace lslab {
namespace {

ExperimentConfig Config(const std::string& json) {
  return config_from_json(nlohmann::json::parse(json));
}

std::string Csv(const ExperimentConfig& cfg) {
  return render_report(run_experiment(cfg), "csv");
}

TEST(Config, ParsesAndRejects) {
  ExperimentConfig c = Config(
      R"({"experiment":"sparse","graph":{"family":"hypercube","n":8},"L":20,"c":2.5,
          "trials":7,"seed":9,"workers":3,"params":{"mode":"exact"}})");
  EXPECT_EQ(c.experiment, "sparse");
  EXPECT_EQ(c.graph, GraphKind::hypercube(8));
  EXPECT_EQ(c.length, 20u);
  EXPECT_DOUBLE_EQ(c.c, 2.5);
  EXPECT_EQ(c.trials, 7u);
  EXPECT_EQ(c.workers, 3u);
  EXPECT_EQ(c.params.at("mode"), "exact");
  ExperimentConfig back = config_from_json(to_json(c));
  EXPECT_EQ(back.length, c.length);
  EXPECT_EQ(back.graph, c.graph);
  EXPECT_THROW(Config(R"({"experiment":"sparse","params":[1]})"), Error);
  EXPECT_THROW(Config(R"({"experiment":"sparse","trials":"many"})"), Error);
}

TEST(Config, DefaultLength) {
  EXPECT_EQ(default_length(GraphKind::hypercube(12)), 16u);  // 64 / 4
  EXPECT_EQ(default_length(GraphKind::hypercube(16)), 64u);
  EXPECT_EQ(default_length(GraphKind::hypercube(2)), 2u);    // floor at 2
  EXPECT_EQ(default_length(GraphKind::grid(2, 16)), 4u);     // sqrt(256) / 4
}

TEST(Experiments, UnknownNameIsConfigError) {
  ExperimentConfig c;
  c.experiment = "teleport";
  c.graph = GraphKind::hypercube(4);
  try {
    run_experiment(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
}

TEST(Experiments, DeterministicAcrossWorkerCounts) {
  const std::vector<std::string> configs = {
      R"({"experiment":"solver-benchmark","graph":{"family":"hypercube","n":8},"trials":40,"seed":5})",
      R"({"experiment":"intersect","graph":{"family":"hypercube","n":10},"L":12,"trials":300,
          "seed":2,"params":{"snakes":20}})",
      R"({"experiment":"sparse","graph":{"family":"hypercube","n":8},"L":16,"trials":12,"seed":3})",
      R"({"experiment":"goodness","graph":{"family":"hypercube","n":8},"L":12,"trials":4,
          "seed":4,"params":{"flicks":200}})",
      R"({"experiment":"subgraph","trials":50,"seed":6})",
      R"({"experiment":"solver-benchmark","sweep_n":[4,6],"generator":"snake","trials":10,
          "seed":8,"solver":"steepest-descent"})"};
  for (const std::string& text : configs) {
    ExperimentConfig c = Config(text);
    c.workers = 1;
    const std::string one = Csv(c);
    EXPECT_EQ(Csv(c), one) << text;
    c.workers = 4;
    EXPECT_EQ(Csv(c), one) << text;
    c.workers = 7;
    EXPECT_EQ(Csv(c), one) << text;
  }
}

TEST(Experiments, CsvHeaderOnlyWhenNoTrials) {
  ExperimentConfig c = Config(
      R"({"experiment":"solver-benchmark","graph":{"family":"line","N":9},"trials":0})");
  EXPECT_EQ(Csv(c), "experiment,n_or_N,L,trial,seed,metric,value\n");
  c.experiment = "subgraph";
  EXPECT_EQ(Csv(c), "experiment,n_or_N,L,trial,seed,metric,value\n");
}

TEST(Experiments, EveryAggregateNamesItsClaim) {
  const std::vector<std::string> configs = {
      R"({"experiment":"solver-benchmark","graph":{"family":"line","N":33},"trials":5,
          "solver":"line-binary-search"})",
      R"({"experiment":"intersect","graph":{"family":"hypercube","n":8},"trials":50})",
      R"({"experiment":"sparse","graph":{"family":"grid","d":2,"side":8},"trials":3})",
      R"({"experiment":"mixing","graph":{"family":"hypercube","n":5}})",
      R"({"experiment":"mixing","graph":{"family":"grid","d":2,"side":4},"params":{"gap":7}})",
      R"({"experiment":"goodness","graph":{"family":"hypercube","n":6},"L":8,"trials":2,
          "eps":0.5,"params":{"flicks":100}})",
      R"({"experiment":"wsym","graph":{"family":"hypercube","n":4},"L":6})",
      R"({"experiment":"subgraph","trials":10})",
      R"({"experiment":"adversary-table","params":{"system":"permutation"}})"};
  for (const std::string& text : configs) {
    ExperimentReport rep = run_experiment(Config(text));
    ASSERT_FALSE(rep.aggregates.empty()) << text;
    for (const Aggregate& a : rep.aggregates) {
      EXPECT_FALSE(a.claim.empty()) << text << " " << a.metric;
      EXPECT_FALSE(std::isnan(a.value)) << text << " " << a.metric;
    }
    const nlohmann::json j = nlohmann::json::parse(render_report(rep, "json"));
    EXPECT_EQ(j.at("aggregates").size(), rep.aggregates.size());
    EXPECT_TRUE(j.contains("timestamp"));
    EXPECT_EQ(render_report(rep, "csv").find(rep.timestamp), std::string::npos);
  }
}

TEST(Experiments, AdversaryTableMatchesTwoOverN) {
  ExperimentReport rep = run_experiment(
      Config(R"({"experiment":"adversary-table","params":{"system":"permutation","N":[2,4,6,8]}})"));
  for (std::uint64_t n : {2u, 4u, 6u, 8u}) {
    const Aggregate* a = rep.find("upsilon_geom_squared", n);
    ASSERT_NE(a, nullptr);
    EXPECT_NEAR(a->value, 2.0 / static_cast<double>(n), 1e-15);
    const Aggregate* ok = rep.find("matches_2_over_N", n);
    ASSERT_NE(ok, nullptr);
    EXPECT_EQ(ok->value, 1.0) << n;
  }
  EXPECT_EQ(rep.find("upsilon_min", 4)->exact, "1/2");
  EXPECT_THROW(run_experiment(Config(
                   R"({"experiment":"adversary-table","params":{"system":"nope"}})")),
               Error);
}

TEST(Experiments, SolverBenchmarkAlwaysSucceeds) {
  for (const char* gen : {"hitting-time", "staircase", "snake"}) {
    for (const char* solver : {"steepest-descent", "random-sample-descent"}) {
      ExperimentConfig c = Config(
          R"({"experiment":"solver-benchmark","graph":{"family":"grid","d":2,"side":12},"trials":25})");
      c.generator = gen;
      c.solver = solver;
      ExperimentReport rep = run_experiment(c);
      ASSERT_NE(rep.find("success_rate"), nullptr);
      EXPECT_EQ(rep.find("success_rate")->value, 1.0) << gen << " " << solver;
    }
  }
}

TEST(Experiments, MixingReportsExactUniformityAtHorizon) {
  ExperimentReport rep = run_experiment(Config(R"({"experiment":"mixing","graph":{"family":"hypercube","n":6}})"));
  EXPECT_LE(rep.find("deviation.at_n")->value, 1e-12);
  // one coordinate never flipped: half the cube at 2/N, half at 0
  EXPECT_NEAR(rep.find("deviation.at_n_minus_1")->value, 1.0 / 64, 1e-15);
}

TEST(Emit, WritesFileAndReportsIoErrors) {
  ExperimentReport rep = run_experiment(Config(R"({"experiment":"subgraph","trials":3})"));
  const std::string path = ::testing::TempDir() + "lslab_emit.csv";
  emit_report(rep, path, "csv");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), render_report(rep, "csv"));
  std::remove(path.c_str());
  try {
    emit_report(rep, "/nonexistent-dir/x.csv", "csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  EXPECT_THROW(render_report(rep, "xml"), Error);
}

TEST(Trials, ResultsInIndexOrderAndErrorsPropagate) {
  auto fn = [](std::uint64_t i) {
    TrialRecord r;
    r.trial = i;
    return r;
  };
  for (unsigned w : {1u, 3u, 16u}) {
    auto recs = run_trials(100, w, fn);
    for (std::uint64_t i = 0; i < 100; ++i) ASSERT_EQ(recs[i].trial, i);
  }
  EXPECT_THROW(run_trials(50, 4,
                          [](std::uint64_t i) -> TrialRecord {
                            if (i == 17) throw Error(ErrorCode::kInvalidArgument, "boom");
                            return {};
                          }),
               Error);
}

// 1000 trial streams x 1000 draws: uniform marginals and no correlation
// between streams of adjacent trials.
TEST(Substreams, NoCrossTrialCorrelation) {
  const int trials = 1000, draws = 1000;
  std::vector<std::vector<double>> u(trials, std::vector<double>(draws));
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(42, t);
    for (int k = 0; k < draws; ++k) u[t][k] = rng.unit();
  }
  double sum = 0;
  for (const auto& row : u) for (double x : row) sum += x;
  const double total = static_cast<double>(trials) * draws;
  EXPECT_NEAR(sum / total, 0.5, 5 * std::sqrt(1.0 / 12 / total));
  // Pearson correlation of draw k in trial t with draw k in trial t+1.
  double sxy = 0, sx = 0, sy = 0, sxx = 0, syy = 0;
  std::uint64_t m = 0;
  for (int t = 0; t + 1 < trials; ++t) {
    for (int k = 0; k < draws; ++k) {
      const double x = u[t][k], y = u[t + 1][k];
      sx += x;
      sy += y;
      sxy += x * y;
      sxx += x * x;
      syy += y * y;
      ++m;
    }
  }
  const double n = static_cast<double>(m);
  const double r = (sxy - sx * sy / n) / std::sqrt((sxx - sx * sx / n) * (syy - sy * sy / n));
  EXPECT_LT(std::abs(r), 5.0 / std::sqrt(n));
  // First draws across trials are all distinct.
  std::vector<double> first;
  for (const auto& row : u) first.push_back(row[0]);
  std::sort(first.begin(), first.end());
  EXPECT_EQ(std::adjacent_find(first.begin(), first.end()), first.end());
}

}  // namespace
}  // namespace lslab
