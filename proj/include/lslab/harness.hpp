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

#ifndef LSLAB_HARNESS_HPP_
#define LSLAB_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lslab/common.hpp"
#include "lslab/graph.hpp"
#include "json.hpp"

namespace lslab {

// Experiment names accepted by run_experiment.
inline constexpr const char* kExperiments[] = {
    "solver-benchmark", "intersect", "sparse",   "mixing",
    "goodness",         "wsym",      "subgraph", "adversary-table"};

struct ExperimentConfig {
  std::string experiment;
  std::optional<GraphKind> graph;
  // When nonempty, the experiment runs once per hypercube dimension listed.
  std::vector<std::uint32_t> sweep_n;
  std::string generator = "hitting-time";  // hitting-time | staircase | snake
  std::optional<std::uint64_t> length;     // snake length L
  double c = 3.0;                          // sparseness constant
  std::optional<double> eps;               // goodness threshold
  std::optional<std::uint64_t> samples;    // random-sample-descent samples
  std::string solver = "random-sample-descent";
  std::uint64_t trials = 1;
  std::uint64_t seed = 1;
  std::string format = "csv";
  unsigned workers = 1;
  // Experiment-specific extras, e.g. {"flicks": 10000, "snakes": 100}.
  nlohmann::json params = nlohmann::json::object();
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& cfg);

// L = floor(2^(n/2) / 4) on the hypercube, floor(sqrt(N) / 4) elsewhere; at
// least 2.
std::uint64_t default_length(const GraphKind& kind);

struct TrialRecord {
  std::uint64_t n_or_N = 0;
  std::uint64_t length = 0;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;  // substream seed of this trial
  std::vector<std::pair<std::string, double>> metrics;
};

struct Aggregate {
  std::uint64_t n_or_N = 0;
  std::uint64_t length = 0;
  std::string metric;
  double value = 0.0;
  std::string claim;  // the property this number checks
  std::string exact;  // exact rational form, when there is one
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialRecord> records;
  std::vector<Aggregate> aggregates;
  nlohmann::json details = nlohmann::json::object();
  std::string timestamp;

  // First aggregate with this metric name (and size, when given).
  const Aggregate* find(const std::string& metric,
                        std::optional<std::uint64_t> n_or_N = std::nullopt) const;
};

// Runs fn(0..count-1) on `workers` threads; results come back in index order.
std::vector<TrialRecord> run_trials(std::uint64_t count, unsigned workers,
                                    const std::function<TrialRecord(std::uint64_t)>& fn);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

// "csv" or "json". The CSV never carries the timestamp.
std::string render_report(const ExperimentReport& rep, const std::string& format);
nlohmann::json to_json(const ExperimentReport& rep);
// Writes to `path`, or stdout when path is "-".
void emit_report(const ExperimentReport& rep, const std::string& path,
                 const std::string& format);

enum class VerifyLevel { kQuick, kFull };

struct CheckResult {
  std::string name;
  std::string claim;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifySummary {
  std::vector<CheckResult> checks;
  bool passed() const;
};

VerifySummary verify_suite(VerifyLevel level, std::uint64_t seed, unsigned workers = 1,
                           const std::function<void(const CheckResult&)>& on_check = {});

nlohmann::json to_json(const VerifySummary& summary);

}  // namespace lslab

#endif  // LSLAB_HARNESS_HPP_
