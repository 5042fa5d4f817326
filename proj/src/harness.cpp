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

#include "lslab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "lslab/adversary.hpp"
#include "lslab/instance.hpp"
#include "lslab/snake.hpp"
#include "lslab/solvers.hpp"

namespace lslab {

namespace {

// Separates snake streams from per-trial flick streams.
constexpr std::uint64_t kSnakeStreamTag = 0x736e616b65000000ULL;

[[noreturn]] void config_error(const std::string& msg) {
  throw Error(ErrorCode::kConfig, msg);
}

std::uint64_t size_label(const GraphKind& kind) {
  return kind.family == Family::kHypercube ? kind.bits : kind.count;
}

double max_degree(const GraphKind& kind) {
  return static_cast<double>(Graph(kind).max_degree());
}

struct Point {
  GraphKind kind;
  std::uint64_t length = 0;
  std::uint64_t seed = 0;
  std::uint64_t label = 0;
};

std::vector<Point> points_of(const ExperimentConfig& cfg) {
  std::vector<Point> out;
  if (!cfg.sweep_n.empty()) {
    for (std::size_t i = 0; i < cfg.sweep_n.size(); ++i) {
      Point p;
      p.kind = GraphKind::hypercube(cfg.sweep_n[i]);
      out.push_back(p);
    }
  } else {
    if (!cfg.graph) config_error(cfg.experiment + ": no graph given");
    out.push_back(Point{*cfg.graph});
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    Point& p = out[i];
    p.length = cfg.length.value_or(default_length(p.kind));
    p.seed = out.size() == 1 ? cfg.seed : substream_seed(cfg.seed, ~std::uint64_t{i});
    p.label = size_label(p.kind);
  }
  return out;
}

struct Stats {
  double mean = 0, median = 0, max = 0, min = 0, stderr_ = 0;
};

Stats summarize(std::vector<double> v) {
  Stats s;
  if (v.empty()) return s;
  double sum = 0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  double ss = 0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  if (v.size() > 1) {
    s.stderr_ = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
  }
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  s.median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  s.max = v.back();
  s.min = v.front();
  return s;
}

double metric(const TrialRecord& r, const std::string& name) {
  for (const auto& [k, v] : r.metrics) {
    if (k == name) return v;
  }
  throw Error(ErrorCode::kInvalidArgument, "missing metric " + name);
}

std::vector<double> column(const std::vector<TrialRecord>& recs, std::size_t from,
                           const std::string& name) {
  std::vector<double> out;
  for (std::size_t i = from; i < recs.size(); ++i) out.push_back(metric(recs[i], name));
  return out;
}

class ReportBuilder {
 public:
  explicit ReportBuilder(ExperimentReport& rep) : rep_(rep) {}

  void at(const Point& p) { point_ = p; }

  void add(const std::string& name, double value, const std::string& claim,
           const std::string& exact = "") {
    rep_.aggregates.push_back({point_.label, point_.length, name, value, claim, exact});
  }

  void summary(const std::string& name, const std::vector<double>& v,
               const std::string& claim) {
    if (v.empty()) return;
    const Stats s = summarize(v);
    add(name + ".mean", s.mean, claim);
    add(name + ".stderr", s.stderr_, claim);
    add(name + ".median", s.median, claim);
    add(name + ".max", s.max, claim);
  }

  // Empirical probability with its binomial standard error.
  void rate(const std::string& name, const std::vector<double>& indicator,
            const std::string& claim) {
    if (indicator.empty()) return;
    double hits = 0;
    for (double x : indicator) hits += x != 0.0 ? 1.0 : 0.0;
    const double n = static_cast<double>(indicator.size());
    const double p = hits / n;
    add(name, p, claim);
    add(name + ".stderr", std::sqrt(p * (1 - p) / n), claim);
  }

 private:
  ExperimentReport& rep_;
  Point point_;
};

TrialRecord record(const Point& p, std::uint64_t trial, std::uint64_t seed) {
  TrialRecord r;
  r.n_or_N = p.label;
  r.length = p.length;
  r.trial = trial;
  r.seed = seed;
  return r;
}

template <typename T>
T param(const ExperimentConfig& cfg, const char* key, T fallback) {
  if (!cfg.params.contains(key)) return fallback;
  try {
    return cfg.params.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("param ") + key + ": " + e.what());
  }
}

CheckMode mode_param(const ExperimentConfig& cfg, CheckMode fallback) {
  const std::string m = param<std::string>(cfg, "mode", fallback == CheckMode::kExact ? "exact" : "sampled");
  if (m == "exact") return CheckMode::kExact;
  if (m == "sampled") return CheckMode::kSampled;
  config_error("mode must be exact or sampled");
}

Snake random_snake(const Graph& g, std::uint64_t length, Rng& rng) {
  return sample_snake(g, rng.below(g.size()), length, rng);
}

Instance make_instance(const Graph& g, const std::string& generator, std::uint64_t length,
                       Rng& rng) {
  if (generator == "hitting-time") return hitting_time_instance(g, rng);
  if (generator == "staircase") return staircase_instance(g, rng.below(g.size()), rng);
  if (generator == "snake") return snake_instance(g, random_snake(g, length, rng));
  config_error("unknown generator \"" + generator + "\"");
}

// ---------------------------------------------------------------------------

void solver_benchmark(const ExperimentConfig& cfg, const Point& p, ExperimentReport& rep) {
  const Graph g(p.kind);
  const std::size_t from = rep.records.size();
  const std::optional<Vertex> start =
      cfg.params.contains("start") ? std::optional<Vertex>(param<Vertex>(cfg, "start", 0))
                                   : std::nullopt;
  auto recs = run_trials(cfg.trials, cfg.workers, [&](std::uint64_t i) {
    Rng rng = Rng::for_trial(p.seed, i);
    TrialRecord r = record(p, i, substream_seed(p.seed, i));
    const Instance inst = make_instance(g, cfg.generator, p.length, rng);
    QueryOracle oracle(inst);
    const SolverResult res = run_solver(cfg.solver, g, oracle, rng, start, cfg.samples);
    r.metrics = {{"queries", static_cast<double>(res.queries)},
                 {"moves", static_cast<double>(res.moves)},
                 {"verified", res.verified ? 1.0 : 0.0}};
    if (inst.minimum()) {
      r.metrics.emplace_back("found_designated", res.output == *inst.minimum() ? 1.0 : 0.0);
    }
    return r;
  });
  rep.records.insert(rep.records.end(), recs.begin(), recs.end());
  if (recs.empty()) return;

  ReportBuilder b(rep);
  b.at(p);
  b.rate("success_rate", column(rep.records, from, "verified"),
         "zero-error solver: output is always a local minimum");
  const auto q = column(rep.records, from, "queries");
  b.summary("queries", q, "query cost of the solver");
  const double ref = std::sqrt(static_cast<double>(g.size()) * std::max(1.0, max_degree(p.kind)));
  b.add("sqrt_N_delta", ref, "reference scale sqrt(N delta)");
  b.add("queries.mean_over_sqrt_N_delta", summarize(q).mean / ref,
        "random-sample descent uses O(sqrt(N delta)) queries");
  if (cfg.solver == "line-binary-search") {
    const double cap = static_cast<double>(line_query_cap(g.size()));
    std::vector<double> within;
    for (double x : q) within.push_back(x <= cap ? 1.0 : 0.0);
    b.add("queries.cap", cap, "binary search on a line uses at most 2 ceil(log2 N) + 3 queries");
    b.rate("within_cap_rate", within,
           "binary search on a line uses at most 2 ceil(log2 N) + 3 queries");
  }
  rep.details["quantum_cost_model"][std::to_string(p.label)] =
      to_json(quantum_cost_model(static_cast<double>(g.size()),
                                 std::max(1.0, max_degree(p.kind))));
}

void intersect(const ExperimentConfig& cfg, const Point& p, ExperimentReport& rep) {
  const Graph g(p.kind);
  const auto snake_count = std::max<std::uint64_t>(1, param<std::uint64_t>(cfg, "snakes", 100));
  std::vector<Snake> snakes;
  for (std::uint64_t k = 0; k < snake_count; ++k) {
    Rng rng(substream_seed(p.seed ^ kSnakeStreamTag, k));
    snakes.push_back(random_snake(g, p.length, rng));
  }
  const std::size_t from = rep.records.size();
  auto recs = run_trials(cfg.trials, cfg.workers, [&](std::uint64_t i) {
    Rng rng = Rng::for_trial(p.seed, i);
    TrialRecord r = record(p, i, substream_seed(p.seed, i));
    const FlickResult f = flick_tail(g, snakes[i % snake_count], rng);
    const bool head_agree =
        compare_snakes(snakes[i % snake_count], f.y, FirstVisit::kHeadSide).agree;
    r.metrics = {{"snake", static_cast<double>(i % snake_count)},
                 {"j", static_cast<double>(f.j)},
                 {"inconsistent", f.agree ? 0.0 : 1.0},
                 {"inconsistent_head_side", head_agree ? 0.0 : 1.0}};
    return r;
  });
  rep.records.insert(rep.records.end(), recs.begin(), recs.end());
  if (recs.empty()) return;

  ReportBuilder b(rep);
  b.at(p);
  const auto fails = column(rep.records, from, "inconsistent");
  const std::string claim = "Pr[X and Y intersect outside S_XY] <= L^2/N";
  b.rate("failure_rate", fails, claim);
  const double L = static_cast<double>(p.length);
  const double bound = L * L / static_cast<double>(g.size());
  b.add("bound", bound, claim);
  const double rate = summarize(fails).mean;
  const double slack = 3.0 * std::sqrt(std::min(bound, 1.0) * (1.0 - std::min(bound, 1.0)) /
                                        static_cast<double>(fails.size()));
  b.add("within_bound", rate <= bound + slack ? 1.0 : 0.0, claim);
  b.rate("failure_rate.head_side", column(rep.records, from, "inconsistent_head_side"),
         "diagnostic: same event with first visits counted from the head");
}

void sparse(const ExperimentConfig& cfg, const Point& p, ExperimentReport& rep) {
  const Graph g(p.kind);
  const bool exact_fits = g.size() * p.length <= enumeration_cap();
  const CheckMode mode = mode_param(cfg, exact_fits ? CheckMode::kExact : CheckMode::kSampled);
  const auto vertices = param<std::uint64_t>(cfg, "vertices", 4096);
  const std::size_t from = rep.records.size();
  auto recs = run_trials(cfg.trials, cfg.workers, [&](std::uint64_t i) {
    Rng rng = Rng::for_trial(p.seed, i);
    TrialRecord r = record(p, i, substream_seed(p.seed, i));
    const Snake x = random_snake(g, p.length, rng);
    const SparsenessReport s = sparseness_check(g, x, cfg.c, mode, vertices, &rng);
    r.metrics = {{"sparse", s.sparse ? 1.0 : 0.0},
                 {"worst_k", static_cast<double>(s.worst_k)},
                 {"worst_count", static_cast<double>(s.worst_count)},
                 {"worst_ratio", s.worst_threshold > 0
                                     ? static_cast<double>(s.worst_count) / s.worst_threshold
                                     : 0.0}};
    return r;
  });
  rep.records.insert(rep.records.end(), recs.begin(), recs.end());
  if (recs.empty()) return;
  ReportBuilder b(rep);
  b.at(p);
  b.rate("sparse_rate", column(rep.records, from, "sparse"),
         "a random snake is sparse with high probability");
  b.summary("worst_ratio", column(rep.records, from, "worst_ratio"),
            "largest count / threshold over vertices and scan distances");
  rep.details["mode"] = mode == CheckMode::kExact ? "exact" : "sampled";
}

void mixing(const ExperimentConfig& cfg, const Point& p, ExperimentReport& rep) {
  const auto start = param<Vertex>(cfg, "start", 0);
  const std::uint64_t horizon =
      p.kind.family == Family::kHypercube
          ? p.kind.bits
          : std::uint64_t{p.kind.dimension} * p.kind.side;
  std::vector<std::uint64_t> gaps;
  if (cfg.params.contains("gap")) {
    gaps.push_back(param<std::uint64_t>(cfg, "gap", 0));
  } else {
    for (std::uint64_t k = 0; k <= 2 * horizon; ++k) gaps.push_back(k);
  }
  Point q = p;
  for (std::uint64_t gap : gaps) {
    q.length = gap + 1;
    TrialRecord r = record(q, gap, 0);
    r.metrics = {{"gap", static_cast<double>(gap)},
                 {"deviation", mixing_check(p.kind, start, gap)}};
    rep.records.push_back(std::move(r));
  }
  ReportBuilder b(rep);
  b.at(p);
  const std::string claim = "the generating walk mixes exactly after one full sweep";
  b.add("mixing_horizon", static_cast<double>(horizon), claim);
  if (p.kind.family == Family::kHypercube) {
    b.add("deviation.at_n", mixing_check(p.kind, start, horizon), claim);
    if (horizon > 0) b.add("deviation.at_n_minus_1", mixing_check(p.kind, start, horizon - 1), claim);
  }
}

void goodness(const ExperimentConfig& cfg, const Point& p, ExperimentReport& rep) {
  const Graph g(p.kind);
  const auto flicks = param<std::uint64_t>(cfg, "flicks", 10000);
  const CheckMode mode = mode_param(cfg, CheckMode::kSampled);
  const double n = static_cast<double>(p.label);
  const bool hyper = p.kind.family == Family::kHypercube;
  const std::size_t from = rep.records.size();
  auto recs = run_trials(cfg.trials, cfg.workers, [&](std::uint64_t i) {
    Rng rng = Rng::for_trial(p.seed, i);
    TrialRecord r = record(p, i, substream_seed(p.seed, i));
    const Snake x = random_snake(g, p.length, rng);
    const GoodnessEstimate e = goodness_estimate(g, x, flicks, rng, mode);
    r.metrics = {{"p_agree", e.p_agree},
                 {"eps_hat", e.eps_hat},
                 {"p_agree_ok", e.p_agree >= 0.9 ? 1.0 : 0.0},
                 {"p_agree_head_side", e.p_agree_head_side}};
    if (hyper) r.metrics.emplace_back("eps_scaled", e.eps_hat * static_cast<double>(p.length) / (n * n));
    if (cfg.eps) r.metrics.emplace_back("good", e.good(*cfg.eps) ? 1.0 : 0.0);
    return r;
  });
  rep.records.insert(rep.records.end(), recs.begin(), recs.end());
  if (recs.empty()) return;
  ReportBuilder b(rep);
  b.at(p);
  const std::string claim = "a random snake is eps-good for eps = O(n^2 / L)";
  b.rate("p_agree_ok_rate", column(rep.records, from, "p_agree_ok"),
         "flicked tails intersect consistently with probability >= 9/10");
  b.summary("p_agree", column(rep.records, from, "p_agree"),
            "flicked tails intersect consistently with probability >= 9/10");
  b.summary("p_agree_head_side", column(rep.records, from, "p_agree_head_side"),
            "diagnostic: agreement with first visits counted from the head");
  b.summary("eps_hat", column(rep.records, from, "eps_hat"), claim);
  if (hyper) {
    b.summary("eps_scaled", column(rep.records, from, "eps_scaled"), claim);
    rep.details["nominal_L"][std::to_string(p.label)] =
        static_cast<std::uint64_t>(std::floor(std::pow(2.0, n / 2) / 100.0));
  }
  if (cfg.eps) b.rate("good_rate", column(rep.records, from, "good"), claim);
}

void wsym(const ExperimentConfig& cfg, const Point& p, ExperimentReport& rep) {
  if (p.kind.family != Family::kHypercube) config_error("wsym: hypercube only");
  const std::uint64_t L = cfg.length.value_or(6);
  Point q = p;
  q.length = L;
  const SnakeRelation rel = snake_relation_system(p.kind.bits, L);
  std::uint64_t asym = 0, pairs = 0, diag_zero = 0;
  Rational sum;
  for (std::size_t x = 0; x < rel.w.size(); ++x) {
    if (sgn(rel.w[x][x]) <= 0) ++diag_zero;
    for (std::size_t y = 0; y < rel.w.size(); ++y) {
      ++pairs;
      sum += rel.w[x][y];
      if (rel.w[x][y] != rel.w[y][x]) ++asym;
    }
  }
  TrialRecord r = record(q, 0, 0);
  r.metrics = {{"pairs", static_cast<double>(pairs)},
               {"asymmetric_pairs", static_cast<double>(asym)},
               {"zero_diagonal", static_cast<double>(diag_zero)},
               {"sum_w", to_double(sum)}};
  rep.records.push_back(std::move(r));
  ReportBuilder b(rep);
  b.at(q);
  b.add("symmetric", asym == 0 ? 1.0 : 0.0, "w(X,Y) = w(Y,X) for all pairs");
  b.add("sum_w", to_double(sum), "sum of w over all pairs is 1", to_string(sum));
  const AdversaryReport adv = upsilon_bounds(rel.system);
  b.add("upsilon_min", to_double(adv.upsilon_min), "relational bound on the snake system",
        to_string(adv.upsilon_min));
  b.add("upsilon_geom_squared", to_double(adv.upsilon_geom_squared),
        "geometric-mean bound on the snake system", to_string(adv.upsilon_geom_squared));
}

Rational random_fraction(Rng& rng, std::uint64_t den) {
  Rational q(static_cast<long>(rng.below(den + 1)), static_cast<long>(den));
  q.canonicalize();
  return q;
}

void subgraph(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const auto m_max = std::max<std::uint64_t>(1, param<std::uint64_t>(cfg, "m_max", 30));
  const Point p{GraphKind::complete(1), 0, cfg.seed, 0};
  auto recs = run_trials(cfg.trials, cfg.workers, [&](std::uint64_t i) {
    Rng rng = Rng::for_trial(p.seed, i);
    TrialRecord r = record(p, i, substream_seed(p.seed, i));
    const std::size_t m = 1 + rng.below(m_max);
    std::vector<Rational> pw(m);
    Rational psum;
    for (auto& x : pw) {
      x = static_cast<long>(1 + rng.below(100));
      psum += x;
    }
    for (auto& x : pw) x /= psum;
    const double density = rng.unit();
    std::vector<std::vector<Rational>> w(m, std::vector<Rational>(m));
    Rational wsum;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t c = a; c < m; ++c) {
        if (rng.unit() >= density) continue;
        w[a][c] = random_fraction(rng, 16);
        w[c][a] = w[a][c];
        wsum += a == c ? w[a][c] : 2 * w[a][c];
      }
    }
    const Rational rr = wsum * random_fraction(rng, 1000);
    const auto u = subgraph_prune(pw, w, rr);
    bool holds = !u.empty();
    for (std::size_t a : u) {
      Rational deg;
      for (std::size_t c : u) deg += w[a][c];
      if (deg < rr * pw[a] / 2) holds = false;
    }
    r.n_or_N = m;
    r.metrics = {{"m", static_cast<double>(m)},
                 {"kept", static_cast<double>(u.size())},
                 {"holds", holds ? 1.0 : 0.0}};
    return r;
  });
  rep.records.insert(rep.records.end(), recs.begin(), recs.end());
  if (recs.empty()) return;
  ReportBuilder b(rep);
  b.at(p);
  b.rate("holds_rate", column(rep.records, 0, "holds"),
         "a nonempty subset with weighted degree >= r p(i) / 2 exists");
  b.summary("kept", column(rep.records, 0, "kept"), "size of the pruned subset");
}

void adversary_table(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const std::string system = param<std::string>(cfg, "system", "permutation");
  ReportBuilder b(rep);
  nlohmann::json rows = nlohmann::json::array();
  auto emit = [&](const Point& p, std::uint64_t trial, const AdversaryReport& adv,
                  std::optional<Rational> expected) {
    TrialRecord r = record(p, trial, 0);
    r.metrics = {{"upsilon_geom_squared", to_double(adv.upsilon_geom_squared)},
                 {"upsilon_geom", adv.upsilon_geom},
                 {"upsilon_min", to_double(adv.upsilon_min)},
                 {"randomized_bound", to_double(adv.randomized_bound)},
                 {"quantum_bound", adv.quantum_bound}};
    b.at(p);
    b.add("upsilon_geom_squared", to_double(adv.upsilon_geom_squared),
          "geometric-mean adversary quantity", to_string(adv.upsilon_geom_squared));
    b.add("upsilon_min", to_double(adv.upsilon_min), "relational (min) adversary quantity",
          to_string(adv.upsilon_min));
    b.add("randomized_bound", to_double(adv.randomized_bound),
          "randomized queries >= 1/(5 upsilon_min)", to_string(adv.randomized_bound));
    if (expected) {
      const bool ok = adv.upsilon_geom_squared == *expected && adv.upsilon_min == *expected;
      r.metrics.emplace_back("matches_2_over_N", ok ? 1.0 : 0.0);
      b.add("matches_2_over_N", ok ? 1.0 : 0.0,
            "permutation inversion: upsilon_geom = sqrt(2/N), theta = 2/N");
    }
    rep.records.push_back(std::move(r));
    nlohmann::json row = to_json(adv);
    row["n_or_N"] = p.label;
    rows.push_back(std::move(row));
  };
  if (system == "permutation") {
    const auto sizes =
        param<std::vector<std::uint32_t>>(cfg, "N", std::vector<std::uint32_t>{2, 4, 6, 8});
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const std::uint32_t n = sizes[i];
      const Point p{GraphKind::complete(n), 0, 0, n};
      emit(p, i, upsilon_bounds(permutation_inversion_system(n)), Rational(2) / n);
    }
  } else if (system == "snake") {
    for (const Point& p : points_of(cfg)) {
      if (p.kind.family != Family::kHypercube) config_error("snake system: hypercube only");
      Point q = p;
      q.length = cfg.length.value_or(6);
      emit(q, 0, upsilon_bounds(snake_relation_system(p.kind.bits, q.length).system),
           std::nullopt);
    }
  } else {
    config_error("adversary-table: unknown system \"" + system + "\"");
  }
  rep.details["rows"] = std::move(rows);
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::uint64_t default_length(const GraphKind& kind) {
  double raw = 0;
  if (kind.family == Family::kHypercube) {
    raw = std::pow(2.0, kind.bits / 2.0) / 4.0;
  } else {
    raw = std::sqrt(static_cast<double>(Graph(kind).size())) / 4.0;
  }
  return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::floor(raw)));
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) config_error("config must be a JSON object");
  ExperimentConfig c;
  try {
    c.experiment = j.value("experiment", std::string());
    if (j.contains("graph")) c.graph = graph_kind_from_json(j.at("graph"));
    if (j.contains("sweep_n")) c.sweep_n = j.at("sweep_n").get<std::vector<std::uint32_t>>();
    c.generator = j.value("generator", c.generator);
    if (j.contains("L")) c.length = j.at("L").get<std::uint64_t>();
    c.c = j.value("c", c.c);
    if (j.contains("eps")) c.eps = j.at("eps").get<double>();
    if (j.contains("samples")) c.samples = j.at("samples").get<std::uint64_t>();
    c.solver = j.value("solver", c.solver);
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    c.format = j.value("format", c.format);
    c.workers = j.value("workers", c.workers);
    if (j.contains("params")) c.params = j.at("params");
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("config: ") + e.what());
  }
  if (!c.params.is_object()) config_error("config: params must be an object");
  if (c.format != "csv" && c.format != "json") config_error("config: format must be csv or json");
  return c;
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json j = {{"experiment", cfg.experiment},
                      {"generator", cfg.generator},
                      {"c", cfg.c},
                      {"solver", cfg.solver},
                      {"trials", cfg.trials},
                      {"seed", cfg.seed},
                      {"format", cfg.format},
                      {"params", cfg.params}};
  if (cfg.graph) j["graph"] = to_json(*cfg.graph);
  if (!cfg.sweep_n.empty()) j["sweep_n"] = cfg.sweep_n;
  if (cfg.length) j["L"] = *cfg.length;
  if (cfg.eps) j["eps"] = *cfg.eps;
  if (cfg.samples) j["samples"] = *cfg.samples;
  // Worker count is left out on purpose: it must not change the output.
  return j;
}

const Aggregate* ExperimentReport::find(const std::string& metric,
                                        std::optional<std::uint64_t> n_or_N) const {
  for (const Aggregate& a : aggregates) {
    if (a.metric == metric && (!n_or_N || a.n_or_N == *n_or_N)) return &a;
  }
  return nullptr;
}

std::vector<TrialRecord> run_trials(std::uint64_t count, unsigned workers,
                                    const std::function<TrialRecord(std::uint64_t)>& fn) {
  std::vector<TrialRecord> out(count);
  const unsigned threads =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(workers, 1u), std::max<std::uint64_t>(count, 1)));
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.config = cfg;
  rep.timestamp = utc_timestamp();
  const std::string& e = cfg.experiment;
  if (e == "subgraph") {
    subgraph(cfg, rep);
  } else if (e == "adversary-table") {
    adversary_table(cfg, rep);
  } else {
    void (*run)(const ExperimentConfig&, const Point&, ExperimentReport&) = nullptr;
    if (e == "solver-benchmark") run = solver_benchmark;
    else if (e == "intersect") run = intersect;
    else if (e == "sparse") run = sparse;
    else if (e == "mixing") run = mixing;
    else if (e == "goodness") run = goodness;
    else if (e == "wsym") run = wsym;
    else config_error("unknown experiment \"" + e + "\"");
    for (const Point& p : points_of(cfg)) run(cfg, p, rep);
  }
  return rep;
}

nlohmann::json to_json(const ExperimentReport& rep) {
  nlohmann::json records = nlohmann::json::array();
  for (const TrialRecord& r : rep.records) {
    nlohmann::json m = nlohmann::json::object();
    for (const auto& [k, v] : r.metrics) m[k] = v;
    records.push_back({{"n_or_N", r.n_or_N},
                       {"L", r.length},
                       {"trial", r.trial},
                       {"seed", r.seed},
                       {"metrics", std::move(m)}});
  }
  nlohmann::json aggs = nlohmann::json::array();
  for (const Aggregate& a : rep.aggregates) {
    nlohmann::json j = {{"n_or_N", a.n_or_N},
                        {"L", a.length},
                        {"metric", a.metric},
                        {"value", a.value},
                        {"claim", a.claim}};
    if (!a.exact.empty()) j["exact"] = a.exact;
    aggs.push_back(std::move(j));
  }
  return {{"config", to_json(rep.config)},
          {"records", std::move(records)},
          {"aggregates", std::move(aggs)},
          {"details", rep.details},
          {"timestamp", rep.timestamp}};
}

std::string render_report(const ExperimentReport& rep, const std::string& format) {
  if (format == "json") return to_json(rep).dump(2) + "\n";
  if (format != "csv") config_error("format must be csv or json");
  std::ostringstream os;
  os << "experiment,n_or_N,L,trial,seed,metric,value\n";
  const std::string& name = rep.config.experiment;
  for (const TrialRecord& r : rep.records) {
    for (const auto& [k, v] : r.metrics) {
      os << name << ',' << r.n_or_N << ',' << r.length << ',' << r.trial << ',' << r.seed
         << ',' << k << ',' << format_number(v) << '\n';
    }
  }
  for (const Aggregate& a : rep.aggregates) {
    os << name << ',' << a.n_or_N << ',' << a.length << ",all," << rep.config.seed << ','
       << a.metric << ',' << format_number(a.value) << '\n';
  }
  return os.str();
}

void emit_report(const ExperimentReport& rep, const std::string& path,
                 const std::string& format) {
  const std::string text = render_report(rep, format);
  if (path == "-" || path.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw Error(ErrorCode::kIo, "emit_report: write to stdout failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "emit_report: cannot open " + path);
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "emit_report: write failed for " + path);
}

}  // namespace lslab
