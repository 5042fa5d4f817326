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

// The verification battery behind `lslab verify`.

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "lslab/adversary.hpp"
#include "lslab/harness.hpp"
#include "lslab/instance.hpp"
#include "lslab/snake.hpp"
#include "lslab/solvers.hpp"

namespace lslab {

namespace {

// Pilot-fixed constants; see README.
constexpr double kSampleDescentRatioCap = 2.0;   // mean queries / sqrt(N delta)
constexpr double kEpsScaledCap = 0.15;           // eps_hat * L / n^2

struct Scale {
  bool full;
  std::uint64_t pick(std::uint64_t quick, std::uint64_t full_value) const {
    return full ? full_value : quick;
  }
};

CheckResult named(std::string name, std::string claim) {
  CheckResult r;
  r.name = std::move(name);
  r.claim = std::move(claim);
  return r;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::uint64_t hypercube_length(std::uint32_t n) {
  return default_length(GraphKind::hypercube(n));
}

CheckResult permutation_check(const Scale&) {
  CheckResult r = named("permutation-adversary", "permutation inversion: upsilon_geom^2 = upsilon_min = 2/N");
  r.passed = true;
  std::ostringstream os;
  for (std::uint32_t n : {2u, 4u, 6u, 8u}) {
    const AdversaryReport rep = upsilon_bounds(permutation_inversion_system(n));
    const Rational want = Rational(2) / n;
    const bool ok = rep.upsilon_geom_squared == want && rep.upsilon_min == want;
    r.passed = r.passed && ok;
    os << "N=" << n << ": geom^2=" << rep.upsilon_geom_squared << " min=" << rep.upsilon_min
       << (ok ? "" : " MISMATCH") << "; ";
  }
  r.detail = os.str();
  return r;
}

CheckResult unique_minimum_check(const Scale& s, std::uint64_t seed) {
  CheckResult r = named("snake-unique-minimum", "f_X has a unique local minimum at x_0");
  const std::uint64_t count = s.pick(100, 1000);
  std::uint64_t bad = 0, total = 0;
  auto run = [&](const GraphKind& kind, std::uint64_t L, std::uint64_t stream) {
    const Graph g(kind);
    for (std::uint64_t i = 0; i < count; ++i) {
      Rng rng = Rng::for_trial(substream_seed(seed, stream), i);
      const Snake x = sample_snake(g, rng.below(g.size()), L, rng);
      const auto minima = brute_force_minima(snake_instance(g, x));
      ++total;
      if (minima.size() != 1 || minima.front() != x.path.front()) ++bad;
    }
  };
  for (std::uint32_t n : {6u, 8u, 10u, 12u}) run(GraphKind::hypercube(n), hypercube_length(n), n);
  run(GraphKind::grid(3, 8), 11, 100);
  r.passed = bad == 0;
  r.detail = std::to_string(total - bad) + "/" + std::to_string(total) + " snakes";
  return r;
}

CheckResult intersect_check(const Scale& s, std::uint64_t seed, unsigned workers) {
  CheckResult r = named("intersect", "Pr[X and Y intersect outside S_XY] <= L^2/2^n (+0.005)");
  ExperimentConfig cfg;
  cfg.experiment = "intersect";
  cfg.graph = GraphKind::hypercube(16);
  cfg.length = 25;
  cfg.trials = s.pick(10000, 100000);
  cfg.seed = seed;
  cfg.workers = workers;
  cfg.params = {{"snakes", 100}};
  const ExperimentReport rep = run_experiment(cfg);
  const double rate = rep.find("failure_rate")->value;
  const double bound = 625.0 / 65536.0;
  r.passed = rate <= bound + 0.005;
  r.detail = "rate=" + fmt(rate) + " bound+0.005=" + fmt(bound + 0.005) +
             " (head-side first visits: " + fmt(rep.find("failure_rate.head_side")->value) + ")";
  return r;
}

CheckResult mixing_exact_check(const Scale&) {
  CheckResult r = named("mixing", "the coordinate loop mixes completely in n steps");
  r.passed = true;
  std::ostringstream os;
  for (std::uint32_t n : {2u, 3u, 4u}) {
    const double at = mixing_check(GraphKind::hypercube(n), 0, n);
    const double before = mixing_check(GraphKind::hypercube(n), 0, n - 1);
    r.passed = r.passed && at <= 1e-12 && before > 0;
    os << "n=" << n << ": dev(n)=" << at << " dev(n-1)=" << before << "; ";
  }
  const double grid = mixing_check(GraphKind::grid(2, 4), 0, 8);
  r.passed = r.passed && grid <= 1e-12;
  os << "grid 2x4 gap 8: " << grid;
  r.detail = os.str();
  return r;
}

CheckResult wsym_check(const Scale&) {
  CheckResult r = named("w-symmetry", "w(X,Y) = w(Y,X) and sum of w is 1");
  const SnakeRelation rel = snake_relation_system(4, 6);
  std::uint64_t asym = 0;
  Rational sum;
  for (std::size_t x = 0; x < rel.w.size(); ++x) {
    for (std::size_t y = 0; y < rel.w.size(); ++y) {
      sum += rel.w[x][y];
      if (rel.w[x][y] != rel.w[y][x]) ++asym;
    }
  }
  r.passed = asym == 0 && sum == 1;
  r.detail = "pairs=" + std::to_string(rel.w.size() * rel.w.size()) +
             " asymmetric=" + std::to_string(asym) + " sum=" + to_string(sum);
  return r;
}

double total_variation(const std::map<std::vector<Vertex>, double>& p,
                       const std::map<std::vector<Vertex>, double>& q) {
  double tv = 0;
  for (const auto& [k, v] : p) {
    auto it = q.find(k);
    tv += std::abs(v - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : q) {
    if (!p.contains(k)) tv += v;
  }
  return tv / 2;
}

bool suffix_matches(const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                    std::uint64_t j) {
  for (std::uint64_t t = j; t < a.size(); ++t) {
    if (a[t] != b[t]) return false;
  }
  return true;
}

CheckResult flick_check(const Scale& s, std::uint64_t seed) {
  CheckResult r = named("flick-conditional", "a flick draws Y from D_{h,L} conditioned on the kept suffix");
  double worst_exact = 0;
  for (std::uint32_t n = 3; n <= 6; ++n) {
    const Graph g(GraphKind::hypercube(n));
    for (std::uint64_t L : {5ull, 10ull}) {
      Rng rng(substream_seed(seed, 1000 + n * 16 + L));
      const Vertex h = rng.below(g.size());
      const auto support = enumerate_hypercube_snakes(n, h, L);
      const Snake x = support[rng.below(support.size())];
      for (std::uint64_t j = 0; j < L; ++j) {
        std::map<std::vector<Vertex>, double> engine, oracle;
        enumerate_regrowths(g, x, j, [&](std::span<const Vertex> y, double p) {
          engine[std::vector<Vertex>(y.begin(), y.end())] += p;
        });
        std::uint64_t matches = 0;
        for (const Snake& y : support) matches += suffix_matches(x.path, y.path, j);
        for (const Snake& y : support) {
          if (suffix_matches(x.path, y.path, j)) oracle[y.path] += 1.0 / static_cast<double>(matches);
        }
        worst_exact = std::max(worst_exact, total_variation(engine, oracle));
      }
    }
  }
  // Grid: flick samples against rejection sampling from scratch.
  const Graph g(GraphKind::grid(2, 4));
  const std::uint64_t L = 8, samples = s.pick(100000, 100000);
  Rng rng(substream_seed(seed, 2000));
  const Snake x = sample_snake(g, rng.below(g.size()), L, rng);
  double worst_grid = 0;
  for (std::uint64_t j : {3ull, 5ull, 7ull}) {
    std::map<std::vector<Vertex>, double> flicked, rejected;
    for (std::uint64_t i = 0; i < samples; ++i) {
      flicked[flick_tail_at(g, x, j, rng).y.path] += 1.0 / static_cast<double>(samples);
    }
    for (std::uint64_t i = 0; i < samples;) {
      const Snake y = sample_snake(g, x.head, L, rng);
      if (!suffix_matches(x.path, y.path, j)) continue;
      rejected[y.path] += 1.0 / static_cast<double>(samples);
      ++i;
    }
    worst_grid = std::max(worst_grid, total_variation(flicked, rejected));
  }
  r.passed = worst_exact <= 1e-12 && worst_grid <= 0.02;
  r.detail = "hypercube TV=" + fmt(worst_exact) + " grid TV=" + fmt(worst_grid);
  return r;
}

CheckResult subgraph_check(const Scale& s, std::uint64_t seed, unsigned workers) {
  CheckResult r = named("subgraph", "a nonempty subset with weighted degree >= r p(i) / 2 exists");
  ExperimentConfig cfg;
  cfg.experiment = "subgraph";
  cfg.trials = s.pick(1000, 10000);
  cfg.seed = seed;
  cfg.workers = workers;
  const ExperimentReport rep = run_experiment(cfg);
  const double rate = rep.find("holds_rate")->value;
  r.passed = rate == 1.0;
  r.detail = "holds on " + fmt(rate * static_cast<double>(cfg.trials)) + "/" +
             std::to_string(cfg.trials) + " instances";
  return r;
}

// Small random relation system with every input related to something.
RelationSystem random_system(Rng& rng) {
  for (;;) {
    const std::size_t positions = 2 + rng.below(4);
    const std::size_t na = 1 + rng.below(4), nb = 1 + rng.below(4);
    auto table = [&](std::size_t count) {
      InputTable t(count, std::vector<Symbol>(positions));
      for (auto& in : t) {
        for (auto& sym : in) sym = static_cast<Symbol>(rng.below(3));
      }
      return t;
    };
    InputTable a = table(na), b = table(nb);
    std::vector<RelationEntry> entries;
    for (std::uint32_t i = 0; i < na; ++i) {
      for (std::uint32_t k = 0; k < nb; ++k) {
        if (rng.coin()) entries.push_back({i, k, Rational(static_cast<long>(1 + rng.below(5)))});
      }
    }
    try {
      RelationSystem sys(positions, std::move(a), std::move(b), std::move(entries));
      upsilon_bounds(sys);
      return sys;
    } catch (const Error&) {
      // Degenerate draw; try again.
    }
  }
}

QueryPolicy random_policy(std::uint64_t salt, std::size_t positions) {
  return [salt, positions](std::span<const TranscriptEntry> tr) {
    std::uint64_t h = mix64(salt);
    for (const auto& e : tr) h = mix64(h ^ (e.position * 31 + static_cast<std::uint64_t>(e.symbol)));
    if (h % 5 == 0) return PolicyAction::halt(static_cast<std::uint32_t>((h >> 8) & 1));
    return PolicyAction::query(static_cast<std::uint32_t>((h >> 16) % positions));
  };
}

CheckResult progress_check(const Scale& s, std::uint64_t seed) {
  CheckResult r = named("progress-measure", "S(0) = 0, S nondecreasing, Delta S <= 3 upsilon_min M");
  r.passed = true;
  auto ok = [](const ProgressTrace& t) {
    return sgn(t.progress.front()) == 0 && t.nondecreasing() && t.within_step_bound();
  };
  const RelationSystem perm = permutation_inversion_system(4);
  const QueryPolicy scan = [](std::span<const TranscriptEntry> tr) {
    for (const auto& e : tr) {
      if (e.symbol == 1) return PolicyAction::halt(0);
    }
    if (tr.size() < 2) return PolicyAction::query(static_cast<std::uint32_t>(tr.size()));
    return PolicyAction::halt(1);
  };
  const ProgressTrace pt = progress_trace(perm, scan, 2);
  r.passed = ok(pt) && pt.success_probability() == 1;
  const std::uint64_t systems = s.pick(20, 100);
  Rng rng(substream_seed(seed, 3000));
  for (std::uint64_t i = 0; i < systems; ++i) {
    const RelationSystem sys = random_system(rng);
    const auto depth = static_cast<std::uint32_t>(rng.below(sys.positions() + 2));
    if (!ok(progress_trace(sys, random_policy(rng.bits(), sys.positions()), depth))) {
      r.passed = false;
    }
  }
  r.detail = "permutation N=4 scan policy S(T)=" + to_string(pt.progress.back()) +
             " bound/step=" + to_string(pt.step_bound) + "; " + std::to_string(systems) +
             " random systems";
  return r;
}

CheckResult solver_check(const Scale& s, std::uint64_t seed) {
  CheckResult r = named("solvers", "classical solvers always return a verified local minimum");
  const std::uint64_t count = s.pick(1000, 10000);
  std::uint64_t bad = 0;
  Rng pick(substream_seed(seed, 4000));
  const char* generators[] = {"hitting-time", "staircase", "snake"};
  for (std::uint64_t i = 0; i < count; ++i) {
    GraphKind kind;
    switch (pick.below(4)) {
      case 0: kind = GraphKind::hypercube(static_cast<std::uint32_t>(1 + pick.below(12))); break;
      case 1: {
        const auto d = static_cast<std::uint32_t>(1 + pick.below(3));
        const auto side = static_cast<std::uint32_t>(2 + pick.below(d == 1 ? 63 : d == 2 ? 15 : 7));
        kind = GraphKind::grid(d, side);
        break;
      }
      case 2: kind = GraphKind::line(1 + pick.below(256)); break;
      default: kind = GraphKind::complete(1 + pick.below(64)); break;
    }
    const Graph g(kind);
    std::string gen = generators[pick.below(3)];
    const bool snake_ok = kind.family == Family::kHypercube || kind.family == Family::kGrid;
    if (gen == "snake" && !snake_ok) gen = "staircase";
    if (gen == "staircase" && g.size() == 1) gen = "hitting-time";  // no neighbor to step to
    Rng rng = Rng::for_trial(seed, i);
    Instance inst = gen == "hitting-time" ? hitting_time_instance(g, rng)
                    : gen == "staircase"  ? staircase_instance(g, rng.below(g.size()), rng)
                                          : snake_instance(g, sample_snake(g, rng.below(g.size()),
                                                                           default_length(kind), rng));
    std::vector<std::string> solvers = {"steepest-descent", "random-sample-descent"};
    if (kind.family == Family::kLine) solvers.push_back("line-binary-search");
    for (const auto& name : solvers) {
      QueryOracle oracle(inst);
      const SolverResult res = run_solver(name, g, oracle, rng, std::nullopt, std::nullopt);
      if (!res.verified || !is_local_min(inst, res.output)) ++bad;
    }
  }
  // Line binary search query cap over all value vectors in {0,1,2}^N, N <= 7,
  // plus every single-valley line up to N = 64.
  std::uint64_t over_cap = 0;
  for (std::uint64_t n = 1; n <= 7; ++n) {
    const Graph g(GraphKind::line(n));
    std::uint64_t combos = 1;
    for (std::uint64_t k = 0; k < n; ++k) combos *= 3;
    for (std::uint64_t c = 0; c < combos; ++c) {
      std::vector<std::uint64_t> v(n);
      std::uint64_t x = c;
      for (auto& e : v) {
        e = x % 3;
        x /= 3;
      }
      const Instance inst(g, v);
      QueryOracle oracle(inst);
      const SolverResult res = line_binary_search(g, oracle);
      if (!res.verified) ++bad;
      if (res.queries > line_query_cap(n)) ++over_cap;
    }
  }
  for (std::uint64_t n = 1; n <= 64; ++n) {
    const Graph g(GraphKind::line(n));
    for (std::uint64_t m = 0; m < n; ++m) {
      std::vector<std::uint64_t> v(n);
      for (std::uint64_t k = 0; k < n; ++k) v[k] = k > m ? k - m : m - k;
      const Instance inst(g, v);
      QueryOracle oracle(inst);
      const SolverResult res = line_binary_search(g, oracle);
      if (!res.verified) ++bad;
      if (res.queries > line_query_cap(n)) ++over_cap;
    }
  }
  // Sample descent cost scale on the 12-cube.
  const std::uint64_t per_seed = s.pick(40, 200);
  std::vector<double> ratios;
  for (std::uint64_t k = 0; k < 5; ++k) {
    ExperimentConfig cfg;
    cfg.experiment = "solver-benchmark";
    cfg.graph = GraphKind::hypercube(12);
    cfg.trials = per_seed;
    cfg.seed = substream_seed(seed, 5000 + k);
    const ExperimentReport rep = run_experiment(cfg);
    ratios.push_back(rep.find("queries.mean_over_sqrt_N_delta")->value);
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  double mean = 0;
  for (double x : ratios) mean += x / static_cast<double>(ratios.size());
  const bool stable = *hi <= 1.2 * mean && *lo >= 0.8 * mean;
  r.passed = bad == 0 && over_cap == 0 && *hi <= kSampleDescentRatioCap && stable;
  r.detail = "unverified=" + std::to_string(bad) + " over_cap=" + std::to_string(over_cap) +
             " rsd ratio in [" + fmt(*lo) + ", " + fmt(*hi) + "] cap " + fmt(kSampleDescentRatioCap);
  return r;
}

CheckResult goodness_check(const Scale& s, std::uint64_t seed, unsigned workers) {
  CheckResult r = named("goodness-scaling", "eps_hat L / n^2 stays bounded and p_agree >= 9/10 for >= 90% of snakes");
  r.passed = true;
  std::ostringstream os;
  const std::vector<std::uint32_t> dims =
      s.full ? std::vector<std::uint32_t>{10, 12, 14, 16} : std::vector<std::uint32_t>{10, 12};
  for (std::uint32_t n : dims) {
    ExperimentConfig cfg;
    cfg.experiment = "goodness";
    cfg.graph = GraphKind::hypercube(n);
    cfg.trials = s.pick(20, 50);
    cfg.seed = substream_seed(seed, 6000 + n);
    cfg.workers = workers;
    cfg.params = {{"flicks", s.pick(2000, 10000)}};
    const ExperimentReport rep = run_experiment(cfg);
    const double scaled = rep.find("eps_scaled.max")->value;
    const double ok_rate = rep.find("p_agree_ok_rate")->value;
    r.passed = r.passed && scaled <= kEpsScaledCap && ok_rate >= 0.9;
    os << "n=" << n << ": eps_scaled.max=" << fmt(scaled) << " p_agree_ok=" << fmt(ok_rate)
       << " (p_agree mean " << fmt(rep.find("p_agree.mean")->value) << ", head-side "
       << fmt(rep.find("p_agree_head_side.mean")->value) << "); ";
  }
  r.detail = os.str();
  return r;
}

}  // namespace

bool VerifySummary::passed() const {
  for (const CheckResult& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

VerifySummary verify_suite(VerifyLevel level, std::uint64_t seed, unsigned workers,
                           const std::function<void(const CheckResult&)>& on_check) {
  const Scale s{level == VerifyLevel::kFull};
  VerifySummary out;
  auto run = [&](const char* name, const std::function<CheckResult()>& check) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r.name = name;
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_check) on_check(r);
    out.checks.push_back(std::move(r));
  };
  run("permutation-adversary", [&] { return permutation_check(s); });
  run("snake-unique-minimum", [&] { return unique_minimum_check(s, seed); });
  run("intersect", [&] { return intersect_check(s, seed, workers); });
  run("mixing", [&] { return mixing_exact_check(s); });
  run("w-symmetry", [&] { return wsym_check(s); });
  run("flick-conditional", [&] { return flick_check(s, seed); });
  run("subgraph", [&] { return subgraph_check(s, seed, workers); });
  run("progress-measure", [&] { return progress_check(s, seed); });
  run("solvers", [&] { return solver_check(s, seed); });
  run("goodness-scaling", [&] { return goodness_check(s, seed, workers); });
  return out;
}

nlohmann::json to_json(const VerifySummary& summary) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : summary.checks) {
    checks.push_back({{"name", c.name},
                      {"claim", c.claim},
                      {"passed", c.passed},
                      {"detail", c.detail},
                      {"seconds", c.seconds}});
  }
  return {{"passed", summary.passed()}, {"checks", std::move(checks)}};
}

}  // namespace lslab
