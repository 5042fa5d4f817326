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

// lslab command line. Exit codes: 0 success, 1 a verification check failed,
// 2 bad configuration or any other error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "lslab/lslab.h"

namespace {

using nlohmann::json;

constexpr int kExitCheckFailed = 1;
constexpr int kExitError = 2;

// Carries a status out of nested helpers.
struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(lslab_status s) {
  if (s != LSLAB_OK) {
    throw Failure(std::string(lslab_status_name(s)) + ": " + lslab_last_error());
  }
}

std::string take(char* s) {
  std::string out = s ? s : "";
  lslab_free_string(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure("io: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Failure("config: " + path + ": " + e.what());
  }
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw Failure("io: cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

struct GraphFlags {
  std::string family;
  std::optional<std::uint32_t> n, d, side;
  std::optional<std::uint64_t> N;

  void add(CLI::App* app) {
    app->add_option("--family", family, "hypercube | grid | line | complete");
    app->add_option("--n", n, "hypercube dimension");
    app->add_option("--d", d, "grid dimension");
    app->add_option("--side", side, "grid side length");
    app->add_option("--N", N, "vertex count (line, complete)");
  }

  bool given() const { return !family.empty() || n || d || side || N; }

  json kind() const {
    std::string fam = family;
    if (fam.empty()) {
      if (d || side) {
        fam = "grid";
      } else if (n) {
        fam = "hypercube";
      } else if (N) {
        fam = "line";
      } else {
        throw Failure("config: no graph given (use --family with --n, --d/--side or --N)");
      }
    }
    if (fam == "hypercube") {
      if (!n) throw Failure("config: hypercube needs --n");
      return {{"family", fam}, {"n", *n}};
    }
    if (fam == "grid") {
      if (!d || !side) throw Failure("config: grid needs --d and --side");
      return {{"family", fam}, {"d", *d}, {"side", *side}};
    }
    if (fam == "line" || fam == "complete") {
      if (!N) throw Failure("config: " + fam + " needs --N");
      return {{"family", fam}, {"N", *N}};
    }
    throw Failure("config: unknown family \"" + fam + "\"");
  }
};

// RAII wrappers over the opaque handles.
struct Graph {
  lslab_graph* g = nullptr;
  ~Graph() { lslab_graph_destroy(g); }
};
struct Inst {
  lslab_instance* i = nullptr;
  ~Inst() { lslab_instance_destroy(i); }
};
struct Relation {
  lslab_relation* r = nullptr;
  ~Relation() { lslab_relation_destroy(r); }
};
struct Report {
  lslab_report* r = nullptr;
  ~Report() { lslab_report_destroy(r); }
};

void generate(const GraphFlags& gf, const std::string& generator, std::uint64_t seed,
              std::uint64_t length, Inst& out) {
  Graph g;
  check(lslab_graph_create(gf.kind().dump().c_str(), &g.g));
  check(lslab_instance_generate(g.g, generator.c_str(), seed, length, &out.i));
}

void verify_callback(const char* check_json, void* user) {
  if (*static_cast<bool*>(user)) return;  // json output: stay quiet
  const json j = json::parse(check_json);
  std::fprintf(stderr, "%s %-20s %7.2fs  %s\n", j["passed"].get<bool>() ? "PASS" : "FAIL",
               j["name"].get<std::string>().c_str(), j["seconds"].get<double>(),
               j["detail"].get<std::string>().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local search lower-bound laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lslab_version());

  std::uint64_t seed = 1;
  std::string out = "-";
  std::string format;
  unsigned workers = 1;

  // gen-instance
  auto* gen = app.add_subcommand("gen-instance", "Generate an instance and write it as JSON");
  GraphFlags gen_graph;
  gen_graph.add(gen);
  std::string gen_generator = "hitting-time";
  std::uint64_t gen_length = 0;
  gen->add_option("--generator", gen_generator, "hitting-time | staircase | snake");
  gen->add_option("--L", gen_length, "snake length (0: default)");
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--out", out, "output file, - for stdout");

  // solve
  auto* solve = app.add_subcommand("solve", "Run a classical solver on an instance");
  GraphFlags solve_graph;
  solve_graph.add(solve);
  std::string solve_instance, solve_solver = "random-sample-descent",
                              solve_generator = "hitting-time";
  std::uint64_t solve_length = 0;
  solve->add_option("--instance", solve_instance, "instance JSON file");
  solve->add_option("--generator", solve_generator, "generator when no --instance is given");
  solve->add_option("--L", solve_length, "snake length (0: default)");
  solve->add_option("--solver", solve_solver,
                    "steepest-descent | random-sample-descent | line-binary-search");
  solve->add_option("--seed", seed, "random seed");
  solve->add_option("--out", out, "output file, - for stdout");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the verification suite");
  std::string level = "quick";
  verify->add_option("--level", level, "quick | full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--workers", workers, "worker threads");
  verify->add_option("--format", format, "text | json");
  verify->add_option("--out", out, "summary output file, - for stdout");

  // adversary
  auto* adv = app.add_subcommand("adversary", "Compute adversary bounds of a relation system");
  std::string adv_family = "permutation", adv_config;
  std::uint32_t adv_N = 4, adv_n = 4;
  std::uint64_t adv_L = 0;
  adv->add_option("--family", adv_family, "permutation | snake | file");
  adv->add_option("--N", adv_N, "permutation size");
  adv->add_option("--n", adv_n, "hypercube dimension for snake systems");
  adv->add_option("--L", adv_L, "snake length");
  adv->add_option("--config", adv_config, "relation system JSON file");
  adv->add_option("--out", out, "output file, - for stdout");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run an experiment and emit CSV or JSON");
  GraphFlags sweep_graph;
  sweep_graph.add(sweep);
  std::string sweep_config, sweep_experiment, sweep_generator, sweep_solver;
  std::optional<std::uint64_t> sweep_trials, sweep_length, sweep_seed;
  std::optional<unsigned> sweep_workers;
  sweep->add_option("--config", sweep_config, "experiment config JSON file");
  sweep->add_option("--experiment", sweep_experiment, "experiment name");
  sweep->add_option("--generator", sweep_generator, "instance generator");
  sweep->add_option("--solver", sweep_solver, "solver name");
  sweep->add_option("--L", sweep_length, "snake length");
  sweep->add_option("--trials", sweep_trials, "trial count");
  sweep->add_option("--seed", sweep_seed, "random seed");
  sweep->add_option("--workers", sweep_workers, "worker threads");
  sweep->add_option("--format", format, "csv | json");
  sweep->add_option("--out", out, "output file, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (gen->parsed()) {
      Inst inst;
      generate(gen_graph, gen_generator, seed, gen_length, inst);
      char* s = nullptr;
      check(lslab_instance_to_json(inst.i, &s));
      write_out(out, take(s));
      return 0;
    }

    if (solve->parsed()) {
      Inst inst;
      if (!solve_instance.empty()) {
        check(lslab_instance_from_json(read_file(solve_instance).c_str(), &inst.i));
      } else if (solve_graph.given()) {
        generate(solve_graph, solve_generator, seed, solve_length, inst);
      } else {
        throw Failure("config: solve needs --instance or a graph");
      }
      char* s = nullptr;
      check(lslab_solve(inst.i, solve_solver.c_str(), seed, &s));
      write_out(out, json::parse(take(s)).dump(2));
      return 0;
    }

    if (verify->parsed()) {
      if (format.empty()) format = "text";
      if (format != "text" && format != "json") throw Failure("config: format must be text or json");
      bool quiet = format == "json";
      int passed = 0;
      char* s = nullptr;
      check(lslab_verify_suite(level.c_str(), seed, workers, verify_callback, &quiet, &passed,
                               &s));
      const json summary = json::parse(take(s));
      if (format == "json") {
        write_out(out, summary.dump(2));
      } else {
        std::ostringstream txt;
        std::size_t ok = 0;
        for (const auto& c : summary["checks"]) {
          ok += c["passed"].get<bool>() ? 1 : 0;
          txt << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>()
              << ": " << c["claim"].get<std::string>() << '\n';
        }
        txt << ok << '/' << summary["checks"].size() << " checks passed\n";
        write_out(out, txt.str());
      }
      return passed ? 0 : kExitCheckFailed;
    }

    if (adv->parsed()) {
      Relation rel;
      if (!adv_config.empty() || adv_family == "file") {
        if (adv_config.empty()) throw Failure("config: --family file needs --config");
        check(lslab_relation_from_json(read_file(adv_config).c_str(), &rel.r));
      } else if (adv_family == "permutation") {
        check(lslab_relation_permutation(adv_N, &rel.r));
      } else if (adv_family == "snake") {
        if (adv_L == 0) throw Failure("config: snake systems need --L");
        check(lslab_relation_snake(adv_n, adv_L, &rel.r));
      } else {
        throw Failure("config: unknown family \"" + adv_family + "\"");
      }
      char* s = nullptr;
      check(lslab_relation_bounds(rel.r, &s));
      json rep = json::parse(take(s));
      std::size_t a = 0, b = 0, m = 0;
      check(lslab_relation_counts(rel.r, &a, &b, &m));
      char* total = nullptr;
      check(lslab_relation_total(rel.r, &total));
      rep["a_count"] = a;
      rep["b_count"] = b;
      rep["positions"] = m;
      rep["total_weight"] = take(total);
      write_out(out, rep.dump(2));
      return 0;
    }

    if (sweep->parsed()) {
      json cfg = sweep_config.empty() ? json::object() : read_json(sweep_config);
      if (!cfg.is_object()) throw Failure("config: experiment config must be an object");
      if (!sweep_experiment.empty()) cfg["experiment"] = sweep_experiment;
      if (sweep_graph.given()) cfg["graph"] = sweep_graph.kind();
      if (!sweep_generator.empty()) cfg["generator"] = sweep_generator;
      if (!sweep_solver.empty()) cfg["solver"] = sweep_solver;
      if (sweep_length) cfg["L"] = *sweep_length;
      if (sweep_trials) cfg["trials"] = *sweep_trials;
      if (sweep_seed) cfg["seed"] = *sweep_seed;
      if (sweep_workers) cfg["workers"] = *sweep_workers;
      if (!format.empty()) cfg["format"] = format;
      const std::string fmt = cfg.value("format", std::string("csv"));
      Report rep;
      check(lslab_run_experiment(cfg.dump().c_str(), &rep.r));
      check(lslab_emit_report(rep.r, out.c_str(), fmt.c_str()));
      return 0;
    }
  } catch (const Failure& e) {
    std::fprintf(stderr, "lslab: %s\n", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "lslab: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
