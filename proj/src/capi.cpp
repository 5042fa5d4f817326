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

#include "lslab/lslab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "lslab/adversary.hpp"
#include "lslab/common.hpp"
#include "lslab/graph.hpp"
#include "lslab/harness.hpp"
#include "lslab/instance.hpp"
#include "lslab/snake.hpp"
#include "lslab/solvers.hpp"

struct lslab_graph {
  lslab::Graph graph;
};

struct lslab_instance {
  lslab::Instance inst;
};

struct lslab_oracle {
  explicit lslab_oracle(const lslab::Instance& i) : inst(i), oracle(inst) {}
  lslab::Instance inst;  // shares the dense value table with the source
  lslab::QueryOracle oracle;
};

struct lslab_snake {
  lslab::Snake snake;
};

struct lslab_relation {
  lslab::RelationSystem sys;
};

struct lslab_report {
  lslab::ExperimentReport rep;
};

namespace {

thread_local std::string g_last_error;

lslab_status fail(lslab_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

lslab_status map_code(lslab::ErrorCode c) {
  switch (c) {
    case lslab::ErrorCode::kInvalidArgument: return LSLAB_INVALID_ARGUMENT;
    case lslab::ErrorCode::kInvalidVertex: return LSLAB_INVALID_VERTEX;
    case lslab::ErrorCode::kBudgetExceeded: return LSLAB_BUDGET_EXCEEDED;
    case lslab::ErrorCode::kDegenerateRelation: return LSLAB_DEGENERATE_RELATION;
    case lslab::ErrorCode::kIo: return LSLAB_IO;
    case lslab::ErrorCode::kConfig: return LSLAB_CONFIG;
  }
  return LSLAB_INTERNAL;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
lslab_status guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return LSLAB_OK;
  } catch (const lslab::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(LSLAB_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LSLAB_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LSLAB_INTERNAL, e.what());
  } catch (...) {
    return fail(LSLAB_INTERNAL, "unknown error");
  }
}

[[noreturn]] void bad(const std::string& msg) {
  throw lslab::Error(lslab::ErrorCode::kInvalidArgument, msg);
}

template <typename T>
void need(const T* p, const char* what) {
  if (p == nullptr) bad(std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nlohmann::json parse(const char* text, const char* what) {
  need(text, what);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw lslab::Error(lslab::ErrorCode::kConfig, std::string(what) + ": " + e.what());
  }
}

lslab::CheckMode mode_of(int exact) {
  return exact ? lslab::CheckMode::kExact : lslab::CheckMode::kSampled;
}

lslab_status make_graph(const lslab::GraphKind& kind, lslab_graph** out) {
  return guard([&] {
    need(out, "out");
    *out = new lslab_graph{lslab::Graph(kind)};
  });
}

}  // namespace

extern "C" {

// ---- library ---------------------------------------------------------------

const char* lslab_version(void) { return "0.1.0"; }

const char* lslab_last_error(void) { return g_last_error.c_str(); }

const char* lslab_status_name(lslab_status status) {
  switch (status) {
    case LSLAB_OK: return "ok";
    case LSLAB_INVALID_ARGUMENT: return "invalid-argument";
    case LSLAB_INVALID_VERTEX: return "invalid-vertex";
    case LSLAB_BUDGET_EXCEEDED: return "budget-exceeded";
    case LSLAB_DEGENERATE_RELATION: return "degenerate-relation";
    case LSLAB_IO: return "io";
    case LSLAB_CONFIG: return "config";
    case LSLAB_INTERNAL: return "internal";
  }
  return "unknown";
}

void lslab_free_string(char* s) { std::free(s); }

uint64_t lslab_enumeration_cap(void) { return lslab::enumeration_cap(); }

// ---- graphs ----------------------------------------------------------------

lslab_status lslab_graph_create(const char* kind_json, lslab_graph** out) {
  lslab::GraphKind kind;
  lslab_status s = guard([&] { kind = lslab::graph_kind_from_json(parse(kind_json, "kind_json")); });
  return s == LSLAB_OK ? make_graph(kind, out) : s;
}

lslab_status lslab_graph_hypercube(uint32_t n, lslab_graph** out) {
  return make_graph(lslab::GraphKind::hypercube(n), out);
}

lslab_status lslab_graph_grid(uint32_t d, uint32_t side, lslab_graph** out) {
  return make_graph(lslab::GraphKind::grid(d, side), out);
}

lslab_status lslab_graph_line(uint64_t n, lslab_graph** out) {
  return make_graph(lslab::GraphKind::line(n), out);
}

lslab_status lslab_graph_complete(uint64_t n, lslab_graph** out) {
  return make_graph(lslab::GraphKind::complete(n), out);
}

void lslab_graph_destroy(lslab_graph* g) { delete g; }

uint64_t lslab_graph_size(const lslab_graph* g) { return g ? g->graph.size() : 0; }

uint32_t lslab_graph_max_degree(const lslab_graph* g) {
  return g ? g->graph.max_degree() : 0;
}

lslab_status lslab_graph_kind_json(const lslab_graph* g, char** out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    *out = dup(lslab::to_json(g->graph.kind()).dump());
  });
}

lslab_status lslab_graph_neighbors(const lslab_graph* g, uint64_t v, uint64_t* out,
                                   size_t capacity, size_t* count) {
  return guard([&] {
    need(g, "graph");
    need(count, "count");
    if (capacity > 0) need(out, "out");
    const std::vector<lslab::Vertex> nbrs = g->graph.neighbors(v);
    *count = nbrs.size();
    for (size_t i = 0; i < nbrs.size() && i < capacity; ++i) out[i] = nbrs[i];
  });
}

lslab_status lslab_graph_distance(const lslab_graph* g, uint64_t u, uint64_t v,
                                  uint64_t* out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    *out = g->graph.distance(u, v);
  });
}

// ---- instances and oracles -------------------------------------------------

lslab_status lslab_instance_generate(const lslab_graph* g, const char* generator,
                                     uint64_t seed, uint64_t length, lslab_instance** out) {
  return guard([&] {
    need(g, "graph");
    need(generator, "generator");
    need(out, "out");
    const lslab::Graph& graph = g->graph;
    lslab::Rng rng(seed);
    const std::string gen = generator;
    if (gen == "hitting-time") {
      *out = new lslab_instance{lslab::hitting_time_instance(graph, rng)};
    } else if (gen == "staircase") {
      const lslab::Vertex v = rng.below(graph.size());
      *out = new lslab_instance{lslab::staircase_instance(graph, v, rng)};
    } else if (gen == "snake") {
      const std::uint64_t L = length ? length : lslab::default_length(graph.kind());
      const lslab::Vertex h = rng.below(graph.size());
      const lslab::Snake x = lslab::sample_snake(graph, h, L, rng);
      *out = new lslab_instance{lslab::snake_instance(graph, x)};
    } else {
      throw lslab::Error(lslab::ErrorCode::kConfig, "unknown generator \"" + gen + "\"");
    }
  });
}

lslab_status lslab_instance_from_json(const char* json, lslab_instance** out) {
  return guard([&] {
    need(out, "out");
    *out = new lslab_instance{lslab::instance_from_json(parse(json, "instance json"))};
  });
}

lslab_status lslab_instance_to_json(const lslab_instance* inst, char** out) {
  return guard([&] {
    need(inst, "instance");
    need(out, "out");
    *out = dup(lslab::to_json(inst->inst).dump());
  });
}

void lslab_instance_destroy(lslab_instance* inst) { delete inst; }

lslab_status lslab_instance_value(const lslab_instance* inst, uint64_t v, uint64_t* out) {
  return guard([&] {
    need(inst, "instance");
    need(out, "out");
    inst->inst.graph().check(v);
    *out = inst->inst.value(v);
  });
}

lslab_status lslab_instance_minimum(const lslab_instance* inst, uint64_t* out,
                                    int* has_minimum) {
  return guard([&] {
    need(inst, "instance");
    need(out, "out");
    need(has_minimum, "has_minimum");
    const auto& m = inst->inst.minimum();
    *has_minimum = m.has_value() ? 1 : 0;
    *out = m.value_or(0);
  });
}

lslab_status lslab_instance_is_local_min(const lslab_instance* inst, uint64_t v, int* out) {
  return guard([&] {
    need(inst, "instance");
    need(out, "out");
    *out = lslab::is_local_min(inst->inst, v) ? 1 : 0;
  });
}

lslab_status lslab_instance_with_answer_bit(const lslab_instance* inst, int bit,
                                            lslab_instance** out) {
  return guard([&] {
    need(inst, "instance");
    need(out, "out");
    *out = new lslab_instance{lslab::decision_wrap(inst->inst, bit)};
  });
}

lslab_status lslab_instance_brute_force_minima(const lslab_instance* inst, uint64_t* out,
                                               size_t capacity, size_t* count) {
  return guard([&] {
    need(inst, "instance");
    need(count, "count");
    if (capacity > 0) need(out, "out");
    const std::vector<lslab::Vertex> mins = lslab::brute_force_minima(inst->inst);
    *count = mins.size();
    for (size_t i = 0; i < mins.size() && i < capacity; ++i) out[i] = mins[i];
  });
}

lslab_status lslab_oracle_create(const lslab_instance* inst, lslab_oracle** out) {
  return guard([&] {
    need(inst, "instance");
    need(out, "out");
    *out = new lslab_oracle(inst->inst);
  });
}

void lslab_oracle_destroy(lslab_oracle* oracle) { delete oracle; }

lslab_status lslab_oracle_query(lslab_oracle* oracle, uint64_t v, uint64_t* value, int* bit) {
  return guard([&] {
    need(oracle, "oracle");
    need(value, "value");
    const lslab::QueryAnswer a = oracle->oracle.query(v);
    *value = a.value;
    if (bit) *bit = a.bit.value_or(-1);
  });
}

uint64_t lslab_oracle_count(const lslab_oracle* oracle) {
  return oracle ? oracle->oracle.count() : 0;
}

lslab_status lslab_solve(const lslab_instance* inst, const char* solver, uint64_t seed,
                         char** result_json) {
  return guard([&] {
    need(inst, "instance");
    need(solver, "solver");
    need(result_json, "result_json");
    lslab::QueryOracle oracle(inst->inst);
    lslab::Rng rng(seed);
    const lslab::SolverResult r =
        lslab::run_solver(solver, inst->inst.graph(), oracle, rng, std::nullopt, std::nullopt);
    *result_json = dup(lslab::to_json(r).dump());
  });
}

lslab_status lslab_quantum_cost_model(double n_vertices, double max_degree, char** out) {
  return guard([&] {
    need(out, "out");
    *out = dup(lslab::to_json(lslab::quantum_cost_model(n_vertices, max_degree)).dump());
  });
}

// ---- snakes ----------------------------------------------------------------

lslab_status lslab_snake_sample(const lslab_graph* g, uint64_t head, uint64_t length,
                                uint64_t seed, lslab_snake** out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    lslab::Rng rng(seed);
    *out = new lslab_snake{lslab::sample_snake(g->graph, head, length, rng)};
  });
}

lslab_status lslab_snake_from_json(const char* json, lslab_snake** out) {
  return guard([&] {
    need(out, "out");
    lslab::Snake x = lslab::snake_from_json(parse(json, "snake json"));
    lslab::validate_snake(lslab::Graph(x.kind), x);
    *out = new lslab_snake{std::move(x)};
  });
}

lslab_status lslab_snake_to_json(const lslab_snake* x, char** out) {
  return guard([&] {
    need(x, "snake");
    need(out, "out");
    *out = dup(lslab::to_json(x->snake).dump());
  });
}

void lslab_snake_destroy(lslab_snake* x) { delete x; }

uint64_t lslab_snake_length(const lslab_snake* x) { return x ? x->snake.length() : 0; }

lslab_status lslab_snake_path(const lslab_snake* x, uint64_t* out, size_t capacity) {
  return guard([&] {
    need(x, "snake");
    if (capacity > 0) need(out, "out");
    const auto& p = x->snake.path;
    for (size_t i = 0; i < p.size() && i < capacity; ++i) out[i] = p[i];
  });
}

lslab_status lslab_snake_flick(const lslab_snake* x, uint64_t seed, lslab_snake** y,
                               uint64_t* j, int* agree) {
  return guard([&] {
    need(x, "snake");
    need(y, "y");
    lslab::Rng rng(seed);
    lslab::FlickResult r = lslab::flick_tail(lslab::Graph(x->snake.kind), x->snake, rng);
    if (j) *j = r.j;
    if (agree) *agree = r.agree ? 1 : 0;
    *y = new lslab_snake{std::move(r.y)};
  });
}

lslab_status lslab_snake_instance(const lslab_snake* x, lslab_instance** out) {
  return guard([&] {
    need(x, "snake");
    need(out, "out");
    *out = new lslab_instance{lslab::snake_instance(lslab::Graph(x->snake.kind), x->snake)};
  });
}

lslab_status lslab_snake_goodness(const lslab_snake* x, uint64_t trials, uint64_t seed,
                                  int exact, double* p_agree, double* eps_hat) {
  return guard([&] {
    need(x, "snake");
    if (!exact && trials == 0) bad("sampled goodness needs trials > 0");
    lslab::Rng rng(seed);
    const lslab::GoodnessEstimate e = lslab::goodness_estimate(
        lslab::Graph(x->snake.kind), x->snake, trials, rng, mode_of(exact));
    if (p_agree) *p_agree = e.p_agree;
    if (eps_hat) *eps_hat = e.eps_hat;
  });
}

lslab_status lslab_snake_sparseness(const lslab_snake* x, double c, int exact,
                                    uint64_t samples, uint64_t seed, int* sparse,
                                    char** report_json) {
  return guard([&] {
    need(x, "snake");
    lslab::Rng rng(seed);
    const lslab::SparsenessReport r = lslab::sparseness_check(
        lslab::Graph(x->snake.kind), x->snake, c, mode_of(exact), samples, &rng);
    if (sparse) *sparse = r.sparse ? 1 : 0;
    if (report_json) {
      nlohmann::json j = {{"sparse", r.sparse},
                          {"c", r.c},
                          {"worst_vertex", r.worst_vertex},
                          {"worst_k", r.worst_k},
                          {"worst_count", r.worst_count},
                          {"worst_threshold", r.worst_threshold},
                          {"expected", r.expected},
                          {"vertices_checked", r.vertices_checked}};
      *report_json = dup(j.dump());
    }
  });
}

lslab_status lslab_mixing_check(const lslab_graph* g, uint64_t start, uint64_t gap,
                                double* deviation) {
  return guard([&] {
    need(g, "graph");
    need(deviation, "deviation");
    *deviation = lslab::mixing_check(g->graph.kind(), start, gap);
  });
}

// ---- adversary -------------------------------------------------------------

lslab_status lslab_relation_from_json(const char* json, lslab_relation** out) {
  return guard([&] {
    need(out, "out");
    *out = new lslab_relation{lslab::relation_system_from_json(parse(json, "relation json"))};
  });
}

lslab_status lslab_relation_permutation(uint32_t n, lslab_relation** out) {
  return guard([&] {
    need(out, "out");
    *out = new lslab_relation{lslab::permutation_inversion_system(n)};
  });
}

lslab_status lslab_relation_snake(uint32_t n, uint64_t length, lslab_relation** out) {
  return guard([&] {
    need(out, "out");
    *out = new lslab_relation{lslab::snake_relation_system(n, length).system};
  });
}

void lslab_relation_destroy(lslab_relation* rel) { delete rel; }

lslab_status lslab_relation_counts(const lslab_relation* rel, size_t* a_count,
                                   size_t* b_count, size_t* positions) {
  return guard([&] {
    need(rel, "relation");
    if (a_count) *a_count = rel->sys.a_count();
    if (b_count) *b_count = rel->sys.b_count();
    if (positions) *positions = rel->sys.positions();
  });
}

lslab_status lslab_relation_total(const lslab_relation* rel, char** out) {
  return guard([&] {
    need(rel, "relation");
    need(out, "out");
    *out = dup(lslab::to_string(rel->sys.total()));
  });
}

lslab_status lslab_relation_theta(const lslab_relation* rel, int side_b, uint32_t input,
                                  uint32_t position, char** out) {
  return guard([&] {
    need(rel, "relation");
    need(out, "out");
    const lslab::Side side = side_b ? lslab::Side::kB : lslab::Side::kA;
    *out = dup(lslab::to_string(lslab::theta(rel->sys, side, input, position)));
  });
}

lslab_status lslab_relation_bounds(const lslab_relation* rel, char** report_json) {
  return guard([&] {
    need(rel, "relation");
    need(report_json, "report_json");
    *report_json = dup(lslab::to_json(lslab::upsilon_bounds(rel->sys)).dump());
  });
}

lslab_status lslab_subgraph_prune(const char* problem_json, char** result_json) {
  return guard([&] {
    need(result_json, "result_json");
    const nlohmann::json j = parse(problem_json, "problem json");
    if (!j.is_object() || !j.contains("p") || !j.contains("w") || !j.contains("r")) {
      throw lslab::Error(lslab::ErrorCode::kConfig, "problem needs \"p\", \"w\" and \"r\"");
    }
    std::vector<lslab::Rational> p;
    lslab::Rational sum = 0;
    for (const auto& e : j.at("p")) {
      p.push_back(lslab::parse_rational(e));
      sum += p.back();
    }
    if (sum <= 0) bad("p must have positive total mass");
    for (auto& q : p) q /= sum;
    std::vector<std::vector<lslab::Rational>> w;
    for (const auto& row : j.at("w")) {
      auto& out = w.emplace_back();
      for (const auto& e : row) out.push_back(lslab::parse_rational(e));
    }
    const std::vector<std::size_t> kept =
        lslab::subgraph_prune(p, w, lslab::parse_rational(j.at("r")));
    *result_json = dup(nlohmann::json{{"U", kept}}.dump());
  });
}

// ---- experiments -----------------------------------------------------------

lslab_status lslab_run_experiment(const char* config_json, lslab_report** out) {
  return guard([&] {
    need(out, "out");
    const lslab::ExperimentConfig cfg = lslab::config_from_json(parse(config_json, "config"));
    *out = new lslab_report{lslab::run_experiment(cfg)};
  });
}

void lslab_report_destroy(lslab_report* rep) { delete rep; }

lslab_status lslab_report_render(const lslab_report* rep, const char* format, char** out) {
  return guard([&] {
    need(rep, "report");
    need(format, "format");
    need(out, "out");
    *out = dup(lslab::render_report(rep->rep, format));
  });
}

lslab_status lslab_emit_report(const lslab_report* rep, const char* path, const char* format) {
  return guard([&] {
    need(rep, "report");
    need(path, "path");
    need(format, "format");
    lslab::emit_report(rep->rep, path, format);
  });
}

lslab_status lslab_verify_suite(const char* level, uint64_t seed, unsigned workers,
                                lslab_check_callback on_check, void* user, int* passed,
                                char** summary_json) {
  return guard([&] {
    need(level, "level");
    const std::string lv = level;
    lslab::VerifyLevel vl;
    if (lv == "quick") {
      vl = lslab::VerifyLevel::kQuick;
    } else if (lv == "full") {
      vl = lslab::VerifyLevel::kFull;
    } else {
      throw lslab::Error(lslab::ErrorCode::kConfig, "level must be quick or full");
    }
    std::function<void(const lslab::CheckResult&)> cb;
    if (on_check) {
      cb = [&](const lslab::CheckResult& r) {
        const nlohmann::json j = {{"name", r.name},     {"claim", r.claim},
                                  {"passed", r.passed}, {"detail", r.detail},
                                  {"seconds", r.seconds}};
        on_check(j.dump().c_str(), user);
      };
    }
    const lslab::VerifySummary s = lslab::verify_suite(vl, seed, workers ? workers : 1, cb);
    if (passed) *passed = s.passed() ? 1 : 0;
    if (summary_json) *summary_json = dup(lslab::to_json(s).dump());
  });
}

}  // extern "C"
