/*
 * Copyright 2026 The lslab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to lslab.
 *
 * Conventions:
 *   - Every fallible call returns an lslab_status; on failure the message is
 *     available from lslab_last_error() on the same thread.
 *   - Objects are opaque handles released with the matching _destroy call.
 *     Destroy functions accept NULL.
 *   - Strings returned through char** are heap-allocated and must be released
 *     with lslab_free_string().
 *   - Vertices are canonical 64-bit indices (hypercube: bit i is coordinate i;
 *     grid: mixed radix, coordinate 0 least significant).
 *   - Handles are not internally synchronized; share them across threads
 *     only for read-only calls.
 */

#ifndef LSLAB_LSLAB_H_
#define LSLAB_LSLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(LSLAB_BUILDING_LIBRARY)
#define LSLAB_API __declspec(dllexport)
#else
#define LSLAB_API __declspec(dllimport)
#endif
#else
#define LSLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lslab_status {
  LSLAB_OK = 0,
  LSLAB_INVALID_ARGUMENT = 1,
  LSLAB_INVALID_VERTEX = 2,
  LSLAB_BUDGET_EXCEEDED = 3,
  LSLAB_DEGENERATE_RELATION = 4,
  LSLAB_IO = 5,
  LSLAB_CONFIG = 6,
  LSLAB_INTERNAL = 7
} lslab_status;

typedef struct lslab_graph lslab_graph;
typedef struct lslab_instance lslab_instance;
typedef struct lslab_oracle lslab_oracle;
typedef struct lslab_snake lslab_snake;
typedef struct lslab_relation lslab_relation;
typedef struct lslab_report lslab_report;

/* ---- library ---------------------------------------------------------- */

LSLAB_API const char* lslab_version(void);
/* Message of the last failed call on this thread ("" if none). */
LSLAB_API const char* lslab_last_error(void);
LSLAB_API const char* lslab_status_name(lslab_status status);
LSLAB_API void lslab_free_string(char* s);
/* Current enumeration cap (LSLAB_BUDGET or the built-in default). */
LSLAB_API uint64_t lslab_enumeration_cap(void);

/* ---- graphs ----------------------------------------------------------- */

/* kind_json: {"family":"hypercube","n":12}, {"family":"grid","d":3,"side":8},
 * {"family":"line","N":64} or {"family":"complete","N":16}. */
LSLAB_API lslab_status lslab_graph_create(const char* kind_json, lslab_graph** out);
LSLAB_API lslab_status lslab_graph_hypercube(uint32_t n, lslab_graph** out);
LSLAB_API lslab_status lslab_graph_grid(uint32_t d, uint32_t side, lslab_graph** out);
LSLAB_API lslab_status lslab_graph_line(uint64_t n, lslab_graph** out);
LSLAB_API lslab_status lslab_graph_complete(uint64_t n, lslab_graph** out);
LSLAB_API void lslab_graph_destroy(lslab_graph* g);

LSLAB_API uint64_t lslab_graph_size(const lslab_graph* g);
LSLAB_API uint32_t lslab_graph_max_degree(const lslab_graph* g);
LSLAB_API lslab_status lslab_graph_kind_json(const lslab_graph* g, char** out);
/* Writes up to `capacity` neighbors in ascending order; *count receives the
 * degree even when it exceeds capacity. */
LSLAB_API lslab_status lslab_graph_neighbors(const lslab_graph* g, uint64_t v, uint64_t* out,
                                             size_t capacity, size_t* count);
LSLAB_API lslab_status lslab_graph_distance(const lslab_graph* g, uint64_t u, uint64_t v,
                                            uint64_t* out);

/* ---- instances and oracles -------------------------------------------- */

/* generator: "hitting-time", "staircase" or "snake" (uses `length`, 0 picks
 * the default length). */
LSLAB_API lslab_status lslab_instance_generate(const lslab_graph* g, const char* generator,
                                               uint64_t seed, uint64_t length,
                                               lslab_instance** out);
LSLAB_API lslab_status lslab_instance_from_json(const char* json, lslab_instance** out);
LSLAB_API lslab_status lslab_instance_to_json(const lslab_instance* inst, char** out);
LSLAB_API void lslab_instance_destroy(lslab_instance* inst);

LSLAB_API lslab_status lslab_instance_value(const lslab_instance* inst, uint64_t v,
                                            uint64_t* out);
/* *has_minimum is 0 when the generator declared no designated minimum. */
LSLAB_API lslab_status lslab_instance_minimum(const lslab_instance* inst, uint64_t* out,
                                              int* has_minimum);
LSLAB_API lslab_status lslab_instance_is_local_min(const lslab_instance* inst, uint64_t v,
                                                   int* out);
/* Copy with answer bit 0 or 1 attached at the designated minimum. */
LSLAB_API lslab_status lslab_instance_with_answer_bit(const lslab_instance* inst, int bit,
                                                      lslab_instance** out);
LSLAB_API lslab_status lslab_instance_brute_force_minima(const lslab_instance* inst,
                                                         uint64_t* out, size_t capacity,
                                                         size_t* count);

/* The oracle keeps its own reference to the instance data. */
LSLAB_API lslab_status lslab_oracle_create(const lslab_instance* inst, lslab_oracle** out);
LSLAB_API void lslab_oracle_destroy(lslab_oracle* oracle);
/* *bit is -1 unless v is the designated minimum of an instance with a bit. */
LSLAB_API lslab_status lslab_oracle_query(lslab_oracle* oracle, uint64_t v, uint64_t* value,
                                          int* bit);
LSLAB_API uint64_t lslab_oracle_count(const lslab_oracle* oracle);

/* solver: "steepest-descent", "random-sample-descent", "line-binary-search".
 * Result JSON: {"output","queries","moves","verified"}. */
LSLAB_API lslab_status lslab_solve(const lslab_instance* inst, const char* solver,
                                   uint64_t seed, char** result_json);
/* Analytic cost model of the quantum local search algorithm (JSON). */
LSLAB_API lslab_status lslab_quantum_cost_model(double n_vertices, double max_degree,
                                                char** out);

/* ---- snakes ----------------------------------------------------------- */

LSLAB_API lslab_status lslab_snake_sample(const lslab_graph* g, uint64_t head, uint64_t length,
                                          uint64_t seed, lslab_snake** out);
LSLAB_API lslab_status lslab_snake_from_json(const char* json, lslab_snake** out);
LSLAB_API lslab_status lslab_snake_to_json(const lslab_snake* x, char** out);
LSLAB_API void lslab_snake_destroy(lslab_snake* x);

LSLAB_API uint64_t lslab_snake_length(const lslab_snake* x);
/* Copies min(L, capacity) vertices x_0, x_1, ... into out. */
LSLAB_API lslab_status lslab_snake_path(const lslab_snake* x, uint64_t* out, size_t capacity);
/* Flicks the tail (j uniform in [0, L)); *agree reports X and Y intersect
 * exactly in S_XY. */
LSLAB_API lslab_status lslab_snake_flick(const lslab_snake* x, uint64_t seed, lslab_snake** y,
                                         uint64_t* j, int* agree);
LSLAB_API lslab_status lslab_snake_instance(const lslab_snake* x, lslab_instance** out);
/* exact != 0 enumerates every regrowth; otherwise `trials` flicks. */
LSLAB_API lslab_status lslab_snake_goodness(const lslab_snake* x, uint64_t trials, uint64_t seed,
                                            int exact, double* p_agree, double* eps_hat);
/* exact == 0 checks `samples` uniformly drawn vertices. */
LSLAB_API lslab_status lslab_snake_sparseness(const lslab_snake* x, double c, int exact,
                                              uint64_t samples, uint64_t seed, int* sparse,
                                              char** report_json);
LSLAB_API lslab_status lslab_mixing_check(const lslab_graph* g, uint64_t start, uint64_t gap,
                                          double* deviation);

/* ---- adversary -------------------------------------------------------- */

LSLAB_API lslab_status lslab_relation_from_json(const char* json, lslab_relation** out);
LSLAB_API lslab_status lslab_relation_permutation(uint32_t n, lslab_relation** out);
LSLAB_API lslab_status lslab_relation_snake(uint32_t n, uint64_t length, lslab_relation** out);
LSLAB_API void lslab_relation_destroy(lslab_relation* rel);

LSLAB_API lslab_status lslab_relation_counts(const lslab_relation* rel, size_t* a_count,
                                             size_t* b_count, size_t* positions);
/* Total weight M as an exact rational string "p/q" or "p". */
LSLAB_API lslab_status lslab_relation_total(const lslab_relation* rel, char** out);
/* side_b == 0 selects an A-input, otherwise a B-input; result is exact. */
LSLAB_API lslab_status lslab_relation_theta(const lslab_relation* rel, int side_b,
                                            uint32_t input, uint32_t position, char** out);
/* AdversaryReport JSON with exact rationals as strings. */
LSLAB_API lslab_status lslab_relation_bounds(const lslab_relation* rel, char** report_json);

/* problem_json: {"p":[...], "w":[[...]], "r": ...}; p is normalized to sum 1.
 * Result: {"U":[indices]}. */
LSLAB_API lslab_status lslab_subgraph_prune(const char* problem_json, char** result_json);

/* ---- experiments ------------------------------------------------------ */

LSLAB_API lslab_status lslab_run_experiment(const char* config_json, lslab_report** out);
LSLAB_API void lslab_report_destroy(lslab_report* rep);
/* format: "csv" or "json". */
LSLAB_API lslab_status lslab_report_render(const lslab_report* rep, const char* format,
                                           char** out);
/* path "-" writes to stdout. */
LSLAB_API lslab_status lslab_emit_report(const lslab_report* rep, const char* path,
                                         const char* format);

/* Called once per finished check with a JSON object
 * {"name","claim","passed","detail","seconds"}. */
typedef void (*lslab_check_callback)(const char* check_json, void* user);

/* level: "quick" or "full". *passed is 1 when every check passed. */
LSLAB_API lslab_status lslab_verify_suite(const char* level, uint64_t seed, unsigned workers,
                                          lslab_check_callback on_check, void* user,
                                          int* passed, char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* LSLAB_LSLAB_H_ */
