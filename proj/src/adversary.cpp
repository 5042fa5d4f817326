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

#include "lslab/adversary.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>

namespace lslab {

namespace {

[[noreturn]] void invalid(const std::string& msg) {
  throw Error(ErrorCode::kInvalidArgument, msg);
}

bool differs(const std::vector<Symbol>& a, const std::vector<Symbol>& b, std::size_t x) {
  return a[x] != b[x];
}

// Per-input numerators of theta for every position, divided by the mass.
std::vector<std::vector<Rational>> theta_table(const RelationSystem& sys, Side side) {
  const bool on_a = side == Side::kA;
  const std::size_t count = on_a ? sys.a_count() : sys.b_count();
  std::vector<std::vector<Rational>> t(count, std::vector<Rational>(sys.positions()));
  for (const RelationEntry& e : sys.entries()) {
    const auto& av = sys.a_inputs()[e.a];
    const auto& bv = sys.b_inputs()[e.b];
    auto& row = t[on_a ? e.a : e.b];
    for (std::size_t x = 0; x < sys.positions(); ++x) {
      if (differs(av, bv, x)) row[x] += e.weight;
    }
  }
  for (std::uint32_t i = 0; i < count; ++i) {
    const Rational& m = on_a ? sys.mass_a(i) : sys.mass_b(i);
    for (Rational& q : t[i]) q /= m;
  }
  return t;
}

Rational parse_decimal(const std::string& s) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool any = false, dot = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any = true;
      if (dot) ++scale;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  long exponent = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    try {
      std::size_t used = 0;
      exponent = std::stol(s.substr(i + 1), &used);
      i += 1 + used;
    } catch (const std::exception&) {
      invalid("bad rational \"" + s + "\"");
    }
  }
  if (!any || i != s.size()) invalid("bad rational \"" + s + "\"");
  mpz_class num(digits, 10);
  mpz_class ten_pow;
  const long shift = exponent - scale;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  Rational q = shift >= 0 ? Rational(num * ten_pow) : Rational(num, ten_pow);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

}  // namespace

RelationSystem::RelationSystem(std::size_t positions, InputTable a_inputs,
                               InputTable b_inputs, std::vector<RelationEntry> entries)
    : positions_(positions), a_inputs_(std::move(a_inputs)), b_inputs_(std::move(b_inputs)) {
  if (a_inputs_.empty() || b_inputs_.empty()) invalid("relation system: empty input set");
  if (a_inputs_.size() > std::numeric_limits<std::uint32_t>::max() ||
      b_inputs_.size() > std::numeric_limits<std::uint32_t>::max()) {
    invalid("relation system: too many inputs");
  }
  for (const auto* table : {&a_inputs_, &b_inputs_}) {
    for (const auto& in : *table) {
      if (in.size() != positions_) invalid("relation system: input length != positions");
    }
  }
  entries_.reserve(entries.size());
  for (RelationEntry& e : entries) {
    if (e.a >= a_inputs_.size() || e.b >= b_inputs_.size()) {
      invalid("relation system: entry index out of range");
    }
    if (sgn(e.weight) < 0) invalid("relation system: negative weight");
    if (sgn(e.weight) == 0) continue;
    e.weight.canonicalize();
    entries_.push_back(std::move(e));
  }
  std::sort(entries_.begin(), entries_.end(), [](const auto& l, const auto& r) {
    return std::tie(l.a, l.b) < std::tie(r.a, r.b);
  });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].a == entries_[i - 1].a && entries_[i].b == entries_[i - 1].b) {
      invalid("relation system: duplicate entry");
    }
  }

  mass_a_.assign(a_inputs_.size(), Rational(0));
  mass_b_.assign(b_inputs_.size(), Rational(0));
  row_start_.assign(a_inputs_.size() + 1, 0);
  col_start_.assign(b_inputs_.size() + 1, 0);
  for (const RelationEntry& e : entries_) {
    mass_a_[e.a] += e.weight;
    mass_b_[e.b] += e.weight;
    total_ += e.weight;
    ++row_start_[e.a + 1];
    ++col_start_[e.b + 1];
  }
  for (std::size_t i = 0; i < a_inputs_.size(); ++i) {
    if (sgn(mass_a_[i]) == 0) {
      throw Error(ErrorCode::kDegenerateRelation,
                  "relation system: A-input " + std::to_string(i) + " has zero weight");
    }
  }
  for (std::size_t i = 0; i < b_inputs_.size(); ++i) {
    if (sgn(mass_b_[i]) == 0) {
      throw Error(ErrorCode::kDegenerateRelation,
                  "relation system: B-input " + std::to_string(i) + " has zero weight");
    }
  }
  std::partial_sum(row_start_.begin(), row_start_.end(), row_start_.begin());
  std::partial_sum(col_start_.begin(), col_start_.end(), col_start_.begin());
  // Entries are sorted by row, so row r owns ids row_start_[r]..row_start_[r+1].
  row_entries_.resize(entries_.size());
  std::iota(row_entries_.begin(), row_entries_.end(), 0u);
  col_entries_.resize(entries_.size());
  std::vector<std::uint32_t> fill(col_start_.begin(), col_start_.end() - 1);
  for (std::uint32_t i = 0; i < entries_.size(); ++i) {
    col_entries_[fill[entries_[i].b]++] = i;
  }
}

std::span<const std::uint32_t> RelationSystem::row(std::uint32_t a) const {
  if (a >= a_count()) invalid("relation system: unknown A-input");
  return {row_entries_.data() + row_start_[a], row_entries_.data() + row_start_[a + 1]};
}

std::span<const std::uint32_t> RelationSystem::column(std::uint32_t b) const {
  if (b >= b_count()) invalid("relation system: unknown B-input");
  return {col_entries_.data() + col_start_[b], col_entries_.data() + col_start_[b + 1]};
}

Rational RelationSystem::weight(std::uint32_t a, std::uint32_t b) const {
  if (a >= a_count() || b >= b_count()) invalid("relation system: unknown input");
  auto first = entries_.begin() + row_start_[a];
  auto last = entries_.begin() + row_start_[a + 1];
  auto it = std::lower_bound(first, last, b,
                             [](const RelationEntry& e, std::uint32_t v) { return e.b < v; });
  return it != last && it->b == b ? it->weight : Rational(0);
}

Rational theta(const RelationSystem& sys, Side side, std::uint32_t input,
               std::uint32_t position) {
  if (position >= sys.positions()) invalid("theta: unknown position");
  const bool on_a = side == Side::kA;
  Rational sum;
  auto ids = on_a ? sys.row(input) : sys.column(input);
  for (std::uint32_t id : ids) {
    const RelationEntry& e = sys.entries()[id];
    if (differs(sys.a_inputs()[e.a], sys.b_inputs()[e.b], position)) sum += e.weight;
  }
  sum /= on_a ? sys.mass_a(input) : sys.mass_b(input);
  return sum;
}

AdversaryReport upsilon_bounds(const RelationSystem& sys) {
  const auto ta = theta_table(sys, Side::kA);
  const auto tb = theta_table(sys, Side::kB);
  AdversaryReport rep;
  bool found = false;
  Rational g, m;
  for (const RelationEntry& e : sys.entries()) {
    const auto& av = sys.a_inputs()[e.a];
    const auto& bv = sys.b_inputs()[e.b];
    for (std::uint32_t x = 0; x < sys.positions(); ++x) {
      if (!differs(av, bv, x)) continue;
      const Rational& qa = ta[e.a][x];
      const Rational& qb = tb[e.b][x];
      g = qa * qb;
      m = qa < qb ? qa : qb;
      if (!found || g > rep.upsilon_geom_squared) {
        rep.upsilon_geom_squared = g;
        rep.geom_witness = {e.a, e.b, x};
      }
      if (!found || m > rep.upsilon_min) {
        rep.upsilon_min = m;
        rep.min_witness = {e.a, e.b, x};
      }
      found = true;
    }
  }
  if (!found) invalid("upsilon_bounds: no related pair differs at any position");
  rep.upsilon_geom = std::sqrt(to_double(rep.upsilon_geom_squared));
  rep.randomized_bound = 1 / (5 * rep.upsilon_min);
  rep.quantum_bound = 1.0 / rep.upsilon_geom;
  return rep;
}

RelationSystem permutation_inversion_system(std::uint32_t n) {
  if (n < 2 || n % 2 != 0) invalid("permutation_inversion_system: N must be even and >= 2");
  if (n > 16) require_budget(~std::uint64_t{0}, enumeration_cap(), "permutation system");
  std::uint64_t fact = 1;
  for (std::uint32_t i = 2; i <= n; ++i) fact *= i;
  require_budget(fact, enumeration_cap() / 64, "permutation_inversion_system");

  auto encode = [](const std::vector<Symbol>& p) {
    std::uint64_t key = 0;
    for (Symbol s : p) key = key << 4 | static_cast<std::uint64_t>(s - 1);
    return key;
  };
  InputTable a_inputs, b_inputs;
  std::unordered_map<std::uint64_t, std::uint32_t> b_index;
  std::vector<Symbol> perm(n);
  std::iota(perm.begin(), perm.end(), Symbol{1});
  do {
    const auto one = static_cast<std::uint32_t>(std::find(perm.begin(), perm.end(), 1) - perm.begin());
    if (one < n / 2) {
      a_inputs.push_back(perm);
    } else {
      b_index.emplace(encode(perm), static_cast<std::uint32_t>(b_inputs.size()));
      b_inputs.push_back(perm);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<RelationEntry> entries;
  entries.reserve(a_inputs.size() * (n / 2));
  for (std::uint32_t ai = 0; ai < a_inputs.size(); ++ai) {
    std::vector<Symbol> tau = a_inputs[ai];
    const auto one = static_cast<std::uint32_t>(std::find(tau.begin(), tau.end(), 1) - tau.begin());
    for (std::uint32_t b = n / 2; b < n; ++b) {
      std::swap(tau[one], tau[b]);
      entries.push_back({ai, b_index.at(encode(tau)), Rational(1)});
      std::swap(tau[one], tau[b]);
    }
  }
  return RelationSystem(n, std::move(a_inputs), std::move(b_inputs), std::move(entries));
}

Rational regrowth_probability(const Snake& x, const Snake& y, std::uint64_t j) {
  if (x.kind.family != Family::kHypercube || y.kind != x.kind) {
    invalid("regrowth_probability: snakes must share a hypercube");
  }
  if (x.length() != y.length() || x.length() == 0) invalid("regrowth_probability: lengths differ");
  if (j >= x.length()) invalid("regrowth_probability: j >= L");
  for (std::uint64_t t = j; t < x.length(); ++t) {
    if (x.path[t] != y.path[t]) return Rational(0);
  }
  const std::uint32_t n = x.kind.bits;
  Rational q(1);
  const Rational half(1, 2);
  for (std::uint64_t t = j; t > 0; --t) {
    const Vertex step = y.path[t] ^ y.path[t - 1];
    if (n == 0) {
      if (step != 0) return Rational(0);
      continue;
    }
    if (step != 0 && step != (Vertex{1} << (t % n))) return Rational(0);
    q *= half;
  }
  return q;
}

Symbol answer_symbol(std::uint64_t value, bool is_minimum, int bit) {
  return static_cast<Symbol>(3 * value) + (is_minimum ? 1 + bit : 0);
}

SnakeRelation snake_relation_system(std::uint32_t n, std::uint64_t length) {
  if (n == 0) invalid("snake_relation_system: need n >= 1");
  if (length == 0) invalid("snake_relation_system: need L >= 1");
  require_budget(length - 1, 31, "snake_relation_system");
  const std::uint64_t count = std::uint64_t{1} << (length - 1);
  require_budget(count * count, enumeration_cap() / 16, "snake_relation_system pairs");

  const Graph g(GraphKind::hypercube(n));
  std::vector<Snake> snakes = enumerate_hypercube_snakes(n, 0, length);
  const Rational p(1, count);
  const Rational scale = p / Rational(length);

  InputTable a_inputs, b_inputs;
  a_inputs.reserve(count);
  b_inputs.reserve(count);
  for (const Snake& s : snakes) {
    const Instance inst = snake_instance(g, s);
    const Vertex minimum = s.path.front();
    std::vector<Symbol> fa(g.size()), fb(g.size());
    for (Vertex v : g.vertices()) {
      const std::uint64_t f = inst.value(v);
      fa[v] = answer_symbol(f, v == minimum, 0);
      fb[v] = answer_symbol(f, v == minimum, 1);
    }
    a_inputs.push_back(std::move(fa));
    b_inputs.push_back(std::move(fb));
  }

  std::vector<std::vector<Rational>> w(count, std::vector<Rational>(count));
  std::vector<std::vector<bool>> consistent(count, std::vector<bool>(count));
  std::vector<RelationEntry> entries;
  for (std::uint32_t xi = 0; xi < count; ++xi) {
    for (std::uint32_t yi = 0; yi < count; ++yi) {
      Rational sum;
      for (std::uint64_t j = 0; j < length; ++j) {
        sum += regrowth_probability(snakes[xi], snakes[yi], j);
      }
      w[xi][yi] = scale * sum;
      consistent[xi][yi] = compare_snakes(snakes[xi], snakes[yi]).agree;
      if (consistent[xi][yi] && sgn(w[xi][yi]) > 0) {
        entries.push_back({xi, yi, w[xi][yi]});
      }
    }
  }
  RelationSystem sys(g.size(), std::move(a_inputs), std::move(b_inputs), std::move(entries));
  return SnakeRelation{std::move(snakes), std::vector<Rational>(count, p), std::move(w),
                       std::move(consistent), std::move(sys)};
}

std::vector<std::size_t> subgraph_prune(const std::vector<Rational>& p,
                                        const std::vector<std::vector<Rational>>& w,
                                        const Rational& r) {
  const std::size_t m = p.size();
  if (m == 0) invalid("subgraph_prune: empty index set");
  if (w.size() != m) invalid("subgraph_prune: w is not m x m");
  Rational psum, wsum;
  for (std::size_t i = 0; i < m; ++i) {
    if (sgn(p[i]) <= 0) invalid("subgraph_prune: weights must be positive");
    psum += p[i];
    if (w[i].size() != m) invalid("subgraph_prune: w is not m x m");
    for (std::size_t j = 0; j < m; ++j) {
      if (sgn(w[i][j]) < 0) invalid("subgraph_prune: negative w entry");
      if (w[i][j] != w[j][i]) invalid("subgraph_prune: w is not symmetric");
      wsum += w[i][j];
    }
  }
  if (psum != 1) invalid("subgraph_prune: weights must sum to 1");
  if (sgn(r) < 0) invalid("subgraph_prune: r must be nonnegative");
  if (wsum < r) invalid("subgraph_prune: sum of w is below r");

  std::vector<Rational> degree(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) degree[i] += w[i][j];
  }
  std::vector<Rational> need(m);
  for (std::size_t i = 0; i < m; ++i) need[i] = r * p[i] / 2;
  std::vector<bool> alive(m, true);
  for (;;) {
    std::size_t drop = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (alive[i] && degree[i] < need[i]) {
        drop = i;
        break;
      }
    }
    if (drop == m) break;
    alive[drop] = false;
    for (std::size_t j = 0; j < m; ++j) {
      if (alive[j]) degree[j] -= w[j][drop];
    }
  }
  std::vector<std::size_t> u;
  for (std::size_t i = 0; i < m; ++i) {
    if (alive[i]) u.push_back(i);
  }
  if (u.empty()) throw Error(ErrorCode::kInvalidArgument, "subgraph_prune: emptied the set");
  return u;
}

bool ProgressTrace::nondecreasing() const {
  for (std::size_t t = 1; t < progress.size(); ++t) {
    if (progress[t] < progress[t - 1]) return false;
  }
  return true;
}

bool ProgressTrace::within_step_bound() const {
  return std::all_of(increments.begin(), increments.end(),
                     [&](const Rational& d) { return d <= step_bound; });
}

Rational ProgressTrace::success_probability() const {
  if (sgn(total) == 0) return Rational(0);
  return (success_weight_a + success_weight_b) / (2 * total);
}

namespace {

struct Run {
  std::vector<std::uint32_t> queries;
  std::optional<std::uint32_t> answer;
};

Run simulate(const std::vector<Symbol>& input, const QueryPolicy& policy,
             std::uint32_t depth) {
  Run run;
  std::vector<TranscriptEntry> transcript;
  for (;;) {
    const PolicyAction act = policy(transcript);
    if (act.answer) {
      if (act.value > 1) invalid("progress_trace: policy answered a non-bit");
      run.answer = act.value;
      return run;
    }
    if (transcript.size() == depth) return run;
    if (act.value >= input.size()) invalid("progress_trace: policy queried an invalid position");
    run.queries.push_back(act.value);
    transcript.push_back({act.value, input[act.value]});
  }
}

// First query (1-based) on `run` that separates a from b; 0 if none.
std::size_t separation_time(const Run& run, const std::vector<Symbol>& a,
                            const std::vector<Symbol>& b) {
  for (std::size_t k = 0; k < run.queries.size(); ++k) {
    if (differs(a, b, run.queries[k])) return k + 1;
  }
  return 0;
}

}  // namespace

ProgressTrace progress_trace(const RelationSystem& sys, const QueryPolicy& policy,
                             std::uint32_t depth) {
  if (!policy) invalid("progress_trace: empty policy");
  std::vector<Run> runs_a, runs_b;
  runs_a.reserve(sys.a_count());
  runs_b.reserve(sys.b_count());
  for (const auto& in : sys.a_inputs()) runs_a.push_back(simulate(in, policy, depth));
  for (const auto& in : sys.b_inputs()) runs_b.push_back(simulate(in, policy, depth));

  ProgressTrace trace;
  trace.total = sys.total();
  std::vector<Rational> newly(depth + 1);
  for (const RelationEntry& e : sys.entries()) {
    const auto& av = sys.a_inputs()[e.a];
    const auto& bv = sys.b_inputs()[e.b];
    const std::size_t ta = separation_time(runs_a[e.a], av, bv);
    const std::size_t tb = separation_time(runs_b[e.b], av, bv);
    std::size_t t = 0;
    if (ta && tb) {
      t = std::min(ta, tb);
    } else {
      t = ta ? ta : tb;
    }
    if (t) newly[t] += e.weight;
  }
  trace.progress.resize(depth + 1);
  for (std::uint32_t t = 1; t <= depth; ++t) {
    trace.progress[t] = trace.progress[t - 1] + newly[t];
    trace.increments.push_back(newly[t]);
  }
  for (std::uint32_t i = 0; i < sys.a_count(); ++i) {
    if (runs_a[i].answer == 0u) {
      trace.winners_a.push_back(i);
      trace.success_weight_a += sys.mass_a(i);
    }
  }
  for (std::uint32_t i = 0; i < sys.b_count(); ++i) {
    if (runs_b[i].answer == 1u) {
      trace.winners_b.push_back(i);
      trace.success_weight_b += sys.mass_b(i);
    }
  }
  trace.upsilon_min = upsilon_bounds(sys).upsilon_min;
  trace.step_bound = 3 * trace.upsilon_min * trace.total;
  return trace;
}

Rational parse_rational(const nlohmann::json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(std::to_string(j.get<std::uint64_t>()))
                                  : Rational(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_number_float()) return parse_decimal(j.dump());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return parse_decimal(s);
    const Rational num = parse_decimal(s.substr(0, slash));
    const Rational den = parse_decimal(s.substr(slash + 1));
    if (sgn(den) == 0) invalid("bad rational \"" + s + "\": zero denominator");
    return num / den;
  }
  invalid("expected a rational, got " + j.dump());
}

RelationSystem relation_system_from_json(const nlohmann::json& j) {
  try {
    const auto a_inputs = j.at("a_inputs").get<InputTable>();
    const auto b_inputs = j.at("b_inputs").get<InputTable>();
    std::size_t positions = 0;
    if (j.contains("positions")) {
      positions = j.at("positions").get<std::size_t>();
    } else if (!a_inputs.empty()) {
      positions = a_inputs.front().size();
    }
    std::vector<RelationEntry> entries;
    if (j.contains("relation")) {
      for (const auto& row : j.at("relation")) {
        if (!row.is_array() || row.size() != 3) invalid("relation rows are [a, b, w]");
        entries.push_back({row[0].get<std::uint32_t>(), row[1].get<std::uint32_t>(),
                           parse_rational(row[2])});
      }
    } else if (j.contains("matrix")) {
      const auto& mat = j.at("matrix");
      if (mat.size() != a_inputs.size()) invalid("matrix must have one row per A-input");
      for (std::uint32_t a = 0; a < mat.size(); ++a) {
        if (mat[a].size() != b_inputs.size()) invalid("matrix rows must have one entry per B-input");
        for (std::uint32_t b = 0; b < mat[a].size(); ++b) {
          entries.push_back({a, b, parse_rational(mat[a][b])});
        }
      }
    } else {
      invalid("relation system needs \"relation\" or \"matrix\"");
    }
    return RelationSystem(positions, a_inputs, b_inputs, std::move(entries));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("relation system JSON: ") + e.what());
  }
}

nlohmann::json to_json(const RelationSystem& sys) {
  nlohmann::json rel = nlohmann::json::array();
  for (const RelationEntry& e : sys.entries()) {
    rel.push_back({e.a, e.b, to_string(e.weight)});
  }
  return {{"positions", sys.positions()},
          {"a_inputs", sys.a_inputs()},
          {"b_inputs", sys.b_inputs()},
          {"relation", std::move(rel)}};
}

nlohmann::json to_json(const AdversaryReport& rep) {
  auto witness = [](const AdversaryWitness& w) {
    return nlohmann::json{{"a", w.a}, {"b", w.b}, {"position", w.position}};
  };
  return {{"upsilon_geom_squared", to_string(rep.upsilon_geom_squared)},
          {"upsilon_geom", rep.upsilon_geom},
          {"upsilon_min", to_string(rep.upsilon_min)},
          {"upsilon_min_value", to_double(rep.upsilon_min)},
          {"geom_witness", witness(rep.geom_witness)},
          {"min_witness", witness(rep.min_witness)},
          {"randomized_bound", to_string(rep.randomized_bound)},
          {"randomized_bound_value", to_double(rep.randomized_bound)},
          {"quantum_bound", rep.quantum_bound}};
}

nlohmann::json to_json(const ProgressTrace& trace) {
  auto strings = [](const std::vector<Rational>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const Rational& q : v) out.push_back(to_string(q));
    return out;
  };
  return {{"progress", strings(trace.progress)},
          {"increments", strings(trace.increments)},
          {"winners_a", trace.winners_a},
          {"winners_b", trace.winners_b},
          {"success_weight_a", to_string(trace.success_weight_a)},
          {"success_weight_b", to_string(trace.success_weight_b)},
          {"total", to_string(trace.total)},
          {"upsilon_min", to_string(trace.upsilon_min)},
          {"step_bound", to_string(trace.step_bound)},
          {"nondecreasing", trace.nondecreasing()},
          {"within_step_bound", trace.within_step_bound()},
          {"success_probability", to_string(trace.success_probability())}};
}

}  // namespace lslab
