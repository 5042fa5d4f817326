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

#include "lslab/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>

namespace lslab {

namespace {

constexpr std::uint64_t kMaxVertices = std::uint64_t{1} << 32;

}  // namespace

GraphKind GraphKind::hypercube(std::uint32_t n) {
  GraphKind k;
  k.family = Family::kHypercube;
  k.bits = n;
  return k;
}

GraphKind GraphKind::grid(std::uint32_t d, std::uint32_t side) {
  GraphKind k;
  k.family = Family::kGrid;
  k.dimension = d;
  k.side = side;
  return k;
}

GraphKind GraphKind::line(std::uint64_t n) {
  GraphKind k;
  k.family = Family::kLine;
  k.count = n;
  return k;
}

GraphKind GraphKind::complete(std::uint64_t n) {
  GraphKind k;
  k.family = Family::kComplete;
  k.count = n;
  return k;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::kHypercube:
      return "hypercube";
    case Family::kGrid:
      return "grid";
    case Family::kLine:
      return "line";
    case Family::kComplete:
      return "complete";
  }
  return "unknown";
}

nlohmann::json to_json(const GraphKind& kind) {
  nlohmann::json j;
  j["family"] = family_name(kind.family);
  switch (kind.family) {
    case Family::kHypercube:
      j["n"] = kind.bits;
      break;
    case Family::kGrid:
      j["d"] = kind.dimension;
      j["side"] = kind.side;
      break;
    case Family::kLine:
    case Family::kComplete:
      j["N"] = kind.count;
      break;
  }
  return j;
}

GraphKind graph_kind_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family")) {
    throw Error(ErrorCode::kConfig, "graph: expected object with \"family\"");
  }
  const std::string family = j.at("family").get<std::string>();
  auto field = [&](const char* name) -> std::uint64_t {
    if (!j.contains(name) || !j.at(name).is_number_unsigned()) {
      throw Error(ErrorCode::kConfig,
                  "graph: " + family + " needs unsigned field \"" + name + "\"");
    }
    return j.at(name).get<std::uint64_t>();
  };
  auto small = [&](const char* name) -> std::uint32_t {
    std::uint64_t v = field(name);
    if (v > std::numeric_limits<std::uint32_t>::max()) {
      throw Error(ErrorCode::kConfig, std::string("graph: ") + name + " too large");
    }
    return static_cast<std::uint32_t>(v);
  };
  if (family == "hypercube") return GraphKind::hypercube(small("n"));
  if (family == "grid") return GraphKind::grid(small("d"), small("side"));
  if (family == "line") return GraphKind::line(field("N"));
  if (family == "complete") return GraphKind::complete(field("N"));
  throw Error(ErrorCode::kConfig, "graph: unknown family \"" + family + "\"");
}

Graph::Graph(const GraphKind& kind) : kind_(kind) {
  switch (kind.family) {
    case Family::kHypercube:
      if (kind.bits > 32) {
        throw Error(ErrorCode::kInvalidArgument, "hypercube: n must be <= 32");
      }
      size_ = std::uint64_t{1} << kind.bits;
      max_degree_ = kind.bits;
      break;
    case Family::kGrid: {
      if (kind.dimension < 1) {
        throw Error(ErrorCode::kInvalidArgument, "grid: d must be >= 1");
      }
      if (kind.side < 2) {
        throw Error(ErrorCode::kInvalidArgument, "grid: side must be >= 2");
      }
      std::uint64_t n = 1;
      strides_.reserve(kind.dimension);
      for (std::uint32_t i = 0; i < kind.dimension; ++i) {
        strides_.push_back(n);
        if (n > kMaxVertices / kind.side) {
          throw Error(ErrorCode::kInvalidArgument, "grid: side^d exceeds 2^32");
        }
        n *= kind.side;
      }
      size_ = n;
      max_degree_ = kind.side == 2 ? kind.dimension : 2 * kind.dimension;
      break;
    }
    case Family::kLine:
      if (kind.count == 0 || kind.count > kMaxVertices) {
        throw Error(ErrorCode::kInvalidArgument, "line: N must be in [1, 2^32]");
      }
      size_ = kind.count;
      max_degree_ = kind.count == 1 ? 0 : (kind.count == 2 ? 1 : 2);
      break;
    case Family::kComplete:
      if (kind.count == 0 || kind.count > kMaxVertices) {
        throw Error(ErrorCode::kInvalidArgument,
                    "complete: N must be in [1, 2^32]");
      }
      size_ = kind.count;
      max_degree_ = static_cast<std::uint32_t>(kind.count - 1);
      break;
  }
}

std::uint32_t Graph::coordinate_count() const {
  switch (kind_.family) {
    case Family::kHypercube:
      return kind_.bits;
    case Family::kGrid:
      return kind_.dimension;
    default:
      return 1;
  }
}

void Graph::check(Vertex v) const {
  if (v >= size_) {
    throw Error(ErrorCode::kInvalidVertex,
                "vertex " + std::to_string(v) + " out of range [0, " +
                    std::to_string(size_) + ")");
  }
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  neighbors(v, out);
  return out;
}

void Graph::neighbors(Vertex v, std::vector<Vertex>& out) const {
  check(v);
  out.clear();
  switch (kind_.family) {
    case Family::kHypercube: {
      // Clearing a set bit lowers the index; visit those high bit first.
      for (std::uint32_t i = kind_.bits; i-- > 0;) {
        Vertex bit = Vertex{1} << i;
        if (v & bit) out.push_back(v ^ bit);
      }
      for (std::uint32_t i = 0; i < kind_.bits; ++i) {
        Vertex bit = Vertex{1} << i;
        if (!(v & bit)) out.push_back(v ^ bit);
      }
      break;
    }
    case Family::kGrid: {
      for (std::uint32_t i = kind_.dimension; i-- > 0;) {
        if (grid_coordinate(v, i) > 0) out.push_back(v - strides_[i]);
      }
      for (std::uint32_t i = 0; i < kind_.dimension; ++i) {
        if (grid_coordinate(v, i) + 1 < kind_.side) out.push_back(v + strides_[i]);
      }
      break;
    }
    case Family::kLine:
      if (v > 0) out.push_back(v - 1);
      if (v + 1 < size_) out.push_back(v + 1);
      break;
    case Family::kComplete:
      out.reserve(size_ - 1);
      for (Vertex w = 0; w < size_; ++w) {
        if (w != v) out.push_back(w);
      }
      break;
  }
}

std::uint32_t Graph::degree(Vertex v) const {
  check(v);
  switch (kind_.family) {
    case Family::kHypercube:
      return kind_.bits;
    case Family::kGrid: {
      std::uint32_t deg = 0;
      for (std::uint32_t i = 0; i < kind_.dimension; ++i) {
        std::uint32_t c = grid_coordinate(v, i);
        deg += (c > 0) + (c + 1 < kind_.side);
      }
      return deg;
    }
    case Family::kLine:
      return (v > 0) + (v + 1 < size_);
    case Family::kComplete:
      return static_cast<std::uint32_t>(size_ - 1);
  }
  return 0;
}

std::uint64_t Graph::distance(Vertex v, Vertex w) const {
  check(v);
  check(w);
  switch (kind_.family) {
    case Family::kHypercube:
      return static_cast<std::uint64_t>(std::popcount(v ^ w));
    case Family::kGrid: {
      std::uint64_t d = 0;
      for (std::uint32_t i = 0; i < kind_.dimension; ++i) {
        std::int64_t a = grid_coordinate(v, i);
        std::int64_t b = grid_coordinate(w, i);
        d += static_cast<std::uint64_t>(std::llabs(a - b));
      }
      return d;
    }
    case Family::kLine:
      return v > w ? v - w : w - v;
    case Family::kComplete:
      return v == w ? 0 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> Graph::coordinates(Vertex v) const {
  check(v);
  std::vector<std::uint32_t> c;
  switch (kind_.family) {
    case Family::kHypercube:
      c.resize(kind_.bits);
      for (std::uint32_t i = 0; i < kind_.bits; ++i) c[i] = (v >> i) & 1u;
      break;
    case Family::kGrid:
      c.resize(kind_.dimension);
      for (std::uint32_t i = 0; i < kind_.dimension; ++i) {
        c[i] = grid_coordinate(v, i) + 1;
      }
      break;
    default:
      c.push_back(static_cast<std::uint32_t>(v));
      break;
  }
  return c;
}

Vertex Graph::from_coordinates(const std::vector<std::uint32_t>& coords) const {
  if (coords.size() != coordinate_count()) {
    throw Error(ErrorCode::kInvalidVertex, "coordinate count mismatch");
  }
  Vertex v = 0;
  switch (kind_.family) {
    case Family::kHypercube:
      for (std::uint32_t i = 0; i < kind_.bits; ++i) {
        if (coords[i] > 1) throw Error(ErrorCode::kInvalidVertex, "bit must be 0 or 1");
        v |= Vertex{coords[i]} << i;
      }
      return v;
    case Family::kGrid:
      for (std::uint32_t i = 0; i < kind_.dimension; ++i) {
        if (coords[i] < 1 || coords[i] > kind_.side) {
          throw Error(ErrorCode::kInvalidVertex, "grid coordinate outside [1, side]");
        }
        v += Vertex{coords[i] - 1} * strides_[i];
      }
      return v;
    default:
      check(coords[0]);
      return coords[0];
  }
}

}  // namespace lslab
