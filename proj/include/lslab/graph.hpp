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

#ifndef LSLAB_GRAPH_HPP_
#define LSLAB_GRAPH_HPP_

#include <cstdint>
#include <ranges>
#include <string>
#include <vector>

#include "lslab/common.hpp"
#include "json.hpp"

namespace lslab {

enum class Family { kHypercube, kGrid, kLine, kComplete };

// Parameters of one of the supported graph families. Only the fields of the
// selected family are meaningful.
struct GraphKind {
  Family family = Family::kLine;
  std::uint32_t bits = 0;        // hypercube: n
  std::uint32_t dimension = 0;   // grid: d
  std::uint32_t side = 0;        // grid: side length
  std::uint64_t count = 0;       // line / complete: N

  static GraphKind hypercube(std::uint32_t n);
  static GraphKind grid(std::uint32_t d, std::uint32_t side);
  static GraphKind line(std::uint64_t n);
  static GraphKind complete(std::uint64_t n);

  friend bool operator==(const GraphKind&, const GraphKind&) = default;
};

const char* family_name(Family f);

nlohmann::json to_json(const GraphKind& kind);
GraphKind graph_kind_from_json(const nlohmann::json& j);

// Immutable graph handle. Vertices are canonical indices in [0, size()).
//
// Hypercube: bit i of the index is v[i]. Grid: mixed radix, coordinate 0
// least significant; coordinates are exposed 1-based in {1..side}. The grid
// does not wrap.
class Graph {
 public:
  explicit Graph(const GraphKind& kind);

  const GraphKind& kind() const { return kind_; }
  Family family() const { return kind_.family; }
  std::uint64_t size() const { return size_; }
  std::uint32_t max_degree() const { return max_degree_; }

  // Number of coordinates a vertex has: n for the hypercube, d for the grid,
  // 1 otherwise.
  std::uint32_t coordinate_count() const;

  bool contains(Vertex v) const { return v < size_; }
  void check(Vertex v) const;

  // Neighbors in ascending canonical order.
  std::vector<Vertex> neighbors(Vertex v) const;
  void neighbors(Vertex v, std::vector<Vertex>& out) const;
  std::uint32_t degree(Vertex v) const;

  // Shortest-path distance.
  std::uint64_t distance(Vertex v, Vertex w) const;

  // Coordinate view; grid coordinates are 1-based.
  std::vector<std::uint32_t> coordinates(Vertex v) const;
  Vertex from_coordinates(const std::vector<std::uint32_t>& coords) const;

  // Grid helpers (0-based coordinate value, stride of coordinate i).
  std::uint32_t grid_coordinate(Vertex v, std::uint32_t i) const {
    return static_cast<std::uint32_t>((v / strides_[i]) % kind_.side);
  }
  std::uint64_t stride(std::uint32_t i) const { return strides_[i]; }

  // Every vertex exactly once, in canonical order.
  auto vertices() const { return std::views::iota(Vertex{0}, size_); }

 private:
  GraphKind kind_;
  std::uint64_t size_ = 0;
  std::uint32_t max_degree_ = 0;
  std::vector<std::uint64_t> strides_;
};

}  // namespace lslab

#endif  // LSLAB_GRAPH_HPP_
