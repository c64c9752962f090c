// Copyright 2026 The windowsum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WINDOWSUM_COLORING_HPP_
#define WINDOWSUM_COLORING_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "windowsum/gadget23.hpp"
#include "windowsum/matrix.hpp"

namespace windowsum::coloring {

/// Undirected simple graph. Edges are stored normalized (u < v), sorted and
/// deduplicated; self-loops are rejected.
class Graph {
 public:
  Graph(std::size_t num_vertices, std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t num_vertices() const { return num_vertices_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

  static Graph Complete(std::size_t n);
  static Graph Cycle(std::size_t n);
  static Graph Petersen();

 private:
  std::size_t num_vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

/// Color per vertex, each in {0, 1, 2}.
using Coloring = std::vector<int>;

struct IpSystem {
  /// Base slots x_v, y_v, z_v (colors 0, 1, 2) of each vertex.
  std::vector<std::array<gadget::VarRef, 3>> vertex_vars;
  std::vector<gadget::LinearConstraint> constraints;
  std::vector<gadget::BaseBound> bounds;
};

/// One 0/1 variable per vertex and color, one color per vertex, and at most
/// one endpoint of each edge per color.
IpSystem encode_3col(const Graph& g);

struct ReductionRecord {
  Graph graph;
  std::vector<std::array<gadget::VarRef, 3>> vertex_vars;
  gadget::GadgetProgram program;
  BackShift shift;
  ReconstructionInstance two_sided;
};

/// Graph -> integer program -> gadget program -> two-sided 2x3 instance ->
/// upper-bound-only instance.
std::pair<ReconstructionInstance, ReductionRecord> reduce_3col(const Graph& g);

/// Rebuilds the derived parts of a record (two-sided instance and shift)
/// from its graph, slot map and program.
ReductionRecord RebuildRecord(Graph graph, std::vector<std::array<gadget::VarRef, 3>> vertex_vars,
                              gadget::GadgetProgram program);

/// Instance solved by X, recomputed from the record.
ReconstructionInstance ReducedInstance(const ReductionRecord& record);

/// Solution of the reduced instance for a given valid coloring.
IntMatrix witness_for_coloring(const ReductionRecord& record, const Coloring& c);

/// Throws std::invalid_argument if X does not solve the reduced instance and
/// std::logic_error if a vertex triple does not hold exactly one 1.
Coloring decode_coloring(const IntMatrix& x, const ReductionRecord& record);

bool verify_coloring(const Graph& g, const Coloring& c);

inline constexpr std::size_t kBruteForceVertexLimit = 16;

/// Backtracking over all 3^|V| colorings; throws std::length_error above
/// kBruteForceVertexLimit vertices.
std::optional<Coloring> brute_force_3col(const Graph& g);

}  // namespace windowsum::coloring

#endif  // WINDOWSUM_COLORING_HPP_
