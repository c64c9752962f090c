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

#include "windowsum/coloring.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace windowsum::coloring {

using gadget::LinearConstraint;
using gadget::X;

Graph::Graph(std::size_t num_vertices, std::vector<std::pair<std::size_t, std::size_t>> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  for (auto& [u, v] : edges_) {
    if (u >= num_vertices_ || v >= num_vertices_) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

Graph Graph::Complete(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) e.emplace_back(u, v);
  }
  return Graph(n, std::move(e));
}

Graph Graph::Cycle(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t u = 0; u < n; ++u) e.emplace_back(u, (u + 1) % n);
  return Graph(n, std::move(e));
}

Graph Graph::Petersen() {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t k = 0; k < 5; ++k) {
    e.emplace_back(k, (k + 1) % 5);          // outer cycle
    e.emplace_back(5 + k, 5 + (k + 2) % 5);  // inner pentagram
    e.emplace_back(k, 5 + k);                // spokes
  }
  return Graph(10, std::move(e));
}

IpSystem encode_3col(const Graph& g) {
  IpSystem ip;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    ip.vertex_vars.push_back({X(3 * v + 1), X(3 * v + 2), X(3 * v + 3)});
    const auto& t = ip.vertex_vars.back();
    for (const auto& var : t) ip.bounds.push_back({var, 0, 1});
    ip.constraints.push_back(LinearConstraint{{t[0], t[1], t[2]}, 1, 1});
  }
  for (const auto& [u, v] : g.edges()) {
    for (std::size_t color = 0; color < 3; ++color) {
      ip.constraints.push_back(
          LinearConstraint{{ip.vertex_vars[u][color], ip.vertex_vars[v][color]}, 0, 1});
    }
  }
  return ip;
}

ReductionRecord RebuildRecord(Graph graph, std::vector<std::array<gadget::VarRef, 3>> vertex_vars,
                              gadget::GadgetProgram program) {
  if (vertex_vars.size() != graph.num_vertices()) {
    throw std::invalid_argument("reduction record: slot map does not match the graph");
  }
  gadget::Materialized m = gadget::materialize(program);
  auto [shifted, shift] = shift_two_sided(m.instance);
  return ReductionRecord{std::move(graph), std::move(vertex_vars), std::move(program),
                         std::move(shift), std::move(m.instance)};
}

std::pair<ReconstructionInstance, ReductionRecord> reduce_3col(const Graph& g) {
  IpSystem ip = encode_3col(g);
  gadget::GadgetProgram program = gadget::compile_linear(ip.constraints, ip.bounds);
  ReductionRecord record = RebuildRecord(g, std::move(ip.vertex_vars), std::move(program));
  ReconstructionInstance reduced = ReducedInstance(record);
  return {std::move(reduced), std::move(record)};
}

ReconstructionInstance ReducedInstance(const ReductionRecord& record) {
  return shift_two_sided(record.two_sided).first;
}

IntMatrix witness_for_coloring(const ReductionRecord& record, const Coloring& c) {
  if (c.size() != record.graph.num_vertices()) {
    throw std::invalid_argument("coloring length differs from vertex count");
  }
  gadget::SlotValues base;
  for (std::size_t v = 0; v < c.size(); ++v) {
    for (int color = 0; color < 3; ++color) {
      base.set(record.vertex_vars[v][color], c[v] == color ? 1 : 0);
    }
  }
  const IntMatrix a = gadget::build_witness_matrix(record.program, base);
  return a - record.shift.lower;
}

Coloring decode_coloring(const IntMatrix& x, const ReductionRecord& record) {
  const VerifyResult check = verify_solution(x, ReducedInstance(record));
  if (!check) throw std::invalid_argument("not a solution of the reduced instance: " + check.reason);
  const gadget::SlotValues values =
      gadget::decode_values(lift_solution(x, record.shift), record.program);
  Coloring out(record.graph.num_vertices());
  for (std::size_t v = 0; v < out.size(); ++v) {
    int ones = 0;
    for (int color = 0; color < 3; ++color) {
      const std::int64_t value = values.at(record.vertex_vars[v][color]);
      if (value != 0 && value != 1) {
        throw std::logic_error("vertex " + std::to_string(v) + " decodes to non-binary value");
      }
      if (value == 1) {
        out[v] = color;
        ++ones;
      }
    }
    if (ones != 1) {
      throw std::logic_error("vertex " + std::to_string(v) + " has " + std::to_string(ones) +
                             " colors set");
    }
  }
  return out;
}

bool verify_coloring(const Graph& g, const Coloring& c) {
  if (c.size() != g.num_vertices()) return false;
  for (int color : c) {
    if (color < 0 || color > 2) return false;
  }
  for (const auto& [u, v] : g.edges()) {
    if (c[u] == c[v]) return false;
  }
  return true;
}

std::optional<Coloring> brute_force_3col(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > kBruteForceVertexLimit) {
    throw std::length_error("brute-force coloring limited to " +
                            std::to_string(kBruteForceVertexLimit) + " vertices");
  }
  std::vector<std::vector<std::size_t>> earlier(n);
  for (const auto& [u, v] : g.edges()) earlier[v].push_back(u);

  Coloring c(n, -1);
  std::size_t v = 0;
  // Iterative backtracking: c[v] advances through 0..2, -1 means untried.
  while (true) {
    if (v == n) return c;
    bool placed = false;
    while (++c[v] < 3) {
      const bool clash = std::any_of(earlier[v].begin(), earlier[v].end(),
                                     [&](std::size_t u) { return c[u] == c[v]; });
      if (!clash) {
        placed = true;
        break;
      }
    }
    if (placed) {
      ++v;
      continue;
    }
    c[v] = -1;
    if (v == 0) return std::nullopt;
    --v;
  }
}

}  // namespace windowsum::coloring
