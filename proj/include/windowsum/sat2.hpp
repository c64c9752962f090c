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

#ifndef WINDOWSUM_SAT2_HPP_
#define WINDOWSUM_SAT2_HPP_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace windowsum::sat2 {

struct Literal {
  std::uint32_t var = 0;
  bool negated = false;

  static Literal Pos(std::uint32_t v) { return {v, false}; }
  static Literal Neg(std::uint32_t v) { return {v, true}; }

  Literal operator~() const { return {var, !negated}; }
  /// Vertex index in the implication graph: 2*var for z, 2*var+1 for not z.
  std::uint32_t code() const { return 2 * var + (negated ? 1u : 0u); }

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::pair<Literal, Literal>;

/// Conjunction of two-literal clauses. A unit clause is stored as (a, a).
struct TwoCnf {
  std::size_t num_vars = 0;
  std::vector<Clause> clauses;

  explicit TwoCnf(std::size_t n = 0) : num_vars(n) {}

  /// Throws std::out_of_range if a literal names an unknown variable.
  void AddClause(Literal a, Literal b);
  void AddUnit(Literal a) { AddClause(a, a); }
};

using Assignment = std::vector<bool>;

struct Result {
  bool satisfiable = false;
  Assignment assignment;           // set when satisfiable
  std::size_t conflict_var = 0;    // z and not z share a component when unsatisfiable
};

/// Implication graph in compressed adjacency form; clause (a or b) yields
/// arcs not a -> b and not b -> a.
struct ImplicationGraph {
  std::vector<std::uint32_t> offsets;  // size 2*num_vars + 1
  std::vector<std::uint32_t> targets;

  explicit ImplicationGraph(const TwoCnf& f);
  std::size_t num_vertices() const { return offsets.size() - 1; }
};

/// Strongly connected components by iterative Tarjan. Component ids come out
/// in reverse topological order: every arc u -> v has comp[u] >= comp[v].
std::vector<std::uint32_t> StronglyConnectedComponents(const ImplicationGraph& g);

Result solve_2sat(const TwoCnf& f);

bool Satisfies(const TwoCnf& f, const Assignment& a);

}  // namespace windowsum::sat2

#endif  // WINDOWSUM_SAT2_HPP_
