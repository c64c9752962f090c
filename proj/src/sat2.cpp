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

#include "windowsum/sat2.hpp"

#include <limits>
#include <stdexcept>

namespace windowsum::sat2 {

void TwoCnf::AddClause(Literal a, Literal b) {
  if (a.var >= num_vars || b.var >= num_vars) {
    throw std::out_of_range("2-CNF literal refers to unknown variable");
  }
  clauses.emplace_back(a, b);
}

ImplicationGraph::ImplicationGraph(const TwoCnf& f) : offsets(2 * f.num_vars + 1, 0) {
  for (const auto& [a, b] : f.clauses) {
    ++offsets[(~a).code() + 1];
    ++offsets[(~b).code() + 1];
  }
  for (std::size_t v = 1; v < offsets.size(); ++v) offsets[v] += offsets[v - 1];
  targets.resize(offsets.back());
  std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
  for (const auto& [a, b] : f.clauses) {
    targets[fill[(~a).code()]++] = b.code();
    targets[fill[(~b).code()]++] = a.code();
  }
}

std::vector<std::uint32_t> StronglyConnectedComponents(const ImplicationGraph& g) {
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  const std::size_t n = g.num_vertices();
  // Per-vertex state kept together so a visit touches one cache line.
  struct State {
    std::uint32_t index = kUnvisited;
    std::uint32_t low = 0;
    std::uint32_t comp = kUnvisited;
  };
  std::vector<State> st(n);
  std::vector<std::uint32_t> stack;
  // Frame: vertex and position of the next outgoing arc to look at.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> frames;
  std::uint32_t next_index = 0;
  std::uint32_t next_comp = 0;

  // Roots go negative literal first, so a variable with no implications
  // either way comes out false.
  for (std::uint32_t k = 0; k < n; ++k) {
    const std::uint32_t root = k ^ 1u;
    if (st[root].index != kUnvisited) continue;
    frames.emplace_back(root, g.offsets[root]);
    st[root].index = st[root].low = next_index++;
    stack.push_back(root);

    while (!frames.empty()) {
      auto& [v, arc] = frames.back();
      if (arc < g.offsets[v + 1]) {
        const std::uint32_t w = g.targets[arc++];
        State& sw = st[w];
        if (sw.index == kUnvisited) {
          sw.index = sw.low = next_index++;
          stack.push_back(w);
          frames.emplace_back(w, g.offsets[w]);
        } else if (sw.comp == kUnvisited && sw.index < st[v].low) {
          st[v].low = sw.index;
        }
        continue;
      }
      const std::uint32_t done = v;
      frames.pop_back();
      if (st[done].low == st[done].index) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          st[w].comp = next_comp;
        } while (w != done);
        ++next_comp;
      }
      if (!frames.empty()) {
        State& parent = st[frames.back().first];
        if (st[done].low < parent.low) parent.low = st[done].low;
      }
    }
  }
  std::vector<std::uint32_t> comp(n);
  for (std::size_t v = 0; v < n; ++v) comp[v] = st[v].comp;
  return comp;
}

Result solve_2sat(const TwoCnf& f) {
  const ImplicationGraph graph(f);
  const std::vector<std::uint32_t> comp = StronglyConnectedComponents(graph);
  Result result;
  result.assignment.assign(f.num_vars, false);
  for (std::uint32_t v = 0; v < f.num_vars; ++v) {
    const std::uint32_t pos = comp[Literal::Pos(v).code()];
    const std::uint32_t neg = comp[Literal::Neg(v).code()];
    if (pos == neg) {
      result.satisfiable = false;
      result.assignment.clear();
      result.conflict_var = v;
      return result;
    }
    // Tarjan ids are reverse topological: z comes first in topological order
    // exactly when its id is larger, and then z is false.
    result.assignment[v] = pos < neg;
  }
  result.satisfiable = true;
  return result;
}

bool Satisfies(const TwoCnf& f, const Assignment& a) {
  if (a.size() != f.num_vars) return false;
  auto holds = [&](Literal l) { return a[l.var] != l.negated; };
  for (const auto& [x, y] : f.clauses) {
    if (!holds(x) && !holds(y)) return false;
  }
  return true;
}

}  // namespace windowsum::sat2
