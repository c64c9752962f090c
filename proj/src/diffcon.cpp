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

#include "windowsum/diffcon.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace windowsum::diffcon {

namespace {

constexpr std::size_t kNoPred = std::numeric_limits<std::size_t>::max();

std::int64_t CheckedAdd(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("difference-constraint arithmetic overflow");
  }
  return out;
}

}  // namespace

void DiffSystem::Add(std::size_t lhs, std::size_t rhs, std::int64_t bound) {
  if (lhs >= num_vars_ || rhs >= num_vars_) {
    throw std::out_of_range("difference constraint refers to unknown variable");
  }
  if (lhs == rhs && bound < 0) {
    throw std::invalid_argument("constraint v - v <= " + std::to_string(bound) +
                                " is trivially infeasible");
  }
  constraints_.push_back({lhs, rhs, bound});
}

void DiffSystem::AddRange(std::size_t lhs, std::size_t rhs, std::int64_t lo, std::int64_t hi) {
  Add(lhs, rhs, hi);
  if (lo == std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("lower bound cannot be negated");
  }
  Add(rhs, lhs, -lo);
}

Result solve_diff(const DiffSystem& sys) {
  const std::size_t n = sys.num_vars();
  const auto& cons = sys.constraints();
  std::vector<std::int64_t> dist(n, 0);
  std::vector<std::size_t> pred(n, kNoPred);

  std::size_t last_relaxed = kNoPred;
  // Distances start at zero, which stands in for a source with zero arcs to
  // every vertex. n rounds settle any system without a negative cycle; the
  // extra round exposes one that has it.
  for (std::size_t round = 0; round <= n; ++round) {
    last_relaxed = kNoPred;
    for (std::size_t c = 0; c < cons.size(); ++c) {
      const auto& k = cons[c];
      const std::int64_t candidate = CheckedAdd(dist[k.rhs], k.bound);
      if (candidate < dist[k.lhs]) {
        dist[k.lhs] = candidate;
        pred[k.lhs] = c;
        last_relaxed = k.lhs;
      }
    }
    if (last_relaxed == kNoPred) {
      Result r;
      r.feasible = true;
      r.potentials = std::move(dist);
      return r;
    }
  }

  // Walking n predecessor links from a vertex relaxed in the final round
  // lands on a cycle of the predecessor graph.
  std::size_t v = last_relaxed;
  for (std::size_t step = 0; step < n; ++step) {
    if (pred[v] == kNoPred) throw std::logic_error("predecessor walk left the cycle");
    v = cons[pred[v]].rhs;
  }

  Result r;
  r.feasible = false;
  std::int64_t weight = 0;
  std::size_t u = v;
  do {
    const std::size_t c = pred[u];
    r.cycle.constraint_indices.push_back(c);
    weight = CheckedAdd(weight, cons[c].bound);
    u = cons[c].rhs;
  } while (u != v);
  if (weight >= 0) throw std::logic_error("extracted cycle is not negative");
  return r;
}

bool check_certificate(const DiffSystem& sys, const Result& result) {
  const auto& cons = sys.constraints();
  if (result.feasible) {
    const auto& p = result.potentials;
    if (p.size() != sys.num_vars()) return false;
    for (const auto& k : cons) {
      std::int64_t diff;
      if (__builtin_sub_overflow(p[k.lhs], p[k.rhs], &diff)) {
        if (p[k.lhs] > p[k.rhs]) return false;
        continue;
      }
      if (diff > k.bound) return false;
    }
    return true;
  }
  const auto& idx = result.cycle.constraint_indices;
  if (idx.empty()) return false;
  std::int64_t weight = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= cons.size()) throw std::out_of_range("certificate index out of range");
    const std::size_t next = idx[(k + 1) % idx.size()];
    if (next >= cons.size()) throw std::out_of_range("certificate index out of range");
    if (cons[idx[k]].rhs != cons[next].lhs) return false;
    if (__builtin_add_overflow(weight, cons[idx[k]].bound, &weight)) return false;
  }
  return weight < 0;
}

}  // namespace windowsum::diffcon
