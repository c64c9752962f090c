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

#ifndef WINDOWSUM_DIFFCON_HPP_
#define WINDOWSUM_DIFFCON_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace windowsum::diffcon {

/// value(lhs) - value(rhs) <= bound
struct DiffConstraint {
  std::size_t lhs;
  std::size_t rhs;
  std::int64_t bound;
};

class DiffSystem {
 public:
  explicit DiffSystem(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  /// Throws std::out_of_range for unknown variables and std::invalid_argument
  /// for a self-loop with negative bound.
  void Add(std::size_t lhs, std::size_t rhs, std::int64_t bound);
  /// lo <= value(lhs) - value(rhs) <= hi, as two constraints.
  void AddRange(std::size_t lhs, std::size_t rhs, std::int64_t lo, std::int64_t hi);

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<DiffConstraint>& constraints() const { return constraints_; }

 private:
  std::size_t num_vars_;
  std::vector<DiffConstraint> constraints_;
};

/// Indices into DiffSystem::constraints(); consecutive entries chain as
/// c[k].rhs == c[k+1].lhs (cyclically) and the bounds sum below zero.
struct NegativeCycleCert {
  std::vector<std::size_t> constraint_indices;
};

struct Result {
  bool feasible = false;
  std::vector<std::int64_t> potentials;  // when feasible
  NegativeCycleCert cycle;               // when infeasible
};

/// Bellman-Ford from an implicit zero-distance source.
Result solve_diff(const DiffSystem& sys);

/// Independent validation of either outcome. Throws std::out_of_range for
/// certificate indices outside the system.
bool check_certificate(const DiffSystem& sys, const Result& result);

}  // namespace windowsum::diffcon

#endif  // WINDOWSUM_DIFFCON_HPP_
