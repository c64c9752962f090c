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

#ifndef WINDOWSUM_ORACLE_HPP_
#define WINDOWSUM_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "windowsum/matrix.hpp"

namespace windowsum::oracle {

struct SearchBudget {
  std::uint64_t max_nodes = 10'000'000;
};

enum class SearchStatus { kSolved, kInfeasible, kBudgetExhausted };

const char* ToString(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::kInfeasible;
  std::optional<IntMatrix> solution;
  std::uint64_t nodes = 0;
};

/// Exhaustive depth-first search in row-major cell order. A cell that is the
/// bottom-right corner of a window has its value fixed by that window's sum;
/// every other cell ranges over [lower, upper].
SearchResult brute_solve(const ReconstructionInstance& inst, SearchBudget budget = {});

struct EnumerationResult {
  /// kSolved: search finished or stopped at the limit; kBudgetExhausted:
  /// ran out of nodes, the list is partial.
  SearchStatus status = SearchStatus::kSolved;
  std::vector<IntMatrix> solutions;
  std::uint64_t nodes = 0;
};

EnumerationResult brute_enumerate(const ReconstructionInstance& inst, SearchBudget budget,
                                  std::size_t limit);

}  // namespace windowsum::oracle

#endif  // WINDOWSUM_ORACLE_HPP_
