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

#include "windowsum/oracle.hpp"

#include <stdexcept>

namespace windowsum::oracle {

namespace {

class Search {
 public:
  Search(const ReconstructionInstance& inst, SearchBudget budget, std::size_t limit)
      : inst_(inst),
        lower_(inst.lower_or_zero()),
        a_(inst.rows(), inst.cols()),
        budget_(budget),
        limit_(limit) {
    if (budget.max_nodes < 1) throw std::invalid_argument("search budget must be >= 1 node");
  }

  void Run() {
    if (inst_.rows() == 0) {
      Emit();
      return;
    }
    Visit(0);
  }

  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }
  std::vector<IntMatrix>& solutions() { return solutions_; }

 private:
  // True when the search must unwind.
  bool Stop() const { return exhausted_ || solutions_.size() >= limit_; }

  void Visit(std::size_t cell) {
    const std::size_t n = inst_.cols();
    if (cell == inst_.rows() * n) {
      Emit();
      return;
    }
    const std::size_t i = cell / n;
    const std::size_t j = cell % n;
    const std::size_t h = inst_.shape().height;
    const std::size_t w = inst_.shape().width;
    const bool closes_window = !inst_.sums().empty() && i + 1 >= h && j + 1 >= w;

    std::int64_t lo = lower_(i, j);
    std::int64_t hi = inst_.upper()(i, j);
    if (closes_window) {
      // All other cells of the window ending at (i, j) are already placed.
      std::int64_t rest = 0;
      for (std::size_t r = i + 1 - h; r <= i; ++r) {
        for (std::size_t c = j + 1 - w; c <= j; ++c) {
          if (r != i || c != j) rest += a_(r, c);
        }
      }
      const std::int64_t forced = inst_.sums()(i + 1 - h, j + 1 - w) - rest;
      if (forced < lo || forced > hi) return;
      lo = hi = forced;
    }
    for (std::int64_t v = lo; v <= hi; ++v) {
      if (nodes_ >= budget_.max_nodes) {
        exhausted_ = true;
        return;
      }
      ++nodes_;
      a_(i, j) = v;
      Visit(cell + 1);
      if (Stop()) return;
    }
  }

  void Emit() { solutions_.push_back(a_); }

  const ReconstructionInstance& inst_;
  IntMatrix lower_;
  IntMatrix a_;
  SearchBudget budget_;
  std::size_t limit_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<IntMatrix> solutions_;
};

}  // namespace

const char* ToString(SearchStatus s) {
  switch (s) {
    case SearchStatus::kSolved:
      return "solved";
    case SearchStatus::kInfeasible:
      return "infeasible";
    case SearchStatus::kBudgetExhausted:
      return "budget-exhausted";
  }
  return "?";
}

SearchResult brute_solve(const ReconstructionInstance& inst, SearchBudget budget) {
  Search search(inst, budget, 1);
  search.Run();
  SearchResult result;
  result.nodes = search.nodes();
  if (!search.solutions().empty()) {
    result.status = SearchStatus::kSolved;
    result.solution = std::move(search.solutions().front());
  } else if (search.exhausted()) {
    result.status = SearchStatus::kBudgetExhausted;
  } else {
    result.status = SearchStatus::kInfeasible;
  }
  return result;
}

EnumerationResult brute_enumerate(const ReconstructionInstance& inst, SearchBudget budget,
                                  std::size_t limit) {
  EnumerationResult result;
  if (limit == 0) return result;
  Search search(inst, budget, limit);
  search.Run();
  result.nodes = search.nodes();
  result.status = search.exhausted() ? SearchStatus::kBudgetExhausted : SearchStatus::kSolved;
  result.solutions = std::move(search.solutions());
  return result;
}

}  // namespace windowsum::oracle
