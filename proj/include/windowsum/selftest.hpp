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

#ifndef WINDOWSUM_SELFTEST_HPP_
#define WINDOWSUM_SELFTEST_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "windowsum/diffcon.hpp"
#include "windowsum/sat2.hpp"

// Property suites shared by the acceptance binary and `windowsum selftest`.
// Each check compares an engine against an independent oracle on random
// inputs drawn from a fixed seed.
namespace windowsum::selftest {

enum class Level { kQuick, kFull };

struct CheckOutcome {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

CheckOutcome BinaryRoundTrip(Level level, std::uint64_t seed);
CheckOutcome BinaryOracleEquivalence(Level level, std::uint64_t seed);
CheckOutcome BoundedOracleEquivalence(Level level, std::uint64_t seed);
CheckOutcome NoEnumEquivalence(Level level, std::uint64_t seed);
CheckOutcome TwoSatOracle(Level level, std::uint64_t seed);
CheckOutcome DiffConOracle(Level level, std::uint64_t seed);
CheckOutcome GadgetZeroSum(Level level, std::uint64_t seed);
CheckOutcome ReductionCompleteness(Level level, std::uint64_t seed);
CheckOutcome ReductionSoundness(Level level, std::uint64_t seed);
CheckOutcome BinaryScaling(Level level, std::uint64_t seed);
CheckOutcome BoundedScaling(Level level, std::uint64_t seed);

std::vector<CheckOutcome> RunAll(Level level, std::uint64_t seed = 1);

/// Tries all 2^num_vars assignments.
bool TruthTableSatisfiable(const sat2::TwoCnf& f);

/// Reachability from one implication-graph vertex to another, by BFS over
/// arcs rebuilt from the clauses.
bool ImplicationPath(const sat2::TwoCnf& f, sat2::Literal from, sat2::Literal to);

/// Searches integer points with variable 0 fixed at 0 and the others in
/// [-radius, radius]. A feasible system with n variables and |w| <= W has a
/// solution of spread at most (n - 1) W, so radius >= (n - 1) W decides it.
bool BoxFeasible(const diffcon::DiffSystem& sys, std::int64_t radius);

}  // namespace windowsum::selftest

#endif  // WINDOWSUM_SELFTEST_HPP_
