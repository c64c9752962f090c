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

#include <gtest/gtest.h>

#include <chrono>
#include <stdexcept>

#include "test_util.hpp"
#include "windowsum/oracle.hpp"
#include "windowsum/random.hpp"
#include "windowsum/solver22.hpp"

namespace windowsum::solver22 {
namespace {

using testing::AllSolutions;

ReconstructionInstance Upper(const IntMatrix& sums, const IntMatrix& upper) {
  return ReconstructionInstance(WindowShape(2, 2), sums, upper);
}

BorderAssignment BorderOf(const IntMatrix& a) {
  BorderAssignment border;
  border.a00 = a(0, 0);
  for (std::size_t j = 1; j < a.cols(); ++j) border.x.push_back(a(0, j));
  for (std::size_t i = 1; i < a.rows(); ++i) border.y.push_back(a(i, 0));
  return border;
}

// Checks the solver output against the definition and the oracle.
template <typename Solver>
void ExpectVerdict(Solver solve, const IntMatrix& sums, const IntMatrix& upper,
                   bool expected_feasible) {
  const auto result = solve(sums, upper);
  ASSERT_EQ(result.has_value(), expected_feasible)
      << "S=" << ToString(sums) << " U=" << ToString(upper);
  if (result) {
    EXPECT_TRUE(verify_solution(*result, Upper(sums, upper)));
  }
}

TEST(Offsets, SingleWindow) {
  const OffsetMatrix o = compute_offsets(IntMatrix{{7}}, 2, 2, 3);
  EXPECT_EQ(o.b, (IntMatrix{{3, 0}, {0, 4}}));
}

TEST(Offsets, ZeroSums) {
  EXPECT_EQ(compute_offsets(IntMatrix(3, 4), 4, 5, 0).b, IntMatrix(4, 5));
}

TEST(Offsets, DimensionMismatch) {
  EXPECT_THROW(compute_offsets(IntMatrix(2, 2), 2, 2, 0), std::invalid_argument);
}

TEST(Offsets, RoundTripThroughAssemble) {
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    const IntMatrix a = RandomMatrix(rng, 5, 6, -5, 9);
    const OffsetMatrix o = compute_offsets(window_sums(a, WindowShape(2, 2)), 5, 6, a(0, 0));
    EXPECT_EQ(assemble(o, BorderOf(a)), a);
  }
}

TEST(Assemble, SingleWindowAlgebra) {
  const OffsetMatrix o = compute_offsets(IntMatrix{{9}}, 2, 2, 2);
  BorderAssignment border{2, {3}, {1}};
  EXPECT_EQ(assemble(o, border), (IntMatrix{{2, 3}, {1, 3}}));
}

TEST(Assemble, ZeroBorder) {
  const OffsetMatrix o = compute_offsets(IntMatrix(2, 3), 3, 4, 0);
  EXPECT_EQ(assemble(o, BorderAssignment{0, {0, 0, 0}, {0, 0}}), IntMatrix(3, 4));
}

TEST(Assemble, RandomBorderReproducesSums) {
  Rng rng(42);
  for (int t = 0; t < 20; ++t) {
    const IntMatrix sums = RandomMatrix(rng, 5, 5, -10, 10);
    const std::int64_t a00 = rng.Uniform(-3, 3);
    BorderAssignment border{a00, {}, {}};
    for (int k = 0; k < 5; ++k) border.x.push_back(rng.Uniform(-5, 5));
    for (int k = 0; k < 5; ++k) border.y.push_back(rng.Uniform(-5, 5));
    const IntMatrix a = assemble(compute_offsets(sums, 6, 6, a00), border);
    EXPECT_EQ(window_sums(a, WindowShape(2, 2)), sums);
  }
}

TEST(Assemble, BorderLengthMismatch) {
  const OffsetMatrix o = compute_offsets(IntMatrix(1, 1), 2, 2, 0);
  EXPECT_THROW(assemble(o, BorderAssignment{0, {0, 0}, {0}}), std::invalid_argument);
}

TEST(Binary, Examples) {
  const IntMatrix ones(2, 2, 1);
  EXPECT_EQ(solve_binary(IntMatrix{{4}}, ones), (IntMatrix{{1, 1}, {1, 1}}));
  EXPECT_FALSE(solve_binary(IntMatrix{{5}}, ones));
  ExpectVerdict(solve_binary, IntMatrix{{2}}, ones, true);
  EXPECT_EQ(AllSolutions(Upper(IntMatrix{{2}}, ones), 0, 1).size(), 6u);
}

TEST(Binary, AllTwoSums) {
  ExpectVerdict(solve_binary, IntMatrix(7, 7, 2), IntMatrix(8, 8, 1), true);
}

TEST(Binary, InputErrors) {
  EXPECT_THROW(solve_binary(IntMatrix{{1}}, IntMatrix{{1, 2}, {1, 1}}), std::invalid_argument);
  EXPECT_THROW(solve_binary(IntMatrix{{1}}, IntMatrix{{1, -1}, {1, 1}}), std::invalid_argument);
  EXPECT_THROW(solve_binary(IntMatrix(2, 2), IntMatrix(2, 2, 1)), std::invalid_argument);
  EXPECT_THROW(solve_binary(IntMatrix(), IntMatrix{{1, 1}}), std::invalid_argument);
}

TEST(Bounded, Examples) {
  EXPECT_EQ(solve_bounded(IntMatrix{{0}}, IntMatrix{{3, 1}, {0, 5}}), IntMatrix(2, 2));
  EXPECT_FALSE(solve_bounded(IntMatrix{{13}}, IntMatrix(2, 2, 3)));
  ExpectVerdict(solve_bounded, IntMatrix{{4}}, IntMatrix(2, 2, 3), true);
  // Compositions of 4 into four parts, less the four with a part equal to 4.
  EXPECT_EQ(AllSolutions(Upper(IntMatrix{{4}}, IntMatrix(2, 2, 3)), 0, 3).size(), 31u);
}

TEST(Bounded, InputErrors) {
  EXPECT_THROW(solve_bounded(IntMatrix{{1}}, IntMatrix{{1, -1}, {1, 1}}), std::invalid_argument);
  EXPECT_THROW(solve_bounded_noenum(IntMatrix(1, 2), IntMatrix(2, 2)), std::invalid_argument);
}

TEST(Bounded, PicksSmallestCornerPivot) {
  IntMatrix upper(3, 4, 5);
  upper(2, 3) = 0;
  const IntMatrix a{{4, 1, 2, 3}, {0, 5, 1, 1}, {2, 2, 3, 0}};
  const auto result = solve_bounded(window_sums(a, WindowShape(2, 2)), upper);
  ASSERT_TRUE(result);
  EXPECT_EQ((*result)(2, 3), 0);
  EXPECT_TRUE(verify_solution(*result, Upper(window_sums(a, WindowShape(2, 2)), upper)));
}

TEST(NoEnum, Examples) {
  EXPECT_EQ(solve_bounded_noenum(IntMatrix{{0}}, IntMatrix(2, 2, 4)), IntMatrix(2, 2));
  EXPECT_FALSE(solve_bounded_noenum(IntMatrix{{13}}, IntMatrix(2, 2, 3)));
  ExpectVerdict(solve_bounded_noenum, IntMatrix{{4}}, IntMatrix(2, 2, 3), true);
}

// Every 2x2 bound matrix with cells in 0..4 and every sum in range, against
// exhaustive enumeration.
TEST(AllSolvers, Exhaustive2x2) {
  testing::ForEachMatrix(2, 2, 0, 4, [](const IntMatrix& upper) {
    std::int64_t total = 0;
    for (std::int64_t c : upper.cells()) total += c;
    bool binary = upper.MaxAbs() <= 1;
    for (std::int64_t s = 0; s <= total + 1; ++s) {
      const IntMatrix sums{{s}};
      const bool expected = !AllSolutions(Upper(sums, upper), 0, 4).empty();
      ExpectVerdict(solve_bounded, sums, upper, expected);
      ExpectVerdict(solve_bounded_noenum, sums, upper, expected);
      if (binary) ExpectVerdict(solve_binary, sums, upper, expected);
    }
  });
}

IntMatrix MixedSums(Rng& rng, const IntMatrix& upper, int kind) {
  const IntMatrix s = window_sums(RandomBelow(rng, upper), WindowShape(2, 2));
  if (kind == 0) return s;
  IntMatrix out = s;
  if (kind == 1) {
    const auto i = static_cast<std::size_t>(rng.Uniform(0, static_cast<std::int64_t>(s.rows()) - 1));
    const auto j = static_cast<std::size_t>(rng.Uniform(0, static_cast<std::int64_t>(s.cols()) - 1));
    out(i, j) += rng.Coin() ? 1 : -1;
    return out;
  }
  return RandomMatrix(rng, s.rows(), s.cols(), 0, 4 * static_cast<std::int64_t>(upper.MaxAbs()));
}

TEST(Bounded, MatchesOracleOnRandom4x4) {
  Rng rng(43);
  for (int t = 0; t < 200; ++t) {
    const IntMatrix upper = RandomMatrix(rng, 4, 4, 0, 3);
    const IntMatrix sums = MixedSums(rng, upper, t % 3);
    const auto oracle = oracle::brute_solve(Upper(sums, upper));
    ASSERT_NE(oracle.status, oracle::SearchStatus::kBudgetExhausted);
    ExpectVerdict(solve_bounded, sums, upper, oracle.status == oracle::SearchStatus::kSolved);
  }
}

TEST(Binary, MatchesOracleOnRandomSmall) {
  Rng rng(44);
  for (int t = 0; t < 300; ++t) {
    const auto m = static_cast<std::size_t>(rng.Uniform(2, 4));
    const auto n = static_cast<std::size_t>(rng.Uniform(2, 4));
    const IntMatrix upper = RandomMatrix(rng, m, n, 0, 1);
    const IntMatrix sums = MixedSums(rng, upper, t % 3);
    const auto oracle = oracle::brute_solve(Upper(sums, upper));
    ExpectVerdict(solve_binary, sums, upper, oracle.status == oracle::SearchStatus::kSolved);
  }
}

TEST(NoEnum, MatchesBoundedOnRandom) {
  Rng rng(45);
  for (int t = 0; t < 500; ++t) {
    const auto m = static_cast<std::size_t>(rng.Uniform(2, 6));
    const auto n = static_cast<std::size_t>(rng.Uniform(2, 6));
    const IntMatrix upper = RandomMatrix(rng, m, n, 0, 4);
    const IntMatrix sums = MixedSums(rng, upper, t % 3);
    const bool expected = solve_bounded(sums, upper).has_value();
    ExpectVerdict(solve_bounded_noenum, sums, upper, expected);
  }
}

TEST(AllSolvers, RoundTrip) {
  Rng rng(46);
  for (int t = 0; t < 200; ++t) {
    const auto m = static_cast<std::size_t>(rng.Uniform(2, 12));
    const auto n = static_cast<std::size_t>(rng.Uniform(2, 12));
    const IntMatrix upper = RandomMatrix(rng, m, n, 0, t % 2 == 0 ? 1 : 6);
    const IntMatrix sums = window_sums(RandomBelow(rng, upper), WindowShape(2, 2));
    ExpectVerdict(solve_bounded, sums, upper, true);
    ExpectVerdict(solve_bounded_noenum, sums, upper, true);
    if (upper.MaxAbs() <= 1) ExpectVerdict(solve_binary, sums, upper, true);
  }
}

TEST(AllSolvers, BinaryAgreesWithBoundedOnZeroOneBounds) {
  Rng rng(47);
  for (int t = 0; t < 300; ++t) {
    const auto m = static_cast<std::size_t>(rng.Uniform(2, 8));
    const auto n = static_cast<std::size_t>(rng.Uniform(2, 8));
    const IntMatrix upper = RandomMatrix(rng, m, n, 0, 1);
    const IntMatrix sums = MixedSums(rng, upper, t % 3);
    ExpectVerdict(solve_binary, sums, upper, solve_bounded(sums, upper).has_value());
  }
}

TEST(AlphaBeta, VariableLayout) {
  const AlphaBetaSystem sys(compute_offsets(IntMatrix(2, 3), 3, 4, 0), IntMatrix(3, 4, 1));
  EXPECT_EQ(sys.num_vars(), 6u);
  EXPECT_EQ(sys.alpha_var(1), 0u);
  EXPECT_EQ(sys.alpha_var(3), 2u);
  EXPECT_EQ(sys.beta_var(1), 3u);
  EXPECT_EQ(sys.beta_var(2), 4u);
  EXPECT_EQ(sys.theta_var(), 5u);
  EXPECT_FALSE(sys.empty());
}

TEST(AlphaBeta, UnreachableSumGivesNegativeCycle) {
  // b11 = -20 needs |alpha_1 - beta_1| >= 20, but both lie in [0, 1].
  const AlphaBetaSystem sys(compute_offsets(IntMatrix{{-20}}, 2, 2, 0), IntMatrix(2, 2, 1));
  const diffcon::DiffSystem d = sys.ToDiffSystem();
  const diffcon::Result r = diffcon::solve_diff(d);
  EXPECT_FALSE(r.feasible);
  EXPECT_TRUE(diffcon::check_certificate(d, r));
}

double BinarySeconds(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const IntMatrix upper(n, n, 1);
  const IntMatrix sums = window_sums(RandomBelow(rng, upper), WindowShape(2, 2));
  double best = 1e9;
  for (int rep = 0; rep < 3; ++rep) {
    const auto start = std::chrono::steady_clock::now();
    const auto result = solve_binary(sums, upper);
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    EXPECT_TRUE(result.has_value());
    best = std::min(best, dt.count());
  }
  return best;
}

TEST(Binary, DoublingSideScalesWithArea) {
  const double ratio = BinarySeconds(512, 48) / BinarySeconds(256, 48);
  EXPECT_LE(ratio, 4.5) << "time ratio " << ratio;
}

}  // namespace
}  // namespace windowsum::solver22
