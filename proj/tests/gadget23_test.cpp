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

#include <algorithm>
#include <stdexcept>

#include "windowsum/gadget23.hpp"
#include "windowsum/oracle.hpp"
#include "windowsum/random.hpp"

namespace windowsum::gadget {
namespace {

using K = WitnessStep::Kind;

// Every atomic holds for the given slot values (independent of materialize).
bool AtomicsHold(const GadgetProgram& prog, const SlotValues& v) {
  for (const AtomicConstraint& c : prog.atomics()) {
    std::int64_t e = 0;
    switch (c.form) {
      case Form::kBound:
        e = v.at(c.slot);
        break;
      case Form::kDiffXP:
        e = v.at(X(c.row)) - v.at(P(c.col));
        break;
      case Form::kDiffYQ:
        e = v.at(Y(c.row)) - v.at(Q(c.col));
        break;
      case Form::kTripleXYZ:
        e = v.at(X(c.row)) + v.at(Y(c.row)) + v.at(Z(c.col));
        break;
    }
    if (e < c.lo || e > c.hi) return false;
  }
  return true;
}

struct Enumerated {
  oracle::SearchStatus status;
  std::vector<SlotValues> values;
};

Enumerated Solve(const GadgetProgram& prog) {
  const Materialized mat = materialize(prog);
  const auto r = oracle::brute_enumerate(mat.instance, {}, 1000);
  Enumerated out{r.status, {}};
  for (const IntMatrix& a : r.solutions) {
    EXPECT_TRUE(verify_solution(a, mat.instance));
    out.values.push_back(decode_values(a, prog));
    EXPECT_TRUE(AtomicsHold(prog, out.values.back()));
  }
  return out;
}

std::vector<std::int64_t> Values(const Enumerated& e, VarRef v) {
  std::vector<std::int64_t> out;
  for (const SlotValues& s : e.values) out.push_back(s.at(v));
  std::sort(out.begin(), out.end());
  return out;
}

SlotValues Base(const GadgetProgram& prog, std::initializer_list<std::pair<VarRef, std::int64_t>> kv) {
  SlotValues base({prog.count(Group::kX), prog.count(Group::kY), prog.count(Group::kZ),
                   prog.count(Group::kP), prog.count(Group::kQ)});
  for (const auto& [v, value] : kv) base.set(v, value);
  return base;
}

TEST(VarRef, Parse) {
  EXPECT_EQ(ParseVarRef("x3"), X(3));
  EXPECT_EQ(ParseVarRef("q12"), Q(12));
  EXPECT_EQ(ToString(Z(4)), "z4");
  EXPECT_THROW(ParseVarRef("w1"), std::invalid_argument);
  EXPECT_THROW(ParseVarRef("x0"), std::invalid_argument);
  EXPECT_THROW(ParseVarRef("x"), std::invalid_argument);
}

TEST(Program, ZeroSlotPinned) {
  GadgetProgram prog;
  EXPECT_EQ(prog.zero_z(), Z(1));
  EXPECT_EQ(prog.domain(Z(1)), (Interval{0, 0}));
  EXPECT_EQ(prog.num_rows(), 0u);
  EXPECT_EQ(LayoutShape(prog), (std::pair<std::size_t, std::size_t>{1, 5}));
}

TEST(Program, BaseRowsComeInPairs) {
  GadgetProgram prog;
  EXPECT_EQ(prog.AddBase(Group::kX, 0, 1), X(1));
  EXPECT_EQ(prog.AddBase(Group::kY, 0, 2), Y(2));
  EXPECT_EQ(prog.count(Group::kX), 2u);
  EXPECT_EQ(prog.count(Group::kY), 2u);
  EXPECT_EQ(prog.domain(Y(1)), (Interval{0, 0}));
  EXPECT_EQ(prog.domain(X(2)), (Interval{0, 0}));
  EXPECT_TRUE(prog.is_base(X(1)));
  EXPECT_FALSE(prog.is_base(Y(1)));
  EXPECT_NO_THROW(prog.CheckComplete());
}

TEST(Program, Errors) {
  GadgetProgram prog;
  EXPECT_THROW(prog.AddBound(X(1), 0, 1), std::out_of_range);
  EXPECT_THROW(prog.AddBound(Z(1), 1, 0), std::invalid_argument);
  EXPECT_THROW(eq_xx(prog, 1, 2), std::out_of_range);
  EXPECT_THROW(eq_yy(prog, 1, 1), std::out_of_range);
  EXPECT_EQ(prog.count(Group::kP), 0u);
  const std::size_t row = prog.AllocateRow();
  EXPECT_THROW(prog.CheckComplete(), std::logic_error);
  prog.Define(X(row), K::kConstant, {}, 0);
  prog.Define(Y(row), K::kConstant, {}, 0);
  EXPECT_NO_THROW(prog.CheckComplete());
}

TEST(Program, IncompletePlanIsAnError) {
  GadgetProgram prog;
  prog.AddBase(Group::kX, 0, 1);
  prog.AllocateColumnSlot(Group::kP);
  EXPECT_THROW(build_witness_matrix(prog, Base(prog, {{X(1), 1}})), std::logic_error);
  EXPECT_THROW(materialize(prog), std::logic_error);
}

TEST(Program, MissingBaseValueIsAnError) {
  GadgetProgram prog;
  prog.AddBase(Group::kX, 0, 1);
  EXPECT_THROW(build_witness_matrix(prog, Base(prog, {})), std::invalid_argument);
}

TEST(Gadget, EqXxForcesEquality) {
  GadgetProgram prog;
  prog.AddBase(Group::kX, 0, 1);
  prog.AddBase(Group::kX, 1, 1);
  eq_xx(prog, 1, 2);
  const Enumerated e = Solve(prog);
  EXPECT_EQ(Values(e, X(1)), (std::vector<std::int64_t>{1}));
  EXPECT_EQ(Values(e, X(2)), (std::vector<std::int64_t>{1}));
}

TEST(Gadget, EqXxSelfIsVacuous) {
  GadgetProgram prog;
  prog.AddBase(Group::kX, 0, 1);
  eq_xx(prog, 1, 1);
  EXPECT_EQ(Values(Solve(prog), X(1)), (std::vector<std::int64_t>{0, 1}));
}

TEST(Gadget, EqXxWitnessPlan) {
  GadgetProgram prog;
  prog.AddBase(Group::kX, 0, 1);
  prog.AddBase(Group::kX, 0, 1);
  eq_xx(prog, 1, 2);
  const IntMatrix a = build_witness_matrix(prog, Base(prog, {{X(1), 1}, {X(2), 1}}));
  EXPECT_TRUE(verify_solution(a, materialize(prog).instance));
  const SlotValues v = decode_values(a, prog);
  EXPECT_EQ(v.at(P(1)), 1);
  EXPECT_TRUE(AtomicsHold(prog, v));
}

TEST(Gadget, EqYy) {
  GadgetProgram prog;
  prog.AddBase(Group::kY, 0, 1);
  prog.AddBase(Group::kY, 1, 1);
  eq_yy(prog, 1, 2);
  EXPECT_EQ(Values(Solve(prog), Y(1)), (std::vector<std::int64_t>{1}));
}

TEST(Gadget, EqXyForcesEquality) {
  GadgetProgram prog;
  prog.AddBase(Group::kX, 0, 1);
  prog.AddBase(Group::kY, 1, 1);
  eq_xy(prog, 1, 2);
  const Enumerated e = Solve(prog);
  EXPECT_EQ(Values(e, X(1)), (std::vector<std::int64_t>{1}));
}

TEST(Gadget, EqXyPinnedEndpoints) {
  for (std::int64_t other : {0, 1}) {
    GadgetProgram prog;
    prog.AddBase(Group::kX, 0, 0);
    prog.AddBase(Group::kY, other, other);
    eq_xy(prog, 1, 2);
    const Enumerated e = Solve(prog);
    if (other == 0) {
      ASSERT_EQ(e.values.size(), 1u);
      EXPECT_EQ(e.values[0].at(Z(2)), 0);
    } else {
      EXPECT_EQ(e.status, oracle::SearchStatus::kSolved);
      EXPECT_TRUE(e.values.empty());
    }
  }
}

TEST(Gadget, EqZzForcesEquality) {
  GadgetProgram prog;
  const VarRef a = prog.AddBase(Group::kZ, 1, 1);
  const VarRef b = prog.AddBase(Group::kZ, 0, 1);
  eq_zz(prog, a.index, b.index);
  EXPECT_EQ(Values(Solve(prog), b), (std::vector<std::int64_t>{1}));
}

TEST(Gadget, EqXzBothZero) {
  GadgetProgram prog;
  prog.AddBase(Group::kX, 0, 0);
  const VarRef z = prog.AddBase(Group::kZ, 0, 0);
  eq_xz(prog, 1, z.index);
  EXPECT_EQ(Solve(prog).values.size(), 1u);
}

TEST(Gadget, EqXzForcesEquality) {
  GadgetProgram prog;
  prog.AddBase(Group::kX, 0, 1);
  const VarRef z = prog.AddBase(Group::kZ, 1, 1);
  eq_xz(prog, 1, z.index);
  EXPECT_EQ(Values(Solve(prog), X(1)), (std::vector<std::int64_t>{1}));
}

TEST(Gadget, EqYzPropagates) {
  Rng rng(61);
  for (int t = 0; t < 2; ++t) {
    const std::int64_t v = t == 0 ? rng.Uniform(0, 1) : 1 - rng.Uniform(0, 1);
    GadgetProgram prog;
    const VarRef y = prog.AddBase(Group::kY, v, v);
    const VarRef z = prog.AddBase(Group::kZ, 0, 1);
    eq_yz(prog, y.index, z.index);
    EXPECT_EQ(Values(Solve(prog), z), (std::vector<std::int64_t>{v}));
  }
}

TEST(Compile, PairSumForced) {
  const GadgetProgram prog = compile_linear({{{X(1), X(2)}, 2, 2}},
                                            {{X(1), 0, 1}, {X(2), 0, 1}});
  const Enumerated e = Solve(prog);
  ASSERT_EQ(e.status, oracle::SearchStatus::kSolved);
  ASSERT_EQ(e.values.size(), 1u);
  EXPECT_EQ(e.values[0].at(X(1)), 1);
  EXPECT_EQ(e.values[0].at(X(2)), 1);
}

TEST(Compile, PairSumInfeasible) {
  const GadgetProgram prog = compile_linear({{{X(1), X(2)}, 3, 3}},
                                            {{X(1), 0, 1}, {X(2), 0, 1}});
  const auto r = oracle::brute_solve(materialize(prog).instance);
  EXPECT_EQ(r.status, oracle::SearchStatus::kInfeasible);
}

TEST(Compile, TripleSumHasThreeSolutions) {
  const GadgetProgram prog = compile_linear(
      {{{X(1), X(2), X(3)}, 1, 1}}, {{X(1), 0, 1}, {X(2), 0, 1}, {X(3), 0, 1}});
  const Enumerated e = Solve(prog);
  ASSERT_EQ(e.values.size(), 3u);
  for (const SlotValues& v : e.values) {
    EXPECT_EQ(v.at(X(1)) + v.at(X(2)) + v.at(X(3)), 1);
  }
}

TEST(Compile, DuplicatedTerms) {
  const GadgetProgram prog = compile_linear({{{X(1), X(1)}, 2, 2}}, {{X(1), 0, 1}});
  EXPECT_EQ(Values(Solve(prog), X(1)), (std::vector<std::int64_t>{1}));
}

TEST(Compile, SingleTermBecomesBound) {
  const GadgetProgram prog = compile_linear({{{X(1)}, 1, 1}}, {{X(1), 0, 3}});
  EXPECT_EQ(prog.domain(X(1)), (Interval{1, 1}));
  EXPECT_EQ(prog.num_rows(), 1u);
}

TEST(Compile, Errors) {
  EXPECT_THROW(compile_linear({{{X(1), X(1), X(1), X(1)}, 0, 0}}, {{X(1), 0, 1}}),
               std::invalid_argument);
  EXPECT_THROW(compile_linear({{{X(1), X(2)}, 0, 1}}, {{X(1), 0, 1}}), std::invalid_argument);
  EXPECT_THROW(compile_linear({{{Y(1)}, 0, 1}}, {}), std::invalid_argument);
  EXPECT_THROW(compile_linear({{{X(1)}, 2, 1}}, {{X(1), 0, 1}}), std::invalid_argument);
}

TEST(Compile, UnreferencedBasePinnedToZero) {
  const GadgetProgram prog = compile_linear({{{X(3)}, 0, 1}}, {{X(3), 0, 1}});
  EXPECT_EQ(prog.domain(X(1)), (Interval{0, 0}));
  EXPECT_EQ(prog.domain(X(2)), (Interval{0, 0}));
}

std::vector<LinearConstraint> RandomConstraints(Rng& rng, std::size_t num_base, int count) {
  std::vector<LinearConstraint> out;
  for (int c = 0; c < count; ++c) {
    LinearConstraint lc{{}, 0, 0};
    const auto terms = rng.Uniform(1, 3);
    for (std::int64_t k = 0; k < terms; ++k) {
      lc.terms.push_back(X(static_cast<std::size_t>(rng.Uniform(1, static_cast<std::int64_t>(num_base)))));
    }
    lc.lo = rng.Uniform(0, 1);
    lc.hi = lc.lo + rng.Uniform(0, 2);
    out.push_back(lc);
  }
  return out;
}

std::vector<BaseBound> UnitBounds(std::size_t num_base) {
  std::vector<BaseBound> out;
  for (std::size_t v = 1; v <= num_base; ++v) out.push_back({X(v), 0, 1});
  return out;
}

TEST(Compile, SizeWithinLinearBound) {
  Rng rng(62);
  for (int t = 0; t < 50; ++t) {
    const auto nb = static_cast<std::size_t>(rng.Uniform(1, 8));
    const auto nc = static_cast<int>(rng.Uniform(0, 12));
    const GadgetProgram prog = compile_linear(RandomConstraints(rng, nb, nc), UnitBounds(nb));
    const auto [rows, cols] = LayoutShape(prog);
    const std::size_t bound = CompiledSizeBound(static_cast<std::size_t>(nc), nb);
    EXPECT_LE(rows - 1, bound);
    EXPECT_LE((cols - 2) / 3, bound);
  }
}

TEST(Layout, ZeroSumIdentity) {
  Rng rng(63);
  const GadgetProgram prog = compile_linear(RandomConstraints(rng, 4, 6), UnitBounds(4));
  for (int t = 0; t < 100; ++t) {
    SlotValues v({prog.count(Group::kX), prog.count(Group::kY), prog.count(Group::kZ),
                  prog.count(Group::kP), prog.count(Group::kQ)});
    for (Group g : {Group::kX, Group::kY, Group::kZ, Group::kP, Group::kQ}) {
      for (std::size_t k = 1; k <= prog.count(g); ++k) v.set({g, k}, rng.Uniform(-50, 50));
    }
    const IntMatrix a = layout_matrix(prog, v);
    EXPECT_EQ(window_sums(a, WindowShape(2, 3)), IntMatrix(a.rows() - 1, a.cols() - 2));
    const SlotValues back = decode_values(a, prog);
    for (Group g : {Group::kX, Group::kY, Group::kZ, Group::kP, Group::kQ}) {
      for (std::size_t k = 1; k <= prog.count(g); ++k) EXPECT_EQ(back.at({g, k}), v.at({g, k}));
    }
  }
}

TEST(Layout, CellConvention) {
  GadgetProgram prog;
  prog.AddBase(Group::kX, -9, 9);
  prog.AddBase(Group::kX, -9, 9);
  eq_xx(prog, 1, 2);
  eq_yy(prog, 1, 2);
  SlotValues v({2, 2, 1, 1, 1});
  v.set(X(1), 2);
  v.set(Y(1), 3);
  v.set(X(2), 5);
  v.set(Y(2), 7);
  v.set(Z(1), 11);
  v.set(P(1), 13);
  v.set(Q(1), 17);
  const IntMatrix a = layout_matrix(prog, v);
  EXPECT_EQ(a, (IntMatrix{{0, 0, 11, 13, 17},
                          {2, 3, -(2 + 3 + 11), 2 - 13, 3 - 17},
                          {-5, -7, 5 + 7 + 11, -(5 - 13), -(7 - 17)}}));
}

TEST(Materialize, ZeroWitnessVerifies) {
  Rng rng(64);
  for (int t = 0; t < 20; ++t) {
    const GadgetProgram prog = compile_linear(RandomConstraints(rng, 5, 8), UnitBounds(5));
    SlotValues base = Base(prog, {});
    for (std::size_t v = 1; v <= 5; ++v) base.set(X(v), 0);
    bool zero_ok = true;
    for (const auto& c : prog.atomics()) {
      if (c.lo > 0 || c.hi < 0) zero_ok = false;
    }
    const Materialized mat = materialize(prog);
    EXPECT_EQ(static_cast<bool>(verify_solution(build_witness_matrix(prog, base), mat.instance)),
              zero_ok);
  }
}

TEST(Materialize, WitnessFromSatisfyingBaseVerifies) {
  Rng rng(65);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const auto constraints = RandomConstraints(rng, 4, 4);
    const GadgetProgram prog = compile_linear(constraints, UnitBounds(4));
    const Materialized mat = materialize(prog);
    for (int mask = 0; mask < 16; ++mask) {
      SlotValues base = Base(prog, {});
      for (std::size_t v = 1; v <= 4; ++v) base.set(X(v), (mask >> (v - 1)) & 1);
      bool sat = true;
      for (const auto& c : constraints) {
        std::int64_t s = 0;
        for (VarRef r : c.terms) s += base.at(r);
        sat = sat && c.lo <= s && s <= c.hi;
      }
      const IntMatrix a = build_witness_matrix(prog, base);
      EXPECT_EQ(static_cast<bool>(verify_solution(a, mat.instance)), sat);
      if (sat) {
        ++checked;
        const SlotValues back = decode_values(a, prog);
        for (std::size_t v = 1; v <= 4; ++v) EXPECT_EQ(back.at(X(v)), base.at(X(v)));
      }
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(Materialize, DontCareRange) {
  const GadgetProgram prog = compile_linear({}, {{X(1), -4, 2}});
  const Materialized mat = materialize(prog);
  EXPECT_EQ(mat.dont_care, 13);
  EXPECT_FALSE(mat.conflict);
  ASSERT_TRUE(mat.instance.has_lower());
  // Cell (1,2) holds -(x1 + y1 + z1) and carries no atomic.
  EXPECT_EQ((*mat.instance.lower())(1, 2), -13);
  EXPECT_EQ(mat.instance.upper()(1, 2), 13);
  // Cell (1,0) holds x1 with bound [-4, 2].
  EXPECT_EQ((*mat.instance.lower())(1, 0), -4);
  EXPECT_EQ(mat.instance.upper()(1, 0), 2);
}

TEST(Materialize, SignFolding) {
  GadgetProgram prog;
  prog.AddBase(Group::kX, 0, 3);
  prog.AddBase(Group::kX, 0, 3);
  const Materialized mat = materialize(prog);
  // Row 2 stores -x2.
  EXPECT_EQ((*mat.instance.lower())(2, 0), -3);
  EXPECT_EQ(mat.instance.upper()(2, 0), 0);
}

TEST(Materialize, ConflictIsFlaggedAndInfeasible) {
  GadgetProgram prog;
  prog.AddBase(Group::kX, 0, 0);
  prog.AddBound(X(1), 1, 1);
  const Materialized mat = materialize(prog);
  EXPECT_TRUE(mat.conflict);
  EXPECT_EQ(oracle::brute_solve(mat.instance).status, oracle::SearchStatus::kInfeasible);
}

TEST(Materialize, ContradictoryBoundsCompileToInfeasible) {
  const GadgetProgram prog = compile_linear({{{X(1)}, 0, 0}, {{X(1)}, 1, 1}, {{X(1), X(2)}, 0, 2}},
                                            {{X(1), 0, 1}, {X(2), 0, 1}});
  const Materialized mat = materialize(prog);
  EXPECT_TRUE(mat.conflict);
  EXPECT_EQ(oracle::brute_solve(mat.instance).status, oracle::SearchStatus::kInfeasible);
}

TEST(Materialize, ConflictOnEmptyProgramStillInfeasible) {
  GadgetProgram prog;
  prog.AddBound(Z(1), 1, 1);
  const Materialized mat = materialize(prog);
  EXPECT_TRUE(mat.conflict);
  EXPECT_EQ(oracle::brute_solve(mat.instance).status, oracle::SearchStatus::kInfeasible);
}

TEST(Decode, DimensionMismatch) {
  GadgetProgram prog;
  EXPECT_THROW(decode_values(IntMatrix(2, 5), prog), std::invalid_argument);
}

TEST(Json, RoundTrip) {
  Rng rng(66);
  const GadgetProgram prog = compile_linear(RandomConstraints(rng, 3, 4), UnitBounds(3));
  const nlohmann::json dump = prog.ToJson();
  const GadgetProgram back = GadgetProgram::FromJson(dump);
  EXPECT_EQ(back.ToJson(), dump);
  const Materialized a = materialize(prog);
  const Materialized b = materialize(back);
  EXPECT_EQ(a.instance.upper(), b.instance.upper());
  EXPECT_EQ(a.instance.lower(), b.instance.lower());
  EXPECT_EQ(dump.at("zero_z"), "z1");
}

TEST(Json, Malformed) {
  EXPECT_THROW(GadgetProgram::FromJson(nlohmann::json::object()), std::exception);
  nlohmann::json j = GadgetProgram().ToJson();
  j["atomics"].push_back({{"form", "bogus"}});
  EXPECT_THROW(GadgetProgram::FromJson(j), std::exception);
}

}  // namespace
}  // namespace windowsum::gadget
