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

#include "windowsum/gadget23.hpp"

#include <algorithm>
#include <stdexcept>

namespace windowsum::gadget {

namespace {

constexpr std::size_t Idx(Group g) { return static_cast<std::size_t>(g); }
constexpr std::int64_t Sign(std::size_t k) { return (k % 2 == 0) ? 1 : -1; }
constexpr char kGroupNames[] = {'x', 'y', 'z', 'p', 'q'};

const char* FormName(Form f) {
  switch (f) {
    case Form::kBound:
      return "bound";
    case Form::kDiffXP:
      return "diff_xp";
    case Form::kDiffYQ:
      return "diff_yq";
    case Form::kTripleXYZ:
      return "triple_xyz";
  }
  return "?";
}

Form ParseForm(const std::string& s) {
  for (Form f : {Form::kBound, Form::kDiffXP, Form::kDiffYQ, Form::kTripleXYZ}) {
    if (s == FormName(f)) return f;
  }
  throw std::invalid_argument("unknown atomic form '" + s + "'");
}

const char* KindName(WitnessStep::Kind k) {
  switch (k) {
    case WitnessStep::Kind::kCopy:
      return "copy";
    case WitnessStep::Kind::kConstant:
      return "const";
    case WitnessStep::Kind::kNegSum:
      return "negsum";
  }
  return "?";
}

WitnessStep::Kind ParseKind(const std::string& s) {
  using K = WitnessStep::Kind;
  for (K k : {K::kCopy, K::kConstant, K::kNegSum}) {
    if (s == KindName(k)) return k;
  }
  throw std::invalid_argument("unknown witness step kind '" + s + "'");
}

}  // namespace

std::string ToString(VarRef v) { return kGroupNames[Idx(v.group)] + std::to_string(v.index); }

VarRef ParseVarRef(const std::string& s) {
  if (s.size() < 2) throw std::invalid_argument("bad slot name '" + s + "'");
  const auto* it = std::find(std::begin(kGroupNames), std::end(kGroupNames), s[0]);
  if (it == std::end(kGroupNames)) throw std::invalid_argument("bad slot group in '" + s + "'");
  std::size_t pos = 0;
  const unsigned long index = std::stoul(s.substr(1), &pos);
  if (pos != s.size() - 1 || index == 0) throw std::invalid_argument("bad slot index in '" + s + "'");
  return {static_cast<Group>(it - std::begin(kGroupNames)), index};
}

AtomicConstraint AtomicConstraint::Bound(VarRef v, std::int64_t lo, std::int64_t hi) {
  AtomicConstraint c{Form::kBound, v, 0, 0, lo, hi};
  return c;
}
AtomicConstraint AtomicConstraint::DiffXP(std::size_t i, std::size_t k, std::int64_t lo,
                                          std::int64_t hi) {
  return {Form::kDiffXP, VarRef{Group::kX, 0}, i, k, lo, hi};
}
AtomicConstraint AtomicConstraint::DiffYQ(std::size_t i, std::size_t k, std::int64_t lo,
                                          std::int64_t hi) {
  return {Form::kDiffYQ, VarRef{Group::kX, 0}, i, k, lo, hi};
}
AtomicConstraint AtomicConstraint::TripleXYZ(std::size_t i, std::size_t k, std::int64_t lo,
                                             std::int64_t hi) {
  return {Form::kTripleXYZ, VarRef{Group::kX, 0}, i, k, lo, hi};
}

SlotValues::SlotValues(const std::array<std::size_t, kNumGroups>& counts) {
  for (std::size_t g = 0; g < kNumGroups; ++g) values_[g].resize(counts[g]);
}

std::optional<std::int64_t> SlotValues::get(VarRef v) const {
  const auto& vec = values_[Idx(v.group)];
  if (v.index == 0 || v.index > vec.size()) return std::nullopt;
  return vec[v.index - 1];
}

std::int64_t SlotValues::at(VarRef v) const {
  const auto value = get(v);
  if (!value) throw std::out_of_range("no value for slot " + ToString(v));
  return *value;
}

void SlotValues::set(VarRef v, std::int64_t value) {
  if (v.index == 0) throw std::out_of_range("slot indices are 1-based");
  auto& vec = values_[Idx(v.group)];
  if (v.index > vec.size()) vec.resize(v.index);
  vec[v.index - 1] = value;
}

GadgetProgram::GadgetProgram() {
  const VarRef zero = AllocateColumnSlot(Group::kZ);
  Define(zero, WitnessStep::Kind::kConstant, {}, 0);
}

std::size_t GadgetProgram::num_triples() const {
  return std::max({count(Group::kZ), count(Group::kP), count(Group::kQ), std::size_t{1}});
}

bool GadgetProgram::allocated(VarRef v) const {
  return v.index >= 1 && v.index <= count(v.group);
}

GadgetProgram::Slot& GadgetProgram::slot(VarRef v) {
  if (!allocated(v)) throw std::out_of_range("unallocated slot " + ToString(v));
  return slots_[Idx(v.group)][v.index - 1];
}

const GadgetProgram::Slot& GadgetProgram::slot(VarRef v) const {
  if (!allocated(v)) throw std::out_of_range("unallocated slot " + ToString(v));
  return slots_[Idx(v.group)][v.index - 1];
}

bool GadgetProgram::is_base(VarRef v) const { return slot(v).base; }

std::optional<Interval> GadgetProgram::domain(VarRef v) const { return slot(v).domain; }

std::size_t GadgetProgram::AllocateRow() {
  slots_[Idx(Group::kX)].emplace_back();
  slots_[Idx(Group::kY)].emplace_back();
  return num_rows();
}

VarRef GadgetProgram::AllocateColumnSlot(Group g) {
  if (g == Group::kX || g == Group::kY) {
    throw std::invalid_argument("x and y slots are allocated as rows");
  }
  slots_[Idx(g)].emplace_back();
  return {g, count(g)};
}

VarRef GadgetProgram::AddBase(Group g, std::int64_t lo, std::int64_t hi) {
  VarRef v{g, 0};
  if (g == Group::kX || g == Group::kY) {
    const std::size_t row = AllocateRow();
    v.index = row;
    const VarRef other = g == Group::kX ? Y(row) : X(row);
    Define(other, WitnessStep::Kind::kConstant, {}, 0);
  } else {
    v = AllocateColumnSlot(g);
  }
  slot(v).base = true;
  AddBound(v, lo, hi);
  return v;
}

Interval GadgetProgram::Range(WitnessStep::Kind kind, const std::vector<VarRef>& sources,
                              std::int64_t constant) const {
  auto dom = [&](VarRef s) {
    const Slot& src = slot(s);
    if (!(src.base || src.defined) || !src.domain) {
      throw std::logic_error("slot " + ToString(s) + " used before it is defined");
    }
    return *src.domain;
  };
  switch (kind) {
    case WitnessStep::Kind::kConstant:
      return {constant, constant};
    case WitnessStep::Kind::kCopy:
      if (sources.size() != 1) throw std::invalid_argument("copy takes one source");
      return dom(sources.front());
    case WitnessStep::Kind::kNegSum: {
      if (sources.empty()) throw std::invalid_argument("negated sum needs sources");
      Interval sum{0, 0};
      for (VarRef s : sources) {
        const Interval d = dom(s);
        sum.lo += d.lo;
        sum.hi += d.hi;
      }
      return {-sum.hi, -sum.lo};
    }
  }
  throw std::logic_error("unknown witness step");
}

void GadgetProgram::Define(VarRef v, WitnessStep::Kind kind, std::vector<VarRef> sources,
                           std::int64_t constant) {
  Slot& s = slot(v);
  if (s.base || s.defined) throw std::logic_error("slot " + ToString(v) + " defined twice");
  Interval range = Range(kind, sources, constant);
  // An empty source domain already makes materialize report a conflict.
  if (range.empty()) range = {0, 0};
  s.defined = true;
  plan_.push_back({v, kind, std::move(sources), constant});
  AddBound(v, range.lo, range.hi);
}

void GadgetProgram::Add(const AtomicConstraint& c) {
  if (c.lo > c.hi) throw std::invalid_argument("atomic constraint with lo > hi");
  switch (c.form) {
    case Form::kBound: {
      Slot& s = slot(c.slot);
      const Interval iv{c.lo, c.hi};
      s.domain = s.domain ? Interval{std::max(s.domain->lo, iv.lo), std::min(s.domain->hi, iv.hi)}
                          : iv;
      break;
    }
    case Form::kDiffXP:
      slot(X(c.row));
      slot(P(c.col));
      break;
    case Form::kDiffYQ:
      slot(Y(c.row));
      slot(Q(c.col));
      break;
    case Form::kTripleXYZ:
      slot(X(c.row));
      slot(Z(c.col));
      break;
  }
  atomics_.push_back(c);
}

std::vector<VarRef> GadgetProgram::base_slots() const {
  std::vector<VarRef> out;
  for (std::size_t g = 0; g < kNumGroups; ++g) {
    for (std::size_t k = 0; k < slots_[g].size(); ++k) {
      if (slots_[g][k].base) out.push_back({static_cast<Group>(g), k + 1});
    }
  }
  return out;
}

void GadgetProgram::CheckComplete() const {
  for (std::size_t g = 0; g < kNumGroups; ++g) {
    for (std::size_t k = 0; k < slots_[g].size(); ++k) {
      const Slot& s = slots_[g][k];
      const VarRef v{static_cast<Group>(g), k + 1};
      if (!s.base && !s.defined) {
        throw std::logic_error("witness plan incomplete: slot " + ToString(v) + " undefined");
      }
      if (!s.domain) throw std::logic_error("slot " + ToString(v) + " has no bound");
    }
  }
}

nlohmann::json GadgetProgram::ToJson() const {
  nlohmann::json j;
  j["counts"] = {{"x", count(Group::kX)}, {"y", count(Group::kY)}, {"z", count(Group::kZ)},
                 {"p", count(Group::kP)}, {"q", count(Group::kQ)}};
  j["zero_z"] = ToString(zero_z());
  auto base = nlohmann::json::array();
  for (VarRef v : base_slots()) base.push_back(ToString(v));
  j["base"] = base;
  auto atomics = nlohmann::json::array();
  for (const auto& c : atomics_) {
    nlohmann::json a{{"form", FormName(c.form)}, {"lo", c.lo}, {"hi", c.hi}};
    if (c.form == Form::kBound) {
      a["slot"] = ToString(c.slot);
    } else {
      a["row"] = c.row;
      a["col"] = c.col;
    }
    atomics.push_back(a);
  }
  j["atomics"] = atomics;
  auto plan = nlohmann::json::array();
  for (const auto& step : plan_) {
    nlohmann::json s{{"slot", ToString(step.target)}, {"kind", KindName(step.kind)}};
    if (step.kind == WitnessStep::Kind::kConstant) {
      s["value"] = step.constant;
    } else {
      auto src = nlohmann::json::array();
      for (VarRef v : step.sources) src.push_back(ToString(v));
      s["sources"] = src;
    }
    plan.push_back(s);
  }
  j["witness"] = plan;
  return j;
}

GadgetProgram GadgetProgram::FromJson(const nlohmann::json& j) {
  GadgetProgram prog;
  prog.slots_ = {};
  prog.atomics_.clear();
  prog.plan_.clear();
  const auto& counts = j.at("counts");
  for (std::size_t g = 0; g < kNumGroups; ++g) {
    prog.slots_[g].resize(counts.at(std::string(1, kGroupNames[g])).get<std::size_t>());
  }
  if (prog.count(Group::kX) != prog.count(Group::kY)) {
    throw std::invalid_argument("program: x and y counts differ");
  }
  if (prog.count(Group::kZ) < 1 || ParseVarRef(j.at("zero_z").get<std::string>()) != Z(1)) {
    throw std::invalid_argument("program: zero slot must be z1");
  }
  for (const auto& b : j.at("base")) prog.slot(ParseVarRef(b.get<std::string>())).base = true;
  for (const auto& s : j.at("witness")) {
    WitnessStep step{ParseVarRef(s.at("slot").get<std::string>()),
                     ParseKind(s.at("kind").get<std::string>()),
                     {},
                     0};
    if (step.kind == WitnessStep::Kind::kConstant) {
      step.constant = s.at("value").get<std::int64_t>();
    } else {
      for (const auto& src : s.at("sources")) {
        step.sources.push_back(ParseVarRef(src.get<std::string>()));
      }
    }
    Slot& target = prog.slot(step.target);
    if (target.base || target.defined) {
      throw std::invalid_argument("program: slot " + ToString(step.target) + " defined twice");
    }
    for (VarRef src : step.sources) {
      const Slot& s2 = prog.slot(src);
      if (!s2.base && !s2.defined) {
        throw std::invalid_argument("program: witness step uses undefined slot " + ToString(src));
      }
    }
    target.defined = true;
    prog.plan_.push_back(std::move(step));
  }
  for (const auto& a : j.at("atomics")) {
    AtomicConstraint c{ParseForm(a.at("form").get<std::string>()), VarRef{Group::kX, 0}, 0, 0,
                       a.at("lo").get<std::int64_t>(), a.at("hi").get<std::int64_t>()};
    if (c.form == Form::kBound) {
      c.slot = ParseVarRef(a.at("slot").get<std::string>());
    } else {
      c.row = a.at("row").get<std::size_t>();
      c.col = a.at("col").get<std::size_t>();
    }
    prog.Add(c);
  }
  if (prog.slot(Z(1)).domain != Interval{0, 0}) {
    throw std::invalid_argument("program: zero slot must be pinned to 0");
  }
  prog.CheckComplete();
  return prog;
}

void eq_xx(GadgetProgram& prog, std::size_t a, std::size_t b) {
  if (!prog.allocated(X(a)) || !prog.allocated(X(b))) {
    throw std::out_of_range("eq_xx: unallocated slot");
  }
  const VarRef p = prog.AllocateColumnSlot(Group::kP);
  prog.Define(p, WitnessStep::Kind::kCopy, {X(a)});
  prog.Add(AtomicConstraint::DiffXP(a, p.index, 0, 0));
  prog.Add(AtomicConstraint::DiffXP(b, p.index, 0, 0));
}

void eq_yy(GadgetProgram& prog, std::size_t a, std::size_t b) {
  if (!prog.allocated(Y(a)) || !prog.allocated(Y(b))) {
    throw std::out_of_range("eq_yy: unallocated slot");
  }
  const VarRef q = prog.AllocateColumnSlot(Group::kQ);
  prog.Define(q, WitnessStep::Kind::kCopy, {Y(a)});
  prog.Add(AtomicConstraint::DiffYQ(a, q.index, 0, 0));
  prog.Add(AtomicConstraint::DiffYQ(b, q.index, 0, 0));
}

void eq_xy(GadgetProgram& prog, std::size_t x_slot, std::size_t y_slot) {
  using K = WitnessStep::Kind;
  // x_a = x_i, y_i = 0, x_i + y_i + z_j = 0  gives z_j = -x_a;
  // y_b = y_k, x_k = 0, x_k + y_k + z_j = 0  gives y_b = -z_j.
  if (!prog.allocated(X(x_slot)) || !prog.allocated(Y(y_slot))) {
    throw std::out_of_range("eq_xy: unallocated slot");
  }
  const std::size_t i = prog.AllocateRow();
  const std::size_t k = prog.AllocateRow();
  const VarRef z = prog.AllocateColumnSlot(Group::kZ);

  prog.Define(X(i), K::kCopy, {X(x_slot)});
  eq_xx(prog, x_slot, i);
  prog.Define(Y(i), K::kConstant, {}, 0);
  prog.Define(z, K::kNegSum, {X(i), Y(i)});
  prog.Add(AtomicConstraint::TripleXYZ(i, z.index, 0, 0));

  prog.Define(X(k), K::kConstant, {}, 0);
  prog.Define(Y(k), K::kNegSum, {X(k), z});
  eq_yy(prog, y_slot, k);
  prog.Add(AtomicConstraint::TripleXYZ(k, z.index, 0, 0));
}

void eq_zz(GadgetProgram& prog, std::size_t a, std::size_t b) {
  using K = WitnessStep::Kind;
  // y_i = -z_a and x_j = -z_b, then y_i = x_j.
  if (!prog.allocated(Z(a)) || !prog.allocated(Z(b))) {
    throw std::out_of_range("eq_zz: unallocated slot");
  }
  const std::size_t i = prog.AllocateRow();
  const std::size_t j = prog.AllocateRow();
  prog.Define(X(i), K::kConstant, {}, 0);
  prog.Define(Y(i), K::kNegSum, {X(i), Z(a)});
  prog.Add(AtomicConstraint::TripleXYZ(i, a, 0, 0));
  prog.Define(Y(j), K::kConstant, {}, 0);
  prog.Define(X(j), K::kNegSum, {Y(j), Z(b)});
  prog.Add(AtomicConstraint::TripleXYZ(j, b, 0, 0));
  eq_xy(prog, j, i);
}

void eq_xz(GadgetProgram& prog, std::size_t x_slot, std::size_t z_slot) {
  using K = WitnessStep::Kind;
  // x_i = x_a; y_j = -z_b; y_i = y_j; x_i + y_i + z_0 = 0.
  if (!prog.allocated(X(x_slot)) || !prog.allocated(Z(z_slot))) {
    throw std::out_of_range("eq_xz: unallocated slot");
  }
  const std::size_t i = prog.AllocateRow();
  const std::size_t j = prog.AllocateRow();
  prog.Define(X(i), K::kCopy, {X(x_slot)});
  eq_xx(prog, x_slot, i);
  prog.Define(X(j), K::kConstant, {}, 0);
  prog.Define(Y(j), K::kNegSum, {X(j), Z(z_slot)});
  prog.Add(AtomicConstraint::TripleXYZ(j, z_slot, 0, 0));
  prog.Define(Y(i), K::kCopy, {Y(j)});
  eq_yy(prog, i, j);
  prog.Add(AtomicConstraint::TripleXYZ(i, prog.zero_z().index, 0, 0));
}

void eq_yz(GadgetProgram& prog, std::size_t y_slot, std::size_t z_slot) {
  using K = WitnessStep::Kind;
  if (!prog.allocated(Y(y_slot)) || !prog.allocated(Z(z_slot))) {
    throw std::out_of_range("eq_yz: unallocated slot");
  }
  const std::size_t t = prog.AllocateRow();
  prog.Define(X(t), K::kCopy, {Y(y_slot)});
  prog.Define(Y(t), K::kConstant, {}, 0);
  eq_xy(prog, t, y_slot);
  eq_xz(prog, t, z_slot);
}

GadgetProgram compile_linear(const std::vector<LinearConstraint>& constraints,
                             const std::vector<BaseBound>& base_bounds) {
  using K = WitnessStep::Kind;
  std::size_t num_base = 0;
  std::vector<bool> referenced;
  auto note = [&](VarRef v, bool from_constraint) {
    if (v.group != Group::kX || v.index == 0) {
      throw std::invalid_argument("base variables must be x slots, got " + ToString(v));
    }
    num_base = std::max(num_base, v.index);
    if (referenced.size() < num_base) referenced.resize(num_base, false);
    if (from_constraint) referenced[v.index - 1] = true;
  };
  for (const auto& c : constraints) {
    if (c.terms.empty() || c.terms.size() > 3) {
      throw std::invalid_argument("linear constraints take 1 to 3 terms");
    }
    if (c.lo > c.hi) throw std::invalid_argument("linear constraint with lo > hi");
    for (VarRef t : c.terms) note(t, true);
  }
  for (const auto& b : base_bounds) {
    note(b.var, false);
    if (b.lo > b.hi) throw std::invalid_argument("base bound with lo > hi");
  }

  GadgetProgram prog;
  for (std::size_t v = 1; v <= num_base; ++v) {
    std::optional<BaseBound> first;
    for (const auto& b : base_bounds) {
      if (b.var.index == v) {
        first = b;
        break;
      }
    }
    if (!first) {
      if (referenced[v - 1]) {
        throw std::invalid_argument("base variable " + ToString(X(v)) + " has no bound");
      }
      first = BaseBound{X(v), 0, 0};
    }
    const VarRef slot = prog.AddBase(Group::kX, first->lo, first->hi);
    if (slot != X(v)) throw std::logic_error("base slots must occupy the first rows");
  }
  for (const auto& b : base_bounds) prog.AddBound(b.var, b.lo, b.hi);

  for (const auto& c : constraints) {
    if (c.terms.size() == 1) {
      prog.AddBound(c.terms[0], c.lo, c.hi);
      continue;
    }
    const std::size_t row = prog.AllocateRow();
    prog.Define(X(row), K::kCopy, {c.terms[0]});
    eq_xx(prog, c.terms[0].index, row);
    prog.Define(Y(row), K::kCopy, {c.terms[1]});
    eq_xy(prog, c.terms[1].index, row);
    std::size_t z = prog.zero_z().index;
    if (c.terms.size() == 3) {
      const VarRef third = prog.AllocateColumnSlot(Group::kZ);
      prog.Define(third, K::kCopy, {c.terms[2]});
      eq_xz(prog, c.terms[2].index, third.index);
      z = third.index;
    }
    prog.Add(AtomicConstraint::TripleXYZ(row, z, c.lo, c.hi));
  }
  prog.CheckComplete();
  return prog;
}

std::size_t CompiledSizeBound(std::size_t num_constraints, std::size_t num_base_vars) {
  // Per constraint at most 5 rows and 3 slots in any column group.
  return num_base_vars + 5 * num_constraints + 1;
}

std::pair<std::size_t, std::size_t> LayoutShape(const GadgetProgram& prog) {
  return {prog.num_rows() + 1, 3 * prog.num_triples() + 2};
}

namespace {

// Cell of a slot and the sign relating cell value to slot value.
struct CellRef {
  std::size_t row;
  std::size_t col;
  std::int64_t sign;
};

CellRef SlotCell(VarRef v) {
  switch (v.group) {
    case Group::kX:
      return {v.index, 0, -Sign(v.index)};
    case Group::kY:
      return {v.index, 1, -Sign(v.index)};
    case Group::kZ:
      return {0, 3 * v.index - 1, 1};
    case Group::kP:
      return {0, 3 * v.index, 1};
    case Group::kQ:
      return {0, 3 * v.index + 1, 1};
  }
  throw std::logic_error("unknown group");
}

CellRef AtomicCell(const AtomicConstraint& c) {
  switch (c.form) {
    case Form::kBound:
      return SlotCell(c.slot);
    case Form::kDiffXP:
      return {c.row, 3 * c.col, -Sign(c.row)};
    case Form::kDiffYQ:
      return {c.row, 3 * c.col + 1, -Sign(c.row)};
    case Form::kTripleXYZ:
      return {c.row, 3 * c.col - 1, Sign(c.row)};
  }
  throw std::logic_error("unknown form");
}

std::uint64_t Magnitude(std::int64_t v) {
  return v < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
}

}  // namespace

Materialized materialize(const GadgetProgram& prog) {
  prog.CheckComplete();
  const auto [rows, cols] = LayoutShape(prog);

  // First pass: the largest bound endpoint fixes the don't-care range.
  std::uint64_t v_max = 1;
  for (const auto& c : prog.atomics()) {
    if (c.form == Form::kBound) v_max = std::max({v_max, Magnitude(c.lo), Magnitude(c.hi)});
  }
  if (v_max > (std::uint64_t{1} << 40)) throw std::overflow_error("gadget bounds too large");
  const std::int64_t dont_care = 3 * static_cast<std::int64_t>(v_max) + 1;

  IntMatrix lower(rows, cols, -dont_care);
  IntMatrix upper(rows, cols, dont_care);
  // Row 0 holds only slots and the two pinned corner cells; positions past a
  // group's count are unused slots and stay at zero.
  for (std::size_t j = 0; j < cols; ++j) lower(0, j) = upper(0, j) = 0;
  for (Group g : {Group::kZ, Group::kP, Group::kQ}) {
    for (std::size_t k = 1; k <= prog.count(g); ++k) {
      const CellRef cell = SlotCell({g, k});
      lower(cell.row, cell.col) = -dont_care;
      upper(cell.row, cell.col) = dont_care;
    }
  }

  bool conflict = false;
  for (const auto& c : prog.atomics()) {
    const CellRef cell = AtomicCell(c);
    const std::int64_t lo = cell.sign > 0 ? c.lo : -c.hi;
    const std::int64_t hi = cell.sign > 0 ? c.hi : -c.lo;
    std::int64_t& l = lower(cell.row, cell.col);
    std::int64_t& u = upper(cell.row, cell.col);
    l = std::max(l, lo);
    u = std::min(u, hi);
    if (l > u) conflict = true;
  }

  std::size_t out_rows = rows;
  if (conflict && rows < 2) {
    // Needs one window to carry the infeasible sum.
    out_rows = 2;
    IntMatrix l2(2, cols), u2(2, cols);
    for (std::size_t j = 0; j < cols; ++j) {
      l2(0, j) = lower(0, j);
      u2(0, j) = upper(0, j);
    }
    lower = l2;
    upper = u2;
  }
  IntMatrix sums(out_rows - 1, cols - 2);
  if (conflict) {
    std::int64_t reach = 1;
    for (std::size_t i = 0; i < out_rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (lower(i, j) > upper(i, j)) lower(i, j) = upper(i, j) = 0;
      }
    }
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 3; ++j) reach += upper(i, j);
    }
    sums(0, 0) = reach;
  }
  return {ReconstructionInstance(WindowShape(2, 3), std::move(sums), std::move(upper),
                                 std::move(lower)),
          conflict, dont_care};
}

IntMatrix layout_matrix(const GadgetProgram& prog, const SlotValues& values) {
  const auto [rows, cols] = LayoutShape(prog);
  IntMatrix a(rows, cols);
  for (Group g : {Group::kZ, Group::kP, Group::kQ}) {
    for (std::size_t k = 1; k <= prog.count(g); ++k) {
      const CellRef cell = SlotCell({g, k});
      a(cell.row, cell.col) = values.at({g, k});
    }
  }
  const std::size_t triples = prog.num_triples();
  auto value_or_zero = [&](VarRef v) { return prog.allocated(v) ? values.at(v) : 0; };
  for (std::size_t i = 1; i < rows; ++i) {
    const std::int64_t x = values.at(X(i));
    const std::int64_t y = values.at(Y(i));
    const std::int64_t s = -Sign(i);  // (-1)^{i+1}
    a(i, 0) = s * x;
    a(i, 1) = s * y;
    for (std::size_t k = 1; k <= triples; ++k) {
      a(i, 3 * k - 1) = -s * (x + y + value_or_zero(Z(k)));
      a(i, 3 * k) = s * (x - value_or_zero(P(k)));
      a(i, 3 * k + 1) = s * (y - value_or_zero(Q(k)));
    }
  }
  return a;
}

IntMatrix build_witness_matrix(const GadgetProgram& prog, const SlotValues& base) {
  prog.CheckComplete();
  SlotValues values({prog.count(Group::kX), prog.count(Group::kY), prog.count(Group::kZ),
                     prog.count(Group::kP), prog.count(Group::kQ)});
  for (VarRef v : prog.base_slots()) {
    const auto value = base.get(v);
    if (!value) throw std::invalid_argument("no value for base slot " + ToString(v));
    values.set(v, *value);
  }
  for (const auto& step : prog.witness_plan()) {
    std::int64_t value = 0;
    switch (step.kind) {
      case WitnessStep::Kind::kConstant:
        value = step.constant;
        break;
      case WitnessStep::Kind::kCopy:
        value = values.at(step.sources.front());
        break;
      case WitnessStep::Kind::kNegSum:
        for (VarRef s : step.sources) value -= values.at(s);
        break;
    }
    values.set(step.target, value);
  }
  return layout_matrix(prog, values);
}

SlotValues decode_values(const IntMatrix& a, const GadgetProgram& prog) {
  const auto [rows, cols] = LayoutShape(prog);
  if (a.rows() != rows || a.cols() != cols) {
    throw std::invalid_argument("decode_values: matrix does not match the program layout");
  }
  SlotValues values({prog.count(Group::kX), prog.count(Group::kY), prog.count(Group::kZ),
                     prog.count(Group::kP), prog.count(Group::kQ)});
  for (std::size_t g = 0; g < kNumGroups; ++g) {
    const Group group = static_cast<Group>(g);
    for (std::size_t k = 1; k <= prog.count(group); ++k) {
      const CellRef cell = SlotCell({group, k});
      values.set({group, k}, cell.sign * a(cell.row, cell.col));
    }
  }
  return values;
}

}  // namespace windowsum::gadget
