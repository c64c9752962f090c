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

#ifndef WINDOWSUM_GADGET23_HPP_
#define WINDOWSUM_GADGET23_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "windowsum/matrix.hpp"

// Compiles systems of two-sided constraints on sums of at most three
// variables into a 2x3 window instance with all sums zero.
//
// Layout of the (NR + 1) x (3 NC + 2) matrix, for i, k >= 1:
//
//   A[0][0] = A[0][1] = 0
//   A[0][3k-1] = z_k        A[0][3k] = p_k        A[0][3k+1] = q_k
//   A[i][0] = (-1)^{i+1} x_i                      A[i][1] = (-1)^{i+1} y_i
//   A[i][3k-1] = (-1)^i (x_i + y_i + z_k)
//   A[i][3k]   = (-1)^{i+1} (x_i - p_k)
//   A[i][3k+1] = (-1)^{i+1} (y_i - q_k)
//
// Row 0 and columns 0-1 are free; every other cell is fixed by a zero
// window sum, which yields the identities above.
namespace windowsum::gadget {

enum class Group { kX = 0, kY = 1, kZ = 2, kP = 3, kQ = 4 };
inline constexpr std::size_t kNumGroups = 5;

struct VarRef {
  Group group;
  std::size_t index;  // 1-based

  friend bool operator==(const VarRef&, const VarRef&) = default;
};

inline VarRef X(std::size_t i) { return {Group::kX, i}; }
inline VarRef Y(std::size_t i) { return {Group::kY, i}; }
inline VarRef Z(std::size_t i) { return {Group::kZ, i}; }
inline VarRef P(std::size_t i) { return {Group::kP, i}; }
inline VarRef Q(std::size_t i) { return {Group::kQ, i}; }

/// "x3", "q12", ...
std::string ToString(VarRef v);
VarRef ParseVarRef(const std::string& s);

struct Interval {
  std::int64_t lo;
  std::int64_t hi;
  bool empty() const { return lo > hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Form {
  kBound,      // slot
  kDiffXP,     // x_row - p_col
  kDiffYQ,     // y_row - q_col
  kTripleXYZ,  // x_row + y_row + z_col
};

struct AtomicConstraint {
  Form form;
  VarRef slot{Group::kX, 0};  // kBound only
  std::size_t row = 0;        // other forms
  std::size_t col = 0;
  std::int64_t lo;
  std::int64_t hi;

  static AtomicConstraint Bound(VarRef v, std::int64_t lo, std::int64_t hi);
  static AtomicConstraint DiffXP(std::size_t i, std::size_t k, std::int64_t lo, std::int64_t hi);
  static AtomicConstraint DiffYQ(std::size_t i, std::size_t k, std::int64_t lo, std::int64_t hi);
  static AtomicConstraint TripleXYZ(std::size_t i, std::size_t k, std::int64_t lo,
                                    std::int64_t hi);
};

/// Defining expression for a gadget-internal slot.
struct WitnessStep {
  enum class Kind { kCopy, kConstant, kNegSum };
  VarRef target;
  Kind kind;
  std::vector<VarRef> sources;  // one for kCopy, several for kNegSum
  std::int64_t constant = 0;
};

/// Value per slot, indexed by VarRef.
class SlotValues {
 public:
  SlotValues() = default;
  explicit SlotValues(const std::array<std::size_t, kNumGroups>& counts);

  std::optional<std::int64_t> get(VarRef v) const;
  std::int64_t at(VarRef v) const;  // throws if unset
  void set(VarRef v, std::int64_t value);

 private:
  std::array<std::vector<std::optional<std::int64_t>>, kNumGroups> values_;
};

class GadgetProgram {
 public:
  /// Allocates the shared zero slot z_1, pinned to [0, 0].
  GadgetProgram();

  std::size_t count(Group g) const { return slots_[static_cast<std::size_t>(g)].size(); }
  /// Rows are allocated as (x_i, y_i) pairs, so count(X) == count(Y).
  std::size_t num_rows() const { return count(Group::kX); }
  std::size_t num_triples() const;
  VarRef zero_z() const { return Z(1); }

  /// A slot whose value is supplied by the caller, with an initial bound.
  /// X and Y base slots take a fresh row; the row's other slot is pinned to 0.
  VarRef AddBase(Group g, std::int64_t lo, std::int64_t hi);
  bool is_base(VarRef v) const;

  /// Fresh x_i, y_i pair (both undefined until Define is called).
  std::size_t AllocateRow();
  /// Fresh Z, P or Q slot (undefined until Define is called).
  VarRef AllocateColumnSlot(Group g);
  /// Records the witness expression for a fresh slot and bounds the slot by
  /// the range that expression can take.
  void Define(VarRef v, WitnessStep::Kind kind, std::vector<VarRef> sources,
              std::int64_t constant = 0);

  void Add(const AtomicConstraint& c);
  /// Shorthand for Add(AtomicConstraint::Bound(...)).
  void AddBound(VarRef v, std::int64_t lo, std::int64_t hi) {
    Add(AtomicConstraint::Bound(v, lo, hi));
  }

  /// Intersection of the slot's Bound constraints (nullopt if never bounded).
  std::optional<Interval> domain(VarRef v) const;
  bool allocated(VarRef v) const;

  const std::vector<AtomicConstraint>& atomics() const { return atomics_; }
  const std::vector<WitnessStep>& witness_plan() const { return plan_; }
  std::vector<VarRef> base_slots() const;

  /// Throws std::logic_error if some allocated slot is neither base nor
  /// defined, or carries no Bound.
  void CheckComplete() const;

  nlohmann::json ToJson() const;
  static GadgetProgram FromJson(const nlohmann::json& j);

 private:
  struct Slot {
    std::optional<Interval> domain;
    bool base = false;
    bool defined = false;
  };
  Slot& slot(VarRef v);
  const Slot& slot(VarRef v) const;
  Interval Range(WitnessStep::Kind kind, const std::vector<VarRef>& sources,
                 std::int64_t constant) const;

  std::array<std::vector<Slot>, kNumGroups> slots_;
  std::vector<AtomicConstraint> atomics_;
  std::vector<WitnessStep> plan_;
};

// Equation gadgets. Each allocates fresh slots, emits atomics and records
// how to fill the fresh slots from the endpoints.
void eq_xx(GadgetProgram& prog, std::size_t a, std::size_t b);
void eq_yy(GadgetProgram& prog, std::size_t a, std::size_t b);
void eq_xy(GadgetProgram& prog, std::size_t x_slot, std::size_t y_slot);
void eq_zz(GadgetProgram& prog, std::size_t a, std::size_t b);
void eq_xz(GadgetProgram& prog, std::size_t x_slot, std::size_t z_slot);
void eq_yz(GadgetProgram& prog, std::size_t y_slot, std::size_t z_slot);

/// lo <= sum of terms <= hi, with 1 to 3 unit-coefficient terms.
struct LinearConstraint {
  std::vector<VarRef> terms;
  std::int64_t lo;
  std::int64_t hi;
};

struct BaseBound {
  VarRef var;
  std::int64_t lo;
  std::int64_t hi;
};

/// Base variables are x_1 .. x_N where N is the largest X index referenced.
/// Every referenced base variable needs at least one bound.
GadgetProgram compile_linear(const std::vector<LinearConstraint>& constraints,
                             const std::vector<BaseBound>& base_bounds);

/// Largest row and column-triple count compile_linear may produce for the
/// given number of constraints and base variables.
std::size_t CompiledSizeBound(std::size_t num_constraints, std::size_t num_base_vars);

struct Materialized {
  ReconstructionInstance instance;  // two-sided, all sums zero unless conflict
  /// Atomics intersected to an empty range on some cell. The instance is then
  /// made infeasible by raising its first window sum above what the bounds allow.
  bool conflict = false;
  std::int64_t dont_care = 0;  // M: unconstrained cells get [-M, M]
};

Materialized materialize(const GadgetProgram& prog);

/// Evaluates the layout identities for arbitrary values of every slot.
IntMatrix layout_matrix(const GadgetProgram& prog, const SlotValues& values);

/// Extends base values through the witness plan and evaluates the layout.
IntMatrix build_witness_matrix(const GadgetProgram& prog, const SlotValues& base);

/// Slot values read back from a matrix with the program's layout.
SlotValues decode_values(const IntMatrix& a, const GadgetProgram& prog);

/// Layout dimensions: (num_rows + 1) x (3 num_triples + 2).
std::pair<std::size_t, std::size_t> LayoutShape(const GadgetProgram& prog);

}  // namespace windowsum::gadget

#endif  // WINDOWSUM_GADGET23_HPP_
