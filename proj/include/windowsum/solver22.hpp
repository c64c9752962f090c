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

#ifndef WINDOWSUM_SOLVER22_HPP_
#define WINDOWSUM_SOLVER22_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "windowsum/diffcon.hpp"
#include "windowsum/matrix.hpp"

namespace windowsum::solver22 {

/// Constants b[i][j] of the border parametrization
///   A[i][j] = (-1)^i x_j + (-1)^j y_i + b[i][j],
/// with x_j = A[0][j], y_i = A[i][0] and b[0][0] = A[0][0]. Border entries
/// other than the corner are zero; the interior follows the window equation.
struct OffsetMatrix {
  IntMatrix b;
};

struct BorderAssignment {
  std::int64_t a00 = 0;
  std::vector<std::int64_t> x;  // x_1 .. x_{n-1}
  std::vector<std::int64_t> y;  // y_1 .. y_{m-1}
};

/// Throws std::invalid_argument unless sums is (m-1) x (n-1), m, n >= 2.
OffsetMatrix compute_offsets(const IntMatrix& sums, std::size_t m, std::size_t n,
                             std::int64_t a00);

IntMatrix assemble(const OffsetMatrix& offsets, const BorderAssignment& border);

/// Two-sided bounds on alpha_j, beta_i and alpha_j - beta_i after the
/// substitution x_j = (-1)^j alpha_j, y_i = (-1)^{i+1} beta_i.
struct Interval {
  std::int64_t lo;
  std::int64_t hi;
  bool empty() const { return lo > hi; }
};

class AlphaBetaSystem {
 public:
  AlphaBetaSystem(const OffsetMatrix& offsets, const IntMatrix& upper);

  /// Some bound pair is empty, so no border assignment exists.
  bool empty() const { return empty_; }

  std::size_t alpha_var(std::size_t j) const { return j - 1; }
  std::size_t beta_var(std::size_t i) const { return cols_ - 1 + i - 1; }
  std::size_t theta_var() const { return rows_ + cols_ - 2; }
  std::size_t num_vars() const { return rows_ + cols_ - 1; }

  const Interval& alpha_bound(std::size_t j) const { return alpha_[j - 1]; }
  const Interval& beta_bound(std::size_t i) const { return beta_[i - 1]; }
  const Interval& diff_bound(std::size_t i, std::size_t j) const {
    return diff_[(i - 1) * (cols_ - 1) + (j - 1)];
  }

  /// Uniform form: absolute bounds become bounds on v - theta.
  diffcon::DiffSystem ToDiffSystem() const;

  /// Reads alpha/beta back from potentials (shifted so theta = 0) and
  /// undoes the substitution.
  BorderAssignment Border(std::int64_t a00, const std::vector<std::int64_t>& potentials) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Interval> alpha_;
  std::vector<Interval> beta_;
  std::vector<Interval> diff_;
  bool empty_ = false;
};

/// 0/1 reconstruction via 2-SAT, trying each admissible corner value.
/// Throws std::invalid_argument on bad dimensions or non-binary upper bounds.
std::optional<IntMatrix> solve_binary(const IntMatrix& sums, const IntMatrix& upper);

/// 0 <= A <= U reconstruction via difference constraints, enumerating the
/// value of the smallest-bound corner. The smallest feasible corner value wins.
std::optional<IntMatrix> solve_bounded(const IntMatrix& sums, const IntMatrix& upper);

/// Same problem as solve_bounded with the corner value folded into the
/// difference system as one more variable, so a single solve decides it.
std::optional<IntMatrix> solve_bounded_noenum(const IntMatrix& sums, const IntMatrix& upper);

}  // namespace windowsum::solver22

#endif  // WINDOWSUM_SOLVER22_HPP_
