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

#include "windowsum/solver22.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "windowsum/sat2.hpp"

namespace windowsum::solver22 {

namespace {

constexpr std::int64_t Sign(std::size_t k) { return (k % 2 == 0) ? 1 : -1; }

// Validates the (S, U) pair shared by all 2x2 solvers.
void CheckInput(const IntMatrix& sums, const IntMatrix& upper, const char* who) {
  if (upper.rows() < 2 || upper.cols() < 2) {
    throw std::invalid_argument(std::string(who) + ": upper bounds must be at least 2x2");
  }
  if (sums.rows() != upper.rows() - 1 || sums.cols() != upper.cols() - 1) {
    throw std::invalid_argument(std::string(who) + ": sums must be (m-1)x(n-1)");
  }
  CheckMagnitude(sums, who);
  CheckMagnitude(upper, who);
  for (std::int64_t u : upper.cells()) {
    if (u < 0) throw std::invalid_argument(std::string(who) + ": negative upper bound");
  }
}

Interval Oriented(std::int64_t sign, std::int64_t lo, std::int64_t hi) {
  return sign > 0 ? Interval{lo, hi} : Interval{-hi, -lo};
}

std::optional<IntMatrix> SolveBoundedNormalized(const IntMatrix& sums, const IntMatrix& upper) {
  const std::size_t m = upper.rows();
  const std::size_t n = upper.cols();
  for (std::int64_t a00 = 0; a00 <= upper(0, 0); ++a00) {
    const OffsetMatrix offsets = compute_offsets(sums, m, n, a00);
    const AlphaBetaSystem system(offsets, upper);
    if (system.empty()) continue;
    const diffcon::Result r = diffcon::solve_diff(system.ToDiffSystem());
    if (!r.feasible) continue;
    return assemble(offsets, system.Border(a00, r.potentials));
  }
  return std::nullopt;
}

}  // namespace

OffsetMatrix compute_offsets(const IntMatrix& sums, std::size_t m, std::size_t n,
                             std::int64_t a00) {
  if (m < 1 || n < 1) throw std::invalid_argument("compute_offsets: empty matrix");
  const auto [sr, sc] = ReconstructionInstance::SumsShape(m, n, WindowShape(2, 2));
  if (sums.rows() != sr || sums.cols() != sc) {
    throw std::invalid_argument("compute_offsets: sums must be (m-1)x(n-1)");
  }
  OffsetMatrix out{IntMatrix(m, n)};
  IntMatrix& b = out.b;
  b(0, 0) = a00;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      b(i + 1, j + 1) = sums(i, j) - b(i, j) - b(i, j + 1) - b(i + 1, j);
    }
  }
  return out;
}

IntMatrix assemble(const OffsetMatrix& offsets, const BorderAssignment& border) {
  const IntMatrix& b = offsets.b;
  const std::size_t m = b.rows();
  const std::size_t n = b.cols();
  if (border.x.size() + 1 != n || border.y.size() + 1 != m) {
    throw std::invalid_argument("assemble: border lengths do not match offsets");
  }
  if (border.a00 != b(0, 0)) {
    throw std::invalid_argument("assemble: corner value differs from offsets");
  }
  IntMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t x = j == 0 ? 0 : border.x[j - 1];
      const std::int64_t y = i == 0 ? 0 : border.y[i - 1];
      a(i, j) = Sign(i) * x + Sign(j) * y + b(i, j);
    }
  }
  return a;
}

AlphaBetaSystem::AlphaBetaSystem(const OffsetMatrix& offsets, const IntMatrix& upper)
    : rows_(upper.rows()), cols_(upper.cols()) {
  if (!offsets.b.SameShape(upper) || rows_ < 2 || cols_ < 2) {
    throw std::invalid_argument("AlphaBetaSystem: offsets and bounds must match, >= 2x2");
  }
  const IntMatrix& b = offsets.b;
  alpha_.reserve(cols_ - 1);
  for (std::size_t j = 1; j < cols_; ++j) alpha_.push_back(Oriented(Sign(j), 0, upper(0, j)));
  beta_.reserve(rows_ - 1);
  for (std::size_t i = 1; i < rows_; ++i) beta_.push_back(Oriented(-Sign(i), 0, upper(i, 0)));
  diff_.reserve((rows_ - 1) * (cols_ - 1));
  for (std::size_t i = 1; i < rows_; ++i) {
    for (std::size_t j = 1; j < cols_; ++j) {
      diff_.push_back(Oriented(Sign(i + j), -b(i, j), upper(i, j) - b(i, j)));
    }
  }
  for (const auto* group : {&alpha_, &beta_, &diff_}) {
    for (const Interval& iv : *group) empty_ = empty_ || iv.empty();
  }
}

diffcon::DiffSystem AlphaBetaSystem::ToDiffSystem() const {
  diffcon::DiffSystem sys(num_vars());
  for (std::size_t j = 1; j < cols_; ++j) {
    sys.AddRange(alpha_var(j), theta_var(), alpha_bound(j).lo, alpha_bound(j).hi);
  }
  for (std::size_t i = 1; i < rows_; ++i) {
    sys.AddRange(beta_var(i), theta_var(), beta_bound(i).lo, beta_bound(i).hi);
  }
  for (std::size_t i = 1; i < rows_; ++i) {
    for (std::size_t j = 1; j < cols_; ++j) {
      sys.AddRange(alpha_var(j), beta_var(i), diff_bound(i, j).lo, diff_bound(i, j).hi);
    }
  }
  return sys;
}

BorderAssignment AlphaBetaSystem::Border(std::int64_t a00,
                                         const std::vector<std::int64_t>& potentials) const {
  BorderAssignment border;
  border.a00 = a00;
  const std::int64_t theta = potentials.at(theta_var());
  for (std::size_t j = 1; j < cols_; ++j) {
    border.x.push_back(Sign(j) * (potentials.at(alpha_var(j)) - theta));
  }
  for (std::size_t i = 1; i < rows_; ++i) {
    border.y.push_back(-Sign(i) * (potentials.at(beta_var(i)) - theta));
  }
  return border;
}

std::optional<IntMatrix> solve_binary(const IntMatrix& sums, const IntMatrix& upper) {
  CheckInput(sums, upper, "solve_binary");
  for (std::int64_t u : upper.cells()) {
    if (u > 1) throw std::invalid_argument("solve_binary: upper bounds must be 0 or 1");
  }
  const std::size_t m = upper.rows();
  const std::size_t n = upper.cols();
  using sat2::Literal;
  auto x_var = [&](std::size_t j) { return static_cast<std::uint32_t>(j - 1); };
  auto y_var = [&](std::size_t i) { return static_cast<std::uint32_t>(n - 1 + i - 1); };
  // Literal that is true exactly when the variable differs from `value`.
  auto differs = [](std::uint32_t var, std::int64_t value) {
    return value == 1 ? Literal::Neg(var) : Literal::Pos(var);
  };

  for (std::int64_t a00 = 0; a00 <= upper(0, 0); ++a00) {
    const OffsetMatrix offsets = compute_offsets(sums, m, n, a00);
    sat2::TwoCnf formula(m + n - 2);
    formula.clauses.reserve((m - 1) * (n - 1) * 2 + m + n);
    for (std::size_t j = 1; j < n; ++j) {
      if (upper(0, j) == 0) formula.AddUnit(Literal::Neg(x_var(j)));
    }
    for (std::size_t i = 1; i < m; ++i) {
      if (upper(i, 0) == 0) formula.AddUnit(Literal::Neg(y_var(i)));
    }
    bool dead = false;
    for (std::size_t i = 1; i < m && !dead; ++i) {
      for (std::size_t j = 1; j < n && !dead; ++j) {
        const std::int64_t b = offsets.b(i, j);
        const std::int64_t cap = upper(i, j);
        int forbidden = 0;
        for (std::int64_t xv = 0; xv <= 1; ++xv) {
          for (std::int64_t yv = 0; yv <= 1; ++yv) {
            const std::int64_t cell = Sign(i) * xv + Sign(j) * yv + b;
            if (cell < 0 || cell > cap) {
              ++forbidden;
              formula.AddClause(differs(x_var(j), xv), differs(y_var(i), yv));
            }
          }
        }
        dead = forbidden == 4;
      }
    }
    if (dead) continue;
    const sat2::Result r = sat2::solve_2sat(formula);
    if (!r.satisfiable) continue;
    BorderAssignment border;
    border.a00 = a00;
    for (std::size_t j = 1; j < n; ++j) border.x.push_back(r.assignment[x_var(j)] ? 1 : 0);
    for (std::size_t i = 1; i < m; ++i) border.y.push_back(r.assignment[y_var(i)] ? 1 : 0);
    return assemble(offsets, border);
  }
  return std::nullopt;
}

std::optional<IntMatrix> solve_bounded(const IntMatrix& sums, const IntMatrix& upper) {
  CheckInput(sums, upper, "solve_bounded");
  const std::size_t m = upper.rows();
  const std::size_t n = upper.cols();
  // Bring the corner with the smallest bound to (0, 0); ties keep the
  // earlier corner in this order.
  const std::array<std::int64_t, 4> corners = {upper(0, 0), upper(0, n - 1), upper(m - 1, 0),
                                               upper(m - 1, n - 1)};
  std::size_t best = 0;
  for (std::size_t k = 1; k < corners.size(); ++k) {
    if (corners[k] < corners[best]) best = k;
  }
  const bool flip_rows = best >= 2;
  const bool flip_cols = best % 2 == 1;

  ReconstructionInstance inst(WindowShape(2, 2), sums, upper);
  std::vector<Reflection> applied;
  if (flip_rows) {
    auto [next, r] = reflect_instance(inst, Axis::kRows);
    inst = std::move(next);
    applied.push_back(r);
  }
  if (flip_cols) {
    auto [next, r] = reflect_instance(inst, Axis::kCols);
    inst = std::move(next);
    applied.push_back(r);
  }
  std::optional<IntMatrix> solution = SolveBoundedNormalized(inst.sums(), inst.upper());
  if (!solution) return std::nullopt;
  for (auto it = applied.rbegin(); it != applied.rend(); ++it) {
    *solution = unreflect_solution(*solution, *it);
  }
  return solution;
}

std::optional<IntMatrix> solve_bounded_noenum(const IntMatrix& sums, const IntMatrix& upper) {
  CheckInput(sums, upper, "solve_bounded_noenum");
  const std::size_t m = upper.rows();
  const std::size_t n = upper.cols();
  // b = c + e * A[0][0]; with zero sums the corner seed propagates as
  // e[i][j] = -(-1)^{i+j}, which lets the corner merge into beta.
  const IntMatrix c = compute_offsets(sums, m, n, 0).b;
  const IntMatrix e = compute_offsets(IntMatrix(m - 1, n - 1), m, n, 1).b;

  auto alpha = [&](std::size_t j) { return j - 1; };
  auto beta_shifted = [&](std::size_t i) { return n - 1 + i - 1; };
  const std::size_t corner = m + n - 2;
  const std::size_t theta = m + n - 1;

  diffcon::DiffSystem sys(m + n);
  for (std::size_t j = 1; j < n; ++j) {
    const Interval iv = Oriented(Sign(j), 0, upper(0, j));
    sys.AddRange(alpha(j), theta, iv.lo, iv.hi);
  }
  for (std::size_t i = 1; i < m; ++i) {
    const Interval iv = Oriented(-Sign(i), 0, upper(i, 0));
    sys.AddRange(beta_shifted(i), corner, iv.lo, iv.hi);
  }
  sys.AddRange(corner, theta, 0, upper(0, 0));
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t j = 1; j < n; ++j) {
      if (e(i, j) != -Sign(i + j)) throw std::logic_error("unexpected corner propagation");
      const Interval iv = Oriented(Sign(i + j), -c(i, j), upper(i, j) - c(i, j));
      sys.AddRange(alpha(j), beta_shifted(i), iv.lo, iv.hi);
    }
  }

  const diffcon::Result r = diffcon::solve_diff(sys);
  if (!r.feasible) return std::nullopt;
  const auto& p = r.potentials;
  BorderAssignment border;
  border.a00 = p[corner] - p[theta];
  for (std::size_t j = 1; j < n; ++j) border.x.push_back(Sign(j) * (p[alpha(j)] - p[theta]));
  for (std::size_t i = 1; i < m; ++i) {
    border.y.push_back(-Sign(i) * (p[beta_shifted(i)] - p[corner]));
  }
  return assemble(compute_offsets(sums, m, n, border.a00), border);
}

}  // namespace windowsum::solver22
