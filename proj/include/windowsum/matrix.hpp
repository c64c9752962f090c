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

#ifndef WINDOWSUM_MATRIX_HPP_
#define WINDOWSUM_MATRIX_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace windowsum {

/// Dense row-major matrix of 64-bit signed integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0);
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  /// Builds from nested rows; throws std::invalid_argument on ragged input.
  static IntMatrix FromRows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return cells_.empty(); }

  std::int64_t& operator()(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }

  /// Bounds-checked access.
  std::int64_t at(std::size_t i, std::size_t j) const;

  std::span<const std::int64_t> row(std::size_t i) const {
    return {cells_.data() + i * cols_, cols_};
  }
  std::span<const std::int64_t> cells() const { return cells_; }

  std::vector<std::vector<std::int64_t>> ToRows() const;

  /// Largest absolute cell value (0 for an empty matrix).
  std::uint64_t MaxAbs() const;

  bool SameShape(const IntMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> cells_;
};

std::string ToString(const IntMatrix& m);

/// Throws std::overflow_error unless MaxAbs() * rows * cols < 2^62.
void CheckMagnitude(const IntMatrix& m, const char* what);

struct WindowShape {
  std::size_t height;
  std::size_t width;

  WindowShape(std::size_t h, std::size_t w);
  friend bool operator==(const WindowShape&, const WindowShape&) = default;
};

/// Matrix of all height x width block sums; result[i][j] is the block with
/// top-left corner (i, j). Throws std::invalid_argument if the matrix is
/// smaller than the window.
IntMatrix window_sums(const IntMatrix& a, WindowShape shape);

/// Window shape, sums and per-cell bounds lower <= A <= upper. An absent
/// lower bound means all zeros.
class ReconstructionInstance {
 public:
  ReconstructionInstance(WindowShape shape, IntMatrix sums, IntMatrix upper,
                         std::optional<IntMatrix> lower = std::nullopt);

  const WindowShape& shape() const { return shape_; }
  const IntMatrix& sums() const { return sums_; }
  const IntMatrix& upper() const { return upper_; }
  const std::optional<IntMatrix>& lower() const { return lower_; }
  bool has_lower() const { return lower_.has_value(); }
  IntMatrix lower_or_zero() const;

  std::size_t rows() const { return upper_.rows(); }
  std::size_t cols() const { return upper_.cols(); }

  /// Expected dimension of the sums matrix for an m x n matrix (0 if the
  /// window does not fit).
  static std::pair<std::size_t, std::size_t> SumsShape(std::size_t m, std::size_t n,
                                                       WindowShape shape);

 private:
  WindowShape shape_;
  IntMatrix sums_;
  IntMatrix upper_;
  std::optional<IntMatrix> lower_;
};

struct VerifyResult {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};

/// Membership test: lower <= A <= upper and window_sums(A) == sums.
/// Throws std::invalid_argument on dimension mismatch.
VerifyResult verify_solution(const IntMatrix& a, const ReconstructionInstance& inst);

/// Record needed to map a solution of a shifted instance back.
struct BackShift {
  IntMatrix lower;
};

/// Rewrites L <= A <= U as 0 <= X <= U - L with sums S - window_sums(L).
std::pair<ReconstructionInstance, BackShift> shift_two_sided(
    const ReconstructionInstance& inst);

/// A = L + X.
IntMatrix lift_solution(const IntMatrix& x, const BackShift& shift);

enum class Axis { kRows, kCols };

struct Reflection {
  Axis axis;
};

/// Reverses row (or column) order.
IntMatrix reflect(const IntMatrix& m, Axis axis);

std::pair<ReconstructionInstance, Reflection> reflect_instance(
    const ReconstructionInstance& inst, Axis axis);

/// Maps a solution of the reflected instance back to the original.
inline IntMatrix unreflect_solution(const IntMatrix& a, const Reflection& r) {
  return reflect(a, r.axis);
}

}  // namespace windowsum

#endif  // WINDOWSUM_MATRIX_HPP_
