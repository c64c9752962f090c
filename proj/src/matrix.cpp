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

#include "windowsum/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace windowsum {

namespace {

constexpr std::uint64_t kMagnitudeLimit = std::uint64_t{1} << 62;

std::string Dims(const IntMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void RequireSameShape(const IntMatrix& a, const IntMatrix& b, const char* what) {
  if (!a.SameShape(b)) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch " + Dims(a) +
                                " vs " + Dims(b));
  }
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill)
    : rows_(rows), cols_(cols), cells_(rows * cols, fill) {
  if (rows == 0 || cols == 0) rows_ = cols_ = 0, cells_.clear();
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<std::vector<std::int64_t>> nested;
  for (const auto& r : rows) nested.emplace_back(r);
  *this = FromRows(nested);
}

IntMatrix IntMatrix::FromRows(const std::vector<std::vector<std::int64_t>>& rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::int64_t IntMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("IntMatrix::at");
  return (*this)(i, j);
}

std::vector<std::vector<std::int64_t>> IntMatrix::ToRows() const {
  std::vector<std::vector<std::int64_t>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

std::uint64_t IntMatrix::MaxAbs() const {
  std::uint64_t best = 0;
  for (std::int64_t v : cells_) {
    // Negating INT64_MIN is undefined; compute the magnitude in unsigned.
    const std::uint64_t mag =
        v < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    best = std::max(best, mag);
  }
  return best;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  RequireSameShape(a, b, "matrix sum");
  IntMatrix out = a;
  for (std::size_t k = 0; k < out.cells_.size(); ++k) out.cells_[k] += b.cells_[k];
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  RequireSameShape(a, b, "matrix difference");
  IntMatrix out = a;
  for (std::size_t k = 0; k < out.cells_.size(); ++k) out.cells_[k] -= b.cells_[k];
  return out;
}

std::string ToString(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

void CheckMagnitude(const IntMatrix& m, const char* what) {
  const std::uint64_t cells = static_cast<std::uint64_t>(m.rows()) * m.cols();
  const std::uint64_t mag = m.MaxAbs();
  if (cells != 0 && mag != 0 && mag >= kMagnitudeLimit / cells) {
    throw std::overflow_error(std::string(what) +
                              ": max |cell| * rows * cols must stay below 2^62");
  }
}

WindowShape::WindowShape(std::size_t h, std::size_t w) : height(h), width(w) {
  if (h < 1 || w < 1) throw std::invalid_argument("window dimensions must be >= 1");
}

IntMatrix window_sums(const IntMatrix& a, WindowShape shape) {
  if (a.rows() < shape.height || a.cols() < shape.width) {
    throw std::invalid_argument("window_sums: " + Dims(a) + " matrix is smaller than " +
                                std::to_string(shape.height) + "x" +
                                std::to_string(shape.width) + " window");
  }
  CheckMagnitude(a, "window_sums");
  const std::size_t out_rows = a.rows() - shape.height + 1;
  const std::size_t out_cols = a.cols() - shape.width + 1;

  // Horizontal running sums first, then vertical ones.
  IntMatrix horizontal(a.rows(), out_cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < shape.width; ++j) acc += a(i, j);
    horizontal(i, 0) = acc;
    for (std::size_t j = 1; j < out_cols; ++j) {
      acc += a(i, j + shape.width - 1) - a(i, j - 1);
      horizontal(i, j) = acc;
    }
  }
  IntMatrix out(out_rows, out_cols);
  for (std::size_t j = 0; j < out_cols; ++j) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < shape.height; ++i) acc += horizontal(i, j);
    out(0, j) = acc;
    for (std::size_t i = 1; i < out_rows; ++i) {
      acc += horizontal(i + shape.height - 1, j) - horizontal(i - 1, j);
      out(i, j) = acc;
    }
  }
  return out;
}

std::pair<std::size_t, std::size_t> ReconstructionInstance::SumsShape(std::size_t m,
                                                                      std::size_t n,
                                                                      WindowShape shape) {
  if (m < shape.height || n < shape.width) return {0, 0};
  return {m - shape.height + 1, n - shape.width + 1};
}

ReconstructionInstance::ReconstructionInstance(WindowShape shape, IntMatrix sums,
                                               IntMatrix upper,
                                               std::optional<IntMatrix> lower)
    : shape_(shape), sums_(std::move(sums)), upper_(std::move(upper)), lower_(std::move(lower)) {
  const auto [sr, sc] = SumsShape(upper_.rows(), upper_.cols(), shape_);
  if (sums_.rows() != sr || sums_.cols() != sc) {
    throw std::invalid_argument("instance: sums must be " + std::to_string(sr) + "x" +
                                std::to_string(sc) + " for a " + Dims(upper_) +
                                " matrix, got " + Dims(sums_));
  }
  CheckMagnitude(upper_, "instance upper bounds");
  CheckMagnitude(sums_, "instance sums");
  if (lower_) {
    RequireSameShape(*lower_, upper_, "instance lower/upper");
    CheckMagnitude(*lower_, "instance lower bounds");
    for (std::size_t i = 0; i < upper_.rows(); ++i) {
      for (std::size_t j = 0; j < upper_.cols(); ++j) {
        if ((*lower_)(i, j) > upper_(i, j)) {
          throw std::invalid_argument("instance: lower > upper at (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")");
        }
      }
    }
  }
}

IntMatrix ReconstructionInstance::lower_or_zero() const {
  return lower_ ? *lower_ : IntMatrix(upper_.rows(), upper_.cols());
}

VerifyResult verify_solution(const IntMatrix& a, const ReconstructionInstance& inst) {
  RequireSameShape(a, inst.upper(), "verify_solution");
  const IntMatrix lower = inst.lower_or_zero();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) < lower(i, j) || a(i, j) > inst.upper()(i, j)) {
        std::ostringstream os;
        os << "cell (" << i << "," << j << ") = " << a(i, j) << " outside [" << lower(i, j)
           << "," << inst.upper()(i, j) << "]";
        return {false, os.str()};
      }
    }
  }
  if (inst.sums().empty()) return {true, {}};
  const IntMatrix sums = window_sums(a, inst.shape());
  for (std::size_t i = 0; i < sums.rows(); ++i) {
    for (std::size_t j = 0; j < sums.cols(); ++j) {
      if (sums(i, j) != inst.sums()(i, j)) {
        std::ostringstream os;
        os << "window (" << i << "," << j << ") sums to " << sums(i, j) << ", expected "
           << inst.sums()(i, j);
        return {false, os.str()};
      }
    }
  }
  return {true, {}};
}

std::pair<ReconstructionInstance, BackShift> shift_two_sided(
    const ReconstructionInstance& inst) {
  const IntMatrix lower = inst.lower_or_zero();
  IntMatrix sums = inst.sums();
  if (!sums.empty()) sums = sums - window_sums(lower, inst.shape());
  ReconstructionInstance shifted(inst.shape(), std::move(sums), inst.upper() - lower);
  return {std::move(shifted), BackShift{lower}};
}

IntMatrix lift_solution(const IntMatrix& x, const BackShift& shift) {
  RequireSameShape(x, shift.lower, "lift_solution");
  return shift.lower + x;
}

IntMatrix reflect(const IntMatrix& m, Axis axis) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (axis == Axis::kRows) {
        out(m.rows() - 1 - i, j) = m(i, j);
      } else {
        out(i, m.cols() - 1 - j) = m(i, j);
      }
    }
  }
  return out;
}

std::pair<ReconstructionInstance, Reflection> reflect_instance(
    const ReconstructionInstance& inst, Axis axis) {
  std::optional<IntMatrix> lower;
  if (inst.lower()) lower = reflect(*inst.lower(), axis);
  ReconstructionInstance out(inst.shape(), reflect(inst.sums(), axis),
                             reflect(inst.upper(), axis), std::move(lower));
  return {std::move(out), Reflection{axis}};
}

}  // namespace windowsum
