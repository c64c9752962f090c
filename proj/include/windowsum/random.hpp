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

#ifndef WINDOWSUM_RANDOM_HPP_
#define WINDOWSUM_RANDOM_HPP_

#include <cstdint>
#include <random>

#include "windowsum/matrix.hpp"

namespace windowsum {

/// Reproducible generator: std::mt19937_64 seeded with the 64-bit seed as
/// given. Bounded integers use rejection sampling on raw engine output, so
/// streams agree across standard libraries (std distributions do not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  /// Uniform in [lo, hi].
  std::int64_t Uniform(std::int64_t lo, std::int64_t hi);
  bool Coin() { return (Next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

IntMatrix RandomMatrix(Rng& rng, std::size_t rows, std::size_t cols, std::int64_t lo,
                       std::int64_t hi);

/// Cellwise uniform in [0, upper(i, j)].
IntMatrix RandomBelow(Rng& rng, const IntMatrix& upper);

}  // namespace windowsum

#endif  // WINDOWSUM_RANDOM_HPP_
