// Copyright 2026 The asysg Authors. All Rights Reserved.
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
// =============================================================================

#pragma once

#include <cstddef>
#include <vector>

#include "asysg/problems/dense_matrix.hpp"

namespace asysg {

// Gradient Lipschitz constants: full (L), support-restricted (L_s) and
// per-coordinate (L_max). L_max <= L_s <= L and s -> L_s is nondecreasing.
struct SmoothnessConstants {
  double L = 0.0;
  double L_max = 0.0;
  std::vector<double> L_s;  // L_s[s - 1] for s = 1 .. L_s.size()
  bool exact = true;

  // L_s for s >= 1. Beyond the enumerated range the value falls back to L,
  // which is always a valid upper bound.
  double at(std::size_t s) const;
};

// Exact constants of the quadratic f(x) = 1/2 x^T Q x:
//   L     = ||Q||_2
//   L_max = max_i |Q_ii|
//   L_s   = max over |S| = s of ||Q[:, S]||_2 (support enumeration)
// max_s = 0 enumerates every s = 1..n. Throws DimensionError for non-square
// input, TheoryError for non-symmetric input or an enumeration that would visit
// more than kMaxSupports subsets.
SmoothnessConstants constants_quadratic(const DenseMatrix& Q, std::size_t max_s = 0);

inline constexpr double kMaxSupports = 5.0e6;

// Number of supports visited when enumerating s = 1..max_s for dimension n.
double support_count(std::size_t n, std::size_t max_s);

}  // namespace asysg
