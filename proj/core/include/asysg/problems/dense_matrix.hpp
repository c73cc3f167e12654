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
#include <cstdint>
#include <vector>

namespace asysg {

// Row-major dense matrix. Kept deliberately small: the library's numerics run
// on explicit loops with a fixed summation order.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

  double& operator()(std::size_t r, std::size_t c) noexcept { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data[r * cols + c]; }

  bool is_square() const noexcept { return rows == cols; }
  bool is_symmetric(double tol = 0.0) const noexcept;
};

// Q = U diag(eigenvalues) U^T with U a random orthogonal matrix drawn from
// `seed`; U = I when rotate is false.
DenseMatrix make_spd_matrix(const std::vector<double>& eigenvalues, bool rotate,
                            std::uint64_t seed);

// Largest eigenvalue of a symmetric matrix.
double max_eigenvalue_symmetric(const DenseMatrix& a);

}  // namespace asysg
