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

#include <cstdint>
#include <vector>

#include "asysg/problems/dense_matrix.hpp"
#include "asysg/problems/problem.hpp"

namespace asysg {

// F(x; xi) = 1/2 (a_xi^T x - b_xi)^2 over the rows of A.
class LeastSquares final : public Problem {
 public:
  LeastSquares(DenseMatrix A, std::vector<double> b, ParamVector x1 = {});

  // Rows a_xi ~ N(0, I), b = A x_true + noise * N(0, 1), x1 = 0.
  static LeastSquares random(std::size_t n, std::uint64_t samples, double noise,
                             std::uint64_t seed);

  std::string name() const override { return "least_squares"; }
  std::size_t dim() const override { return A_.cols; }
  std::uint64_t sample_count() const override { return A_.rows; }
  const ParamVector& initial_point() const override { return x1_; }

  double sample_loss(std::span<const double> x, std::uint64_t xi) const override;
  void sample_gradient(std::span<const double> x, std::uint64_t xi,
                       std::span<double> out) const override;
  double sample_partial(std::span<const double> x, std::uint64_t xi,
                        std::size_t coord) const override;

  // L, L_max and L_T are exact (Hessian A^T A / N); gap uses the exact
  // minimizer; sigma^2 is estimated at x1, so the result is flagged.
  ProblemConstants constants(std::uint64_t T) const override;

  // Hessian A^T A / N.
  DenseMatrix hessian() const;
  const DenseMatrix& A() const noexcept { return A_; }
  const std::vector<double>& b() const noexcept { return b_; }

 private:
  double residual(std::span<const double> x, std::uint64_t xi) const;

  DenseMatrix A_;
  std::vector<double> b_;
  ParamVector x1_;
};

}  // namespace asysg
