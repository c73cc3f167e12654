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

#include "asysg/problems/least_squares.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "asysg/core/error.hpp"
#include "asysg/core/random.hpp"
#include "asysg/problems/estimators.hpp"
#include "asysg/theory/smoothness.hpp"

namespace asysg {

LeastSquares::LeastSquares(DenseMatrix A, std::vector<double> b, ParamVector x1)
    : A_(std::move(A)), b_(std::move(b)), x1_(std::move(x1)) {
  if (A_.rows == 0 || A_.cols == 0) throw DimensionError("least squares: empty design");
  if (b_.size() != A_.rows) throw DimensionError("least squares: b must have one entry per row");
  if (x1_.size() == 0) x1_ = ParamVector(A_.cols);
  if (x1_.size() != A_.cols) throw DimensionError("least squares: x1 has wrong dimension");
}

LeastSquares LeastSquares::random(std::size_t n, std::uint64_t samples, double noise,
                                  std::uint64_t seed) {
  if (n == 0) throw ConfigError("problem.dim", "must be >= 1");
  if (samples == 0) throw ConfigError("problem.samples", "must be >= 1");
  Stream s = derive_stream(SeedSpec{seed}, 0, Purpose::kData);
  std::vector<double> x_true(n);
  for (double& v : x_true) v = s.normal();
  DenseMatrix A(samples, n);
  std::vector<double> b(samples);
  for (std::uint64_t r = 0; r < samples; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      A(r, c) = s.normal();
      acc += A(r, c) * x_true[c];
    }
    b[r] = acc + noise * s.normal();
  }
  return LeastSquares(std::move(A), std::move(b));
}

double LeastSquares::residual(std::span<const double> x, std::uint64_t xi) const {
  const std::size_t n = dim();
  const double* row = &A_.data[static_cast<std::size_t>(xi) * n];
  double acc = 0.0;
  for (std::size_t c = 0; c < n; ++c) acc += row[c] * x[c];
  return acc - b_[xi];
}

double LeastSquares::sample_loss(std::span<const double> x, std::uint64_t xi) const {
  const double r = residual(x, xi);
  return 0.5 * r * r;
}

void LeastSquares::sample_gradient(std::span<const double> x, std::uint64_t xi,
                                   std::span<double> out) const {
  const std::size_t n = dim();
  const double r = residual(x, xi);
  const double* row = &A_.data[static_cast<std::size_t>(xi) * n];
  for (std::size_t c = 0; c < n; ++c) out[c] = row[c] * r;
}

double LeastSquares::sample_partial(std::span<const double> x, std::uint64_t xi,
                                    std::size_t coord) const {
  return A_(xi, coord) * residual(x, xi);
}

DenseMatrix LeastSquares::hessian() const {
  const std::size_t n = dim();
  DenseMatrix h(n, n);
  for (std::uint64_t r = 0; r < A_.rows; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) h(i, j) += A_(r, i) * A_(r, j);
    }
  }
  const double inv = 1.0 / static_cast<double>(A_.rows);
  for (double& v : h.data) v *= inv;
  return h;
}

ProblemConstants LeastSquares::constants(std::uint64_t T) const {
  const std::size_t n = dim();
  const std::size_t s = static_cast<std::size_t>(std::max<std::uint64_t>(T, 1));
  const DenseMatrix h = hessian();
  ProblemConstants c;
  c.T = T;
  if (support_count(n, s) <= kMaxSupports) {
    const SmoothnessConstants sc = constants_quadratic(h, std::min(s, n));
    c.L = sc.L;
    c.L_max = sc.L_max;
    c.L_T = sc.at(s);
  } else {
    const SmoothnessConstants sc = constants_quadratic(h, 1);
    c.L = sc.L;
    c.L_max = sc.L_max;
    c.L_T = sc.L;
  }

  // Exact minimizer via the normal equations.
  const auto en = static_cast<Eigen::Index>(n);
  const auto em = static_cast<Eigen::Index>(A_.rows);
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(
      A_.data.data(), em, en);
  Eigen::Map<const Eigen::VectorXd> bv(b_.data(), em);
  const Eigen::VectorXd xs = a.colPivHouseholderQr().solve(bv);
  std::vector<double> xstar(xs.data(), xs.data() + n);
  c.gap = std::max(0.0, objective(x1_.span()) - objective(xstar));

  c.sigma_sq = estimate_sigma_sq(*this, x1_, sample_count());
  c.estimated = true;
  return c;
}

}  // namespace asysg
