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

// f(x) = 1/2 (x - x*)^T Q (x - x*),  F(x; xi) = f(x) + z_xi^T (x - x*),
// G(x; xi) = Q (x - x*) + z_xi.
//
// The noise vectors come in +/- pairs (z_{xi + N/2} = -z_xi), each of norm
// sigma, so the sample mean of G is exactly grad f and the variance of G is
// exactly sigma^2.
struct NoisyQuadraticSpec {
  DenseMatrix Q;
  ParamVector x_star;
  ParamVector x1;
  double sigma = 0.0;
  std::uint64_t samples = 2;  // N, must be even
};

// Builds a spec with eigenvalues evenly spaced on [lambda_min, lambda_max],
// a random rotation (if requested), x* drawn N(0, I) and x1 = x* + d with the
// direction d scaled so that f(x1) = gap exactly up to rounding.
NoisyQuadraticSpec random_quadratic_spec(std::size_t n, double lambda_min, double lambda_max,
                                         bool rotate, double sigma, std::uint64_t samples,
                                         double gap, std::uint64_t seed);

class NoisyQuadratic final : public Problem {
 public:
  // Noise directions are drawn from `seed`.
  NoisyQuadratic(NoisyQuadraticSpec spec, std::uint64_t seed);

  std::string name() const override { return "noisy_quadratic"; }
  std::size_t dim() const override { return spec_.x_star.size(); }
  std::uint64_t sample_count() const override { return spec_.samples; }
  const ParamVector& initial_point() const override { return spec_.x1; }

  double sample_loss(std::span<const double> x, std::uint64_t xi) const override;
  void sample_gradient(std::span<const double> x, std::uint64_t xi,
                       std::span<double> out) const override;
  double sample_partial(std::span<const double> x, std::uint64_t xi,
                        std::size_t coord) const override;

  double objective(std::span<const double> x) const override;
  void full_gradient(std::span<const double> x, std::span<double> out) const override;

  ProblemConstants constants(std::uint64_t T) const override;

  const NoisyQuadraticSpec& spec() const noexcept { return spec_; }
  std::span<const double> noise(std::uint64_t xi) const;

 private:
  NoisyQuadraticSpec spec_;
  std::vector<double> noise_;  // N x n; row xi + N/2 is the negation of row xi
};

}  // namespace asysg
