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

#include "asysg/problems/noisy_quadratic.hpp"

#include <cmath>
#include <string>

#include "asysg/core/error.hpp"
#include "asysg/core/random.hpp"
#include "asysg/theory/smoothness.hpp"

namespace asysg {
namespace {

// r = Q (x - x*), row by row, left to right.
void residual_gradient(const NoisyQuadraticSpec& s, std::span<const double> x,
                       std::span<double> out) {
  const std::size_t n = s.x_star.size();
  for (std::size_t r = 0; r < n; ++r) {
    double acc = 0.0;
    const double* row = &s.Q.data[r * n];
    for (std::size_t c = 0; c < n; ++c) acc += row[c] * (x[c] - s.x_star[c]);
    out[r] = acc;
  }
}

double row_gradient(const NoisyQuadraticSpec& s, std::span<const double> x, std::size_t r) {
  const std::size_t n = s.x_star.size();
  double acc = 0.0;
  const double* row = &s.Q.data[r * n];
  for (std::size_t c = 0; c < n; ++c) acc += row[c] * (x[c] - s.x_star[c]);
  return acc;
}

}  // namespace

NoisyQuadraticSpec random_quadratic_spec(std::size_t n, double lambda_min, double lambda_max,
                                         bool rotate, double sigma, std::uint64_t samples,
                                         double gap, std::uint64_t seed) {
  if (n == 0) throw ConfigError("problem.dim", "must be >= 1");
  if (!(lambda_min > 0.0) || lambda_max < lambda_min) {
    throw ConfigError("problem.lambda", "need 0 < lambda_min <= lambda_max");
  }
  if (!(gap > 0.0)) throw ConfigError("problem.gap", "must be > 0");
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) {
    eig[i] = n == 1 ? lambda_max
                    : lambda_min + (lambda_max - lambda_min) * static_cast<double>(i) /
                                       static_cast<double>(n - 1);
  }
  NoisyQuadraticSpec spec;
  spec.Q = make_spd_matrix(eig, rotate, seed);
  spec.sigma = sigma;
  spec.samples = samples;

  Stream s = derive_stream(SeedSpec{seed}, 0, Purpose::kInit);
  spec.x_star = ParamVector(n);
  for (double& v : spec.x_star) v = s.normal();
  ParamVector d(n);
  for (double& v : d) v = s.normal();
  // Scale d so that 1/2 d^T Q d = gap.
  double quad = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < n; ++c) acc += spec.Q(r, c) * d[c];
    quad += d[r] * acc;
  }
  const double scale = std::sqrt(2.0 * gap / quad);
  spec.x1 = ParamVector(n);
  for (std::size_t i = 0; i < n; ++i) spec.x1[i] = spec.x_star[i] + scale * d[i];
  return spec;
}

NoisyQuadratic::NoisyQuadratic(NoisyQuadraticSpec spec, std::uint64_t seed)
    : spec_(std::move(spec)) {
  const std::size_t n = spec_.x_star.size();
  if (n == 0) throw DimensionError("noisy quadratic: empty x*");
  if (spec_.Q.rows != n || spec_.Q.cols != n) {
    throw DimensionError("noisy quadratic: Q must be n x n");
  }
  if (spec_.x1.size() == 0) spec_.x1 = ParamVector(n);
  if (spec_.x1.size() != n) throw DimensionError("noisy quadratic: x1 has wrong dimension");
  if (spec_.samples < 2 || spec_.samples % 2 != 0) {
    throw ConfigError("problem.samples", "noisy quadratic needs an even sample count >= 2");
  }
  if (!(spec_.sigma >= 0.0)) throw ConfigError("problem.sigma", "must be >= 0");

  const std::uint64_t half = spec_.samples / 2;
  noise_.assign(static_cast<std::size_t>(spec_.samples) * n, 0.0);
  Stream s = derive_stream(SeedSpec{seed}, 0, Purpose::kNoise);
  std::vector<double> u(n);
  for (std::uint64_t xi = 0; xi < half; ++xi) {
    double norm_sq = 0.0;
    do {
      for (double& v : u) v = s.normal();
      norm_sq = squared_norm(u);
    } while (norm_sq == 0.0);
    const double scale = spec_.sigma / std::sqrt(norm_sq);
    double* plus = &noise_[static_cast<std::size_t>(xi) * n];
    double* minus = &noise_[static_cast<std::size_t>(xi + half) * n];
    for (std::size_t i = 0; i < n; ++i) {
      plus[i] = scale * u[i];
      minus[i] = -plus[i];
    }
  }
}

std::span<const double> NoisyQuadratic::noise(std::uint64_t xi) const {
  const std::size_t n = dim();
  return {&noise_[static_cast<std::size_t>(xi) * n], n};
}

double NoisyQuadratic::objective(std::span<const double> x) const {
  const std::size_t n = dim();
  double acc = 0.0;
  for (std::size_t r = 0; r < n; ++r) acc += (x[r] - spec_.x_star[r]) * row_gradient(spec_, x, r);
  return 0.5 * acc;
}

void NoisyQuadratic::full_gradient(std::span<const double> x, std::span<double> out) const {
  residual_gradient(spec_, x, out);
}

double NoisyQuadratic::sample_loss(std::span<const double> x, std::uint64_t xi) const {
  const auto z = noise(xi);
  double lin = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) lin += z[i] * (x[i] - spec_.x_star[i]);
  return objective(x) + lin;
}

void NoisyQuadratic::sample_gradient(std::span<const double> x, std::uint64_t xi,
                                     std::span<double> out) const {
  residual_gradient(spec_, x, out);
  const auto z = noise(xi);
  for (std::size_t i = 0; i < dim(); ++i) out[i] += z[i];
}

double NoisyQuadratic::sample_partial(std::span<const double> x, std::uint64_t xi,
                                      std::size_t coord) const {
  return row_gradient(spec_, x, coord) + noise(xi)[coord];
}

ProblemConstants NoisyQuadratic::constants(std::uint64_t T) const {
  const std::size_t n = dim();
  const std::size_t s = static_cast<std::size_t>(std::max<std::uint64_t>(T, 1));
  ProblemConstants c;
  c.T = T;
  c.sigma_sq = spec_.sigma * spec_.sigma;
  c.gap = objective(spec_.x1.span());
  if (support_count(n, s) <= kMaxSupports) {
    const SmoothnessConstants sc = constants_quadratic(spec_.Q, std::min(s, n));
    c.L = sc.L;
    c.L_max = sc.L_max;
    c.L_T = sc.at(s);
  } else {
    // Too many supports to enumerate; L is a valid upper bound for L_T.
    const SmoothnessConstants sc = constants_quadratic(spec_.Q, 1);
    c.L = sc.L;
    c.L_max = sc.L_max;
    c.L_T = sc.L;
  }
  return c;
}

}  // namespace asysg
