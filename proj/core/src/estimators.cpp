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

#include "asysg/problems/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "asysg/core/error.hpp"
#include "asysg/core/random.hpp"

namespace asysg {

double estimate_sigma_sq(const Problem& p, const ParamVector& x, std::uint64_t budget) {
  if (budget == 0) throw std::invalid_argument("estimate_sigma_sq: empty sample budget");
  if (budget > p.sample_count()) {
    throw std::invalid_argument("estimate_sigma_sq: budget exceeds sample count");
  }
  if (x.size() != p.dim()) throw DimensionError("estimate_sigma_sq: dimension mismatch");
  const std::size_t n = p.dim();
  std::vector<double> full(n), g(n);
  p.full_gradient(x.span(), full);
  double acc = 0.0;
  for (std::uint64_t xi = 0; xi < budget; ++xi) {
    p.sample_gradient(x.span(), xi, g);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = g[i] - full[i];
      d += e * e;
    }
    acc += d;
  }
  return acc / static_cast<double>(budget);
}

EstimatedSmoothness estimate_smoothness(const Problem& p, const ParamVector& x,
                                        std::uint32_t probes, double radius,
                                        std::uint64_t seed, std::uint64_t eval_samples) {
  if (x.size() != p.dim()) throw DimensionError("estimate_smoothness: dimension mismatch");
  const std::size_t n = p.dim();
  const std::uint64_t count =
      eval_samples == 0 ? p.sample_count() : std::min(eval_samples, p.sample_count());
  Stream s = derive_stream(SeedSpec{seed}, 0, Purpose::kEstimate);

  std::vector<double> g0(n), g1(n), y(n), u(n);
  p.gradient_prefix(x.span(), count, g0);
  EstimatedSmoothness est;
  for (std::uint32_t probe = 0; probe < probes; ++probe) {
    for (double& v : u) v = s.normal();
    const double scale = radius / std::sqrt(squared_norm(u));
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + scale * u[i];
    p.gradient_prefix(y, count, g1);
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff += (g1[i] - g0[i]) * (g1[i] - g0[i]);
    est.L = std::max(est.L, std::sqrt(diff) / radius);

    const std::size_t coord = static_cast<std::size_t>(s.uniform_index(n));
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i];
    y[coord] += radius;
    p.gradient_prefix(y, count, g1);
    est.L_max = std::max(est.L_max, std::abs(g1[coord] - g0[coord]) / radius);
  }
  est.L = std::max(est.L, est.L_max);
  return est;
}

}  // namespace asysg
