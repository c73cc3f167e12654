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

#include "asysg/problems/problem.hpp"

#include <string>
#include <vector>

#include "asysg/core/error.hpp"

namespace asysg {

double Problem::sample_partial(std::span<const double> x, std::uint64_t xi,
                               std::size_t coord) const {
  std::vector<double> g(dim());
  sample_gradient(x, xi, g);
  return g[coord];
}

double Problem::objective_prefix(std::span<const double> x, std::uint64_t count) const {
  if (count == 0 || count > sample_count()) {
    throw DimensionError("objective_prefix: sample count out of range");
  }
  double s = 0.0;
  for (std::uint64_t xi = 0; xi < count; ++xi) s += sample_loss(x, xi);
  return s / static_cast<double>(count);
}

void Problem::gradient_prefix(std::span<const double> x, std::uint64_t count,
                              std::span<double> out) const {
  if (count == 0 || count > sample_count()) {
    throw DimensionError("gradient_prefix: sample count out of range");
  }
  const std::size_t n = dim();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
  for (std::uint64_t xi = 0; xi < count; ++xi) {
    sample_gradient(x, xi, g);
    for (std::size_t i = 0; i < n; ++i) out[i] += g[i];
  }
  const double inv = 1.0 / static_cast<double>(count);
  for (std::size_t i = 0; i < n; ++i) out[i] *= inv;
}

ParamVector full_gradient(const Problem& p, const ParamVector& x) {
  if (x.size() != p.dim()) {
    throw DimensionError("full_gradient: x has dimension " + std::to_string(x.size()) +
                         ", problem has " + std::to_string(p.dim()));
  }
  ParamVector g(p.dim());
  p.full_gradient(x.span(), g.span());
  return g;
}

ParamVector stochastic_gradient(const Problem& p, const ParamVector& x, std::uint64_t xi) {
  if (x.size() != p.dim()) {
    throw DimensionError("stochastic_gradient: x has dimension " + std::to_string(x.size()) +
                         ", problem has " + std::to_string(p.dim()));
  }
  if (xi >= p.sample_count()) {
    throw DimensionError("stochastic_gradient: sample index " + std::to_string(xi) +
                         " outside [0, " + std::to_string(p.sample_count()) + ")");
  }
  ParamVector g(p.dim());
  p.sample_gradient(x.span(), xi, g.span());
  return g;
}

}  // namespace asysg
