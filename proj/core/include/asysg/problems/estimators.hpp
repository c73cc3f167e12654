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

#include "asysg/problems/problem.hpp"

namespace asysg {

// Mean of ||G(x; xi) - grad f(x)||^2 over samples xi = 0 .. budget-1.
// Throws std::invalid_argument for budget = 0 or budget > N.
double estimate_sigma_sq(const Problem& p, const ParamVector& x, std::uint64_t budget);

struct EstimatedSmoothness {
  double L = 0.0;      // max sampled ||grad f(x) - grad f(y)|| / ||x - y||
  double L_max = 0.0;  // max sampled |grad_i f(x) - grad_i f(x + a e_i)| / |a|
};

// Sampled Lipschitz ratios around x. Gradients are averaged over the first
// eval_samples samples (0 = all). The result is a lower estimate of the true
// constants, never a guarantee.
EstimatedSmoothness estimate_smoothness(const Problem& p, const ParamVector& x,
                                        std::uint32_t probes, double radius,
                                        std::uint64_t seed, std::uint64_t eval_samples = 0);

}  // namespace asysg
