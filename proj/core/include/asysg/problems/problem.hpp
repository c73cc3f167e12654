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
#include <memory>
#include <span>
#include <string>

#include "asysg/core/param_vector.hpp"

namespace asysg {

// Constants entering the steplength rules and bounds. For nonconvex problems
// some or all of them are empirical, in which case `estimated` is set.
struct ProblemConstants {
  double L = 0.0;
  double L_max = 0.0;
  double L_T = 0.0;        // L_s at s = max(T, 1)
  std::uint64_t T = 0;
  double sigma_sq = 0.0;
  double gap = 0.0;        // f(x_1) - f(x*), or a valid upper bound on it
  bool estimated = false;
};

// Finite-sum objective f(x) = (1/N) sum_xi F(x; xi) with per-sample gradients
// G(x; xi). Sample indices are zero-based: xi in [0, N).
//
// Implementations are immutable after construction and every method is safe
// to call concurrently.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dim() const = 0;
  virtual std::uint64_t sample_count() const = 0;
  virtual const ParamVector& initial_point() const = 0;

  virtual double sample_loss(std::span<const double> x, std::uint64_t xi) const = 0;
  // Writes G(x; xi) into out (overwrites).
  virtual void sample_gradient(std::span<const double> x, std::uint64_t xi,
                               std::span<double> out) const = 0;
  // (G(x; xi))_coord. Must equal the coord-th entry of sample_gradient
  // bit for bit; the default computes the full vector.
  virtual double sample_partial(std::span<const double> x, std::uint64_t xi,
                                std::size_t coord) const;

  // Average over the first `count` samples, accumulated left to right.
  virtual double objective_prefix(std::span<const double> x, std::uint64_t count) const;
  virtual void gradient_prefix(std::span<const double> x, std::uint64_t count,
                               std::span<double> out) const;

  virtual double objective(std::span<const double> x) const {
    return objective_prefix(x, sample_count());
  }
  virtual void full_gradient(std::span<const double> x, std::span<double> out) const {
    gradient_prefix(x, sample_count(), out);
  }

  // Constants for delay bound T.
  virtual ProblemConstants constants(std::uint64_t T) const = 0;
};

// Checked wrappers with value semantics.
ParamVector full_gradient(const Problem& p, const ParamVector& x);
ParamVector stochastic_gradient(const Problem& p, const ParamVector& x, std::uint64_t xi);

}  // namespace asysg
