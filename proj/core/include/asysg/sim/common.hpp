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

#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

#include "asysg/core/param_vector.hpp"
#include "asysg/core/run_config.hpp"
#include "asysg/core/trace.hpp"
#include "asysg/problems/problem.hpp"

namespace asysg {

// Steplength for cfg.gamma. The corollary2/corollary4 rules need the problem
// constants at cfg.T; constant rules ignore them.
double resolve_gamma(const RunConfig& cfg, const ProblemConstants& constants, std::size_t n);
// Computes the constants only when the rule needs them.
double resolve_gamma(const RunConfig& cfg, const Problem& p);

struct PointEval {
  double f = 0.0;
  double gradsq = 0.0;
};

// f and ||grad f||^2 over the first eval_samples samples (0 = all).
PointEval evaluate_point(const Problem& p, std::span<const double> x, std::uint64_t eval_samples);

// k = 0, every checkpoint_every iterations, and K.
bool is_checkpoint(std::uint64_t k, std::uint64_t K, std::uint64_t checkpoint_every) noexcept;
std::uint64_t checkpoint_count(std::uint64_t K, std::uint64_t checkpoint_every) noexcept;

// Seeds a trace with its config id and the standard header notes.
Trace start_trace(const Problem& p, const RunConfig& cfg);

// ---- sparse rule --------------------------------------------------------------

// Indices i with g_i != 0, ascending.
std::vector<std::size_t> sparse_support(std::span<const double> g);

struct SparseStep {
  std::size_t coord = 0;
  double decrement = 0.0;  // gamma * ||g||_0 * g_coord; x_coord -= decrement
};

// Step for the support element chosen by `choice` (index into the support).
// Throws std::invalid_argument for g = 0 or choice out of range.
SparseStep sparse_update(std::span<const double> g, double gamma, std::size_t choice);

// Monotonic stopwatch in seconds.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace asysg
