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
#include <functional>
#include <optional>
#include <span>

#include "asysg/core/param_vector.hpp"
#include "asysg/core/run_config.hpp"
#include "asysg/core/trace.hpp"
#include "asysg/problems/problem.hpp"

namespace asysg {

// Optional observers and overrides, mainly for tests and log replay.
// Iterations are numbered k = 0..K-1 and produce x_{k+1} from x_k; minibatch
// slots are m = 0..M-1.
struct SimHooks {
  // After every update, with the new iterate x_{k+1}.
  std::function<void(std::uint64_t k_next, const ParamVector& x)> on_iterate;
  // Replace the drawn sample xi_{k,m}.
  std::function<std::optional<std::uint64_t>(std::uint64_t k, std::uint32_t m)> force_sample;
  // Replace the drawn coordinate i_k (incon modes; sparse mode requires a
  // support coordinate).
  std::function<std::optional<std::size_t>(std::uint64_t k)> force_coordinate;
  // con-sim: the delay tau_{k,m} actually used (after clamping).
  std::function<void(std::uint64_t k, std::uint32_t m, std::uint64_t tau)> on_delay;
  // incon modes: read set J(k,m) and the reconstructed x_hat_{k,m}.
  std::function<void(std::uint64_t k, std::uint32_t m, std::span<const std::uint64_t> J,
                     std::span<const double> x_hat)>
      on_read;
};

struct SimResult {
  Trace trace;
  ParamVector x;              // x_K
  double gamma = 0.0;
  std::uint64_t max_delay = 0;
  std::uint64_t skipped = 0;  // sparse iterations with g_k = 0
};

// x_{k+1} = x_k - gamma sum_m G(x_k; xi_{k,m}).
SimResult run_serial_sg(const Problem& p, const RunConfig& cfg, const SimHooks& hooks = {});

// x_{k+1} = x_k - gamma sum_m G(x_{k - tau_{k,m}}; xi_{k,m}), tau from `dm`.
SimResult run_asysg_con_sim(const Problem& p, const RunConfig& cfg, const DelayModel& dm,
                            const SimHooks& hooks = {});

// One coordinate i_k per iteration, gradients read at
// x_hat_{k,m} = x_k - sum_{j in J(k,m)} (x_{j+1} - x_j) with J from `rm`.
SimResult run_asysg_incon_sim(const Problem& p, const RunConfig& cfg, const ReadModel& rm,
                              const SimHooks& hooks = {});

// As above, but g_k = sum_m G(x_hat_{k,m}; xi_{k,m}) is formed in full, i_k is
// uniform over supp(g_k) and x_{i_k} -= gamma ||g_k||_0 (g_k)_{i_k}. g_k = 0
// skips the update.
SimResult run_asysg_incon_sparse_sim(const Problem& p, const RunConfig& cfg, const ReadModel& rm,
                                     const SimHooks& hooks = {});

// Dispatch on cfg.mode (sim modes only) with the config's delay/read model.
SimResult run_sim(const Problem& p, const RunConfig& cfg, const SimHooks& hooks = {});

}  // namespace asysg
