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
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "asysg/core/param_vector.hpp"
#include "asysg/core/run_config.hpp"
#include "asysg/core/trace.hpp"
#include "asysg/problems/problem.hpp"

namespace asysg {

// One applied contribution: the worker read version `pull` and its result was
// applied at version `apply`.
struct DelayRecord {
  std::uint32_t worker = 0;
  std::uint64_t pull = 0;
  std::uint64_t apply = 0;
};

struct DelayStats {
  std::uint64_t max_observed = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;  // delay -> count
  std::vector<double> per_worker_mean;

  std::uint64_t total() const noexcept;
};

// `workers` sizes per_worker_mean (0 = one past the largest worker id seen).
// Throws DelayBoundError when apply < pull.
DelayStats delay_stats(std::span<const DelayRecord> log, std::size_t workers = 0);

nlohmann::json to_json(const DelayStats& stats);

// A worker failed or stalled. Carries the checkpoints completed so far.
class RunFailure : public std::runtime_error {
 public:
  RunFailure(const std::string& what, Trace partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const Trace& partial_trace() const noexcept { return partial_; }

 private:
  Trace partial_;
};

// Lock-free iteration as logged for replay: at claimed index k the worker
// wrote `increment` into coordinate `coord`, computed from `samples`.
struct IterationLog {
  std::uint64_t k = 0;
  std::uint32_t worker = 0;
  std::size_t coord = 0;
  std::vector<std::uint64_t> samples;
  double increment = 0.0;
};

struct ParallelOptions {
  // Abort when the master waits longer than this for a contribution.
  std::chrono::milliseconds stall_timeout{120000};
  // incon-threads: keep an IterationLog entry per claimed iteration.
  bool record_iterations = false;
  // Called by each worker before every gradient job (test hook; may throw).
  std::function<void(std::uint32_t worker, std::uint64_t job)> worker_probe;
};

struct ParallelResult {
  Trace trace;
  DelayStats delays;
  ParamVector x;  // final parameters
  double gamma = 0.0;
  double seconds = 0.0;  // wall time of the optimization phase
  std::vector<std::uint64_t> per_worker_work;  // sample-gradients or writes
  std::uint64_t applied = 0;  // sample-gradients (con) or coordinate writes (incon)
  std::uint64_t discarded = 0;  // work finished after the run ended
  std::vector<IterationLog> iterations;  // ordered by k when recorded
};

// Parameter-server AsySG-con. The master thread owns x and publishes each
// version as an immutable snapshot; workers pull the newest snapshot, compute
// one sample gradient, and push it through a bounded queue; the master sums
// exactly M contributions per update. Checkpoint snapshots are evaluated after
// the run.
ParallelResult run_param_server(const Problem& p, const RunConfig& cfg,
                                const ParallelOptions& opts = {});

// Lock-free AsySG-incon on SharedParams. Workers copy x coordinate-wise
// without synchronization, sum M partial derivatives for a uniform coordinate,
// claim an iteration index from a shared counter and, if it is below K, add
// the increment to that coordinate. Exactly K writes are applied. Checkpoint
// snapshots are copied (possibly torn) by the worker that claims the
// checkpoint index and evaluated after the run.
ParallelResult run_lockfree_shared(const Problem& p, const RunConfig& cfg,
                                   const ParallelOptions& opts = {});

// Dispatch on cfg.mode (threaded modes only).
ParallelResult run_parallel(const Problem& p, const RunConfig& cfg,
                            const ParallelOptions& opts = {});

}  // namespace asysg
