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

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "asysg/core/error.hpp"
#include "asysg/core/random.hpp"
#include "asysg/parallel/engines.hpp"
#include "asysg/parallel/shared_params.hpp"
#include "asysg/sim/common.hpp"

namespace asysg {
namespace {

struct Snapshot {
  std::uint64_t k = 0;
  double t = 0.0;
  std::uint64_t max_delay = 0;
  std::vector<double> x;
};

void atomic_max(std::atomic<std::uint64_t>& a, std::uint64_t v) {
  std::uint64_t cur = a.load(std::memory_order_relaxed);
  while (cur < v && !a.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
  }
}

}  // namespace

ParallelResult run_lockfree_shared(const Problem& p, const RunConfig& cfg,
                                   const ParallelOptions& opts) {
  validate(cfg);
  if (cfg.mode != Mode::kInconThreads) {
    throw ConfigError("algorithm.mode", "run_lockfree_shared needs incon-threads");
  }
  const std::size_t n = p.dim();
  if (p.initial_point().size() != n) throw DimensionError("initial point has the wrong dimension");
  // Every worker may claim once past K before it stops.
  if (cfg.K > std::numeric_limits<std::uint64_t>::max() - cfg.workers) {
    throw ConfigError("algorithm.K", "iteration counter would overflow");
  }

  ParallelResult res;
  res.gamma = resolve_gamma(cfg, p);
  const double gamma = res.gamma;
  SharedParams shared(p.initial_point().span());

  // Slot c belongs to the c-th checkpoint index; only the claimer writes it.
  std::vector<std::uint64_t> cp_index;
  for (std::uint64_t k = 0; k <= cfg.K; ++k) {
    if (is_checkpoint(k, cfg.K, cfg.checkpoint_every)) cp_index.push_back(k);
  }
  std::vector<Snapshot> snaps(cp_index.size());
  auto slot_of = [&](std::uint64_t k) -> std::size_t {
    return static_cast<std::size_t>(std::lower_bound(cp_index.begin(), cp_index.end(), k) -
                                    cp_index.begin());
  };

  std::vector<DelayRecord> log(static_cast<std::size_t>(cfg.K));
  if (opts.record_iterations) res.iterations.resize(static_cast<std::size_t>(cfg.K));
  std::vector<std::uint64_t> writes(cfg.workers, 0);
  std::vector<std::uint64_t> wasted(cfg.workers, 0);

  std::atomic<std::uint64_t> counter{0};
  std::atomic<std::uint64_t> max_delay{0};
  std::atomic<bool> abort{false};
  std::mutex err_mu;
  std::exception_ptr worker_error;

  Stopwatch clock;
  snaps[0] = {0, 0.0, 0, std::vector<double>(p.initial_point().begin(), p.initial_point().end())};

  auto worker = [&](std::uint32_t w) {
    try {
      Stream samples = derive_stream(cfg.seeds, w, Purpose::kSample);
      Stream coords = derive_stream(cfg.seeds, w, Purpose::kCoordinate);
      std::vector<double> x_hat(n);
      std::vector<std::uint64_t> xis(cfg.M);
      for (std::uint64_t job = 0;; ++job) {
        if (abort.load(std::memory_order_relaxed)) return;
        const std::uint64_t seen = counter.load(std::memory_order_acquire);
        if (seen >= cfg.K) return;
        if (opts.worker_probe) opts.worker_probe(w, job);
        shared.copy_to(x_hat);
        const auto coord = static_cast<std::size_t>(coords.uniform_index(n));
        double s = 0.0;
        for (std::uint32_t m = 0; m < cfg.M; ++m) {
          xis[m] = samples.uniform_index(p.sample_count());
          s += p.sample_partial(x_hat, xis[m], coord);
        }
        const double increment = -(gamma * s);
        const std::uint64_t k = counter.fetch_add(1, std::memory_order_acq_rel);
        if (k >= cfg.K) {
          ++wasted[w];
          return;
        }
        shared.add(coord, increment);
        ++writes[w];
        log[static_cast<std::size_t>(k)] = {w, seen, k};
        atomic_max(max_delay, k - seen);
        if (opts.record_iterations) {
          res.iterations[static_cast<std::size_t>(k)] = {k, w, coord, xis, increment};
        }
        if (k + 1 < cfg.K && is_checkpoint(k + 1, cfg.K, cfg.checkpoint_every)) {
          Snapshot& sn = snaps[slot_of(k + 1)];
          sn.k = k + 1;
          sn.t = clock.seconds();
          sn.max_delay = max_delay.load(std::memory_order_relaxed);
          sn.x.resize(n);
          shared.copy_to(sn.x);
        }
      }
    } catch (...) {
      {
        std::lock_guard lock(err_mu);
        if (!worker_error) worker_error = std::current_exception();
      }
      abort.store(true, std::memory_order_relaxed);
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(cfg.workers);
  for (std::uint32_t w = 0; w < cfg.workers; ++w) threads.emplace_back(worker, w);
  for (std::thread& t : threads) t.join();
  res.seconds = clock.seconds();

  const std::uint64_t claimed = std::min(counter.load(), cfg.K);
  for (std::uint32_t w = 0; w < cfg.workers; ++w) {
    res.applied += writes[w];
    res.discarded += wasted[w];
  }
  res.per_worker_work = writes;
  res.x = ParamVector(n);
  shared.copy_to(res.x.span());
  log.resize(static_cast<std::size_t>(claimed));

  Trace trace = start_trace(p, cfg);
  trace.notes.push_back(
      "checkpoints evaluated after the run from unsynchronized (possibly torn) snapshots");
  trace.notes.push_back("t is the running max of snapshot times");
  double t_floor = 0.0;
  auto emit = [&](const Snapshot& sn) {
    const PointEval e = evaluate_point(p, sn.x, cfg.eval_samples);
    t_floor = std::max(t_floor, sn.t);
    trace.rows.push_back({sn.k, t_floor, e.f, e.gradsq, gamma, sn.max_delay});
  };

  if (worker_error) {
    for (const Snapshot& sn : snaps) {
      if (!sn.x.empty()) emit(sn);
    }
    std::string what = "lock-free run failed";
    try {
      std::rethrow_exception(worker_error);
    } catch (const std::exception& e) {
      what += std::string(": ") + e.what();
    } catch (...) {
    }
    throw RunFailure(what, std::move(trace));
  }

  snaps.back() = {cfg.K, res.seconds, max_delay.load(),
                  std::vector<double>(res.x.begin(), res.x.end())};
  for (const Snapshot& sn : snaps) emit(sn);
  res.delays = delay_stats(log, cfg.workers);
  res.trace = std::move(trace);
  return res;
}

}  // namespace asysg
