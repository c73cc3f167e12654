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

#include <atomic>
#include <exception>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "asysg/core/error.hpp"
#include "asysg/core/random.hpp"
#include "asysg/parallel/bounded_queue.hpp"
#include "asysg/parallel/engines.hpp"
#include "asysg/sim/common.hpp"

namespace asysg {
namespace {

struct Contribution {
  std::uint32_t worker = 0;
  std::uint64_t pull = 0;
  std::vector<double> g;
};

struct Published {
  std::shared_ptr<const ParamVector> x;
  std::uint64_t version = 0;
};

struct PendingCheckpoint {
  std::uint64_t k = 0;
  double t = 0.0;
  std::shared_ptr<const ParamVector> x;
  std::uint64_t max_delay = 0;
};

Trace evaluate_checkpoints(const Problem& p, const RunConfig& cfg, double gamma,
                           const std::vector<PendingCheckpoint>& cps, const std::string& note) {
  Trace trace = start_trace(p, cfg);
  trace.notes.push_back(note);
  for (const PendingCheckpoint& cp : cps) {
    const PointEval e = evaluate_point(p, cp.x->span(), cfg.eval_samples);
    trace.rows.push_back({cp.k, cp.t, e.f, e.gradsq, gamma, cp.max_delay});
  }
  return trace;
}

}  // namespace

ParallelResult run_param_server(const Problem& p, const RunConfig& cfg,
                                const ParallelOptions& opts) {
  validate(cfg);
  if (cfg.mode != Mode::kConThreads) {
    throw ConfigError("algorithm.mode", "run_param_server needs con-threads");
  }
  const std::size_t n = p.dim();
  if (p.initial_point().size() != n) throw DimensionError("initial point has the wrong dimension");

  ParallelResult res;
  res.gamma = resolve_gamma(cfg, p);
  res.per_worker_work.assign(cfg.workers, 0);
  ParamVector x = p.initial_point();

  std::mutex pub_mu;
  Published current{std::make_shared<const ParamVector>(x), 0};
  BoundedQueue<Contribution> queue(cfg.workers);
  std::atomic<bool> stop{false};
  std::mutex err_mu;
  std::exception_ptr worker_error;

  auto worker = [&](std::uint32_t w) {
    try {
      Stream samples = derive_stream(cfg.seeds, w, Purpose::kSample);
      for (std::uint64_t job = 0; !stop.load(std::memory_order_acquire); ++job) {
        if (opts.worker_probe) opts.worker_probe(w, job);
        Published snap;
        {
          std::lock_guard lock(pub_mu);
          snap = current;
        }
        Contribution c{w, snap.version, std::vector<double>(n)};
        p.sample_gradient(snap.x->span(), samples.uniform_index(p.sample_count()), c.g);
        if (!queue.push(std::move(c))) break;
      }
    } catch (...) {
      {
        std::lock_guard lock(err_mu);
        if (!worker_error) worker_error = std::current_exception();
      }
      queue.close();
    }
  };

  std::vector<PendingCheckpoint> cps;
  cps.reserve(static_cast<std::size_t>(checkpoint_count(cfg.K, cfg.checkpoint_every)));
  std::vector<DelayRecord> log;
  log.reserve(static_cast<std::size_t>(cfg.K * cfg.M));
  std::uint64_t max_delay = 0;
  std::vector<double> acc(n);
  std::string failure;

  Stopwatch clock;
  cps.push_back({0, 0.0, current.x, 0});
  std::vector<std::thread> threads;
  threads.reserve(cfg.workers);
  for (std::uint32_t w = 0; w < cfg.workers; ++w) threads.emplace_back(worker, w);

  for (std::uint64_t k = 0; k < cfg.K && failure.empty(); ++k) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::uint32_t m = 0; m < cfg.M; ++m) {
      std::optional<Contribution> c = queue.pop(opts.stall_timeout);
      if (!c) {
        failure = queue.closed() ? "worker failed" : "timed out waiting for a contribution";
        break;
      }
      log.push_back({c->worker, c->pull, k});
      max_delay = std::max(max_delay, k - c->pull);
      ++res.per_worker_work[c->worker];
      for (std::size_t i = 0; i < n; ++i) acc[i] += c->g[i];
    }
    if (!failure.empty()) break;
    for (std::size_t i = 0; i < n; ++i) x[i] += -(res.gamma * acc[i]);
    auto next = std::make_shared<const ParamVector>(x);
    {
      std::lock_guard lock(pub_mu);
      current = {next, k + 1};
    }
    if (is_checkpoint(k + 1, cfg.K, cfg.checkpoint_every)) {
      cps.push_back({k + 1, clock.seconds(), std::move(next), max_delay});
    }
  }
  res.seconds = clock.seconds();

  stop.store(true, std::memory_order_release);
  queue.close();
  while (queue.pop(std::chrono::milliseconds(1))) ++res.discarded;
  for (std::thread& t : threads) t.join();

  res.applied = log.size();
  res.delays = delay_stats(log, cfg.workers);
  const std::string note = "checkpoints evaluated after the run from versioned snapshots";
  if (!failure.empty()) {
    std::string what = "param-server run failed: " + failure;
    if (worker_error) {
      try {
        std::rethrow_exception(worker_error);
      } catch (const std::exception& e) {
        what += std::string(" (") + e.what() + ")";
      } catch (...) {
      }
    }
    throw RunFailure(what, evaluate_checkpoints(p, cfg, res.gamma, cps, note));
  }
  res.trace = evaluate_checkpoints(p, cfg, res.gamma, cps, note);
  res.x = std::move(x);
  return res;
}

ParallelResult run_parallel(const Problem& p, const RunConfig& cfg, const ParallelOptions& opts) {
  switch (cfg.mode) {
    case Mode::kConThreads: return run_param_server(p, cfg, opts);
    case Mode::kInconThreads: return run_lockfree_shared(p, cfg, opts);
    default:
      throw ConfigError("algorithm.mode", std::string(to_string(cfg.mode)) + " is not threaded");
  }
}

}  // namespace asysg
