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

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <set>
#include <thread>
#include <vector>

#include "asysg/core/error.hpp"
#include "asysg/parallel/bounded_queue.hpp"
#include "asysg/parallel/engines.hpp"
#include "asysg/parallel/shared_params.hpp"
#include "asysg/problems/noisy_quadratic.hpp"
#include "asysg/sim/simulators.hpp"

using namespace asysg;

namespace {

NoisyQuadratic quad(std::size_t n = 8, std::uint64_t seed = 5) {
  return NoisyQuadratic(random_quadratic_spec(n, 0.3, 2.0, true, 1.0, 32, 1.0, seed), seed);
}

RunConfig threaded(Mode mode, std::uint64_t K, std::uint32_t M, std::uint32_t workers,
                   double gamma) {
  RunConfig c;
  c.mode = mode;
  c.K = K;
  c.M = M;
  c.workers = workers;
  c.T = 64;
  c.clock = Clock::kWall;
  c.gamma = GammaRule::constant(gamma);
  c.checkpoint_every = std::max<std::uint64_t>(1, K / 10);
  return c;
}

}  // namespace

TEST_CASE("delay_stats examples") {
  const std::vector<DelayRecord> log{{0, 0, 0}, {0, 0, 1}, {1, 1, 3}};
  const DelayStats s = delay_stats(log);
  CHECK(s.max_observed == 2);
  CHECK(s.histogram == std::map<std::uint64_t, std::uint64_t>{{0, 1}, {1, 1}, {2, 1}});
  CHECK(s.total() == 3);
  REQUIRE(s.per_worker_mean.size() == 2);
  CHECK(s.per_worker_mean[0] == 0.5);
  CHECK(s.per_worker_mean[1] == 2.0);

  const DelayStats e = delay_stats({});
  CHECK(e.histogram.empty());
  CHECK(e.max_observed == 0);

  const std::vector<DelayRecord> bad{{0, 5, 3}};
  CHECK_THROWS_AS(delay_stats(bad), DelayBoundError);

  const auto j = to_json(s);
  CHECK(j["max_observed"] == 2);
}

TEST_CASE("bounded queue") {
  BoundedQueue<int> q(2);
  CHECK(q.push(1));
  CHECK(q.push(2));
  CHECK(q.size() == 2);
  CHECK(*q.pop(std::chrono::milliseconds(10)) == 1);
  CHECK(*q.pop(std::chrono::milliseconds(10)) == 2);
  CHECK_FALSE(q.pop(std::chrono::milliseconds(1)).has_value());
  q.close();
  CHECK(q.closed());
  CHECK_FALSE(q.push(3));
}

TEST_CASE("coordinate adds lose no updates under contention") {
  const std::vector<double> init{0.0, 0.0};
  SharedParams x(init);
  const unsigned threads = 4;
  const int per = 250000;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = 0; i < per; ++i) x.add(0, 1.0);
    });
  }
  for (auto& th : pool) th.join();
  CHECK(x.load(0) == static_cast<double>(threads) * per);
  CHECK(x.load(1) == 0.0);
}

TEST_CASE("readers never observe out-of-thin-air values") {
  // Writers alternate each coordinate between two known values; every read
  // must be one of them.
  const std::size_t n = 64;
  const double a = 1.5, b = -2.25;
  SharedParams x(std::vector<double>(n, a));
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> bad{0}, reads{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < 2; ++w) {
    pool.emplace_back([&, w] {
      std::uint64_t i = static_cast<std::uint64_t>(w);
      while (!stop.load()) {
        const std::size_t c = i++ % n;
        x.store(c, x.load(c) == a ? b : a);
      }
    });
  }
  for (int r = 0; r < 2; ++r) {
    pool.emplace_back([&] {
      std::vector<double> buf(n);
      for (int it = 0; it < 20000; ++it) {
        x.copy_to(buf);
        for (double v : buf) {
          if (v != a && v != b) bad.fetch_add(1);
        }
        reads.fetch_add(n);
      }
    });
  }
  pool[2].join();
  pool[3].join();
  stop = true;
  pool[0].join();
  pool[1].join();
  CHECK(bad.load() == 0);
  CHECK(reads.load() == 2 * 20000 * n);
}

TEST_CASE("param server conserves sample gradients") {
  NoisyQuadratic q = quad();
  for (std::uint32_t w : {1u, 2u, 4u}) {
    const RunConfig c = threaded(Mode::kConThreads, 500, 3, w, 0.02);
    const ParallelResult r = run_param_server(q, c);
    CHECK(r.applied == 500u * 3u);
    CHECK(r.delays.total() == r.applied);
    std::uint64_t work = 0;
    for (auto v : r.per_worker_work) work += v;
    CHECK(work == r.applied);
    CHECK(r.trace.rows.front().k == 0);
    CHECK(r.trace.rows.back().k == 500);
    CHECK(r.trace.rows.back().f < r.trace.rows.front().f);
    if (w == 1) {
      // One worker pulls, computes, pushes: it is at most one version behind.
      CHECK(r.delays.max_observed <= 1);
    }
  }
}

TEST_CASE("param server with zero steplength freezes x") {
  NoisyQuadratic q = quad();
  const ParallelResult r = run_param_server(q, threaded(Mode::kConThreads, 50, 2, 2, 0.0));
  CHECK(r.x.values() == q.initial_point().values());
  CHECK_FALSE(r.delays.histogram.empty());
  CHECK(r.applied == 100);
}

TEST_CASE("lock-free engine applies exactly K writes") {
  NoisyQuadratic q = quad();
  for (std::uint32_t w : {1u, 2u, 3u, 4u}) {
    const RunConfig c = threaded(Mode::kInconThreads, 10000, 2, w, 0.05);
    const ParallelResult r = run_lockfree_shared(q, c);
    CHECK(r.applied == 10000);
    std::uint64_t writes = 0;
    for (auto v : r.per_worker_work) writes += v;
    CHECK(writes == 10000);
    CHECK(r.delays.total() == 10000);
    CHECK(r.trace.rows.back().k == 10000);
    CHECK(r.trace.rows.back().f < r.trace.rows.front().f);
  }
}

TEST_CASE("single-worker lock-free run replays through the simulator bit for bit") {
  NoisyQuadratic q = quad(6, 9);
  RunConfig c = threaded(Mode::kInconThreads, 400, 3, 1, 0.05);
  c.seeds.master_seed = 17;
  ParallelOptions opts;
  opts.record_iterations = true;
  const ParallelResult r = run_lockfree_shared(q, c, opts);
  REQUIRE(r.iterations.size() == 400);

  RunConfig sim = c;
  sim.mode = Mode::kInconSim;
  sim.workers = 1;
  sim.clock = Clock::kLogical;
  SimHooks h;
  h.force_coordinate = [&](std::uint64_t k) -> std::optional<std::size_t> {
    return r.iterations[k].coord;
  };
  h.force_sample = [&](std::uint64_t k, std::uint32_t m) -> std::optional<std::uint64_t> {
    return r.iterations[k].samples[m];
  };
  ParamVector prev = q.initial_point();
  h.on_iterate = [&](std::uint64_t k_next, const ParamVector& x) {
    const auto& it = r.iterations[k_next - 1];
    CHECK(x[it.coord] == prev[it.coord] + it.increment);
    prev = x;
  };
  const SimResult s = run_asysg_incon_sim(q, sim, ReadModel::prefix(0), h);
  CHECK(s.x.values() == r.x.values());
}

TEST_CASE("worker failure surfaces as RunFailure with a partial trace") {
  NoisyQuadratic q = quad();
  ParallelOptions opts;
  opts.worker_probe = [](std::uint32_t, std::uint64_t job) {
    if (job == 200) throw std::runtime_error("injected");
  };
  for (Mode m : {Mode::kConThreads, Mode::kInconThreads}) {
    RunConfig c = threaded(m, 1000, 1, 2, 0.01);
    c.checkpoint_every = 10;
    try {
      run_parallel(q, c, opts);
      FAIL("expected RunFailure");
    } catch (const RunFailure& e) {
      CHECK(std::string(e.what()).find("injected") != std::string::npos);
      CHECK_FALSE(e.partial_trace().empty());
      CHECK(e.partial_trace().rows.back().k < 1000);
    }
  }
}

TEST_CASE("stalled workers time out") {
  NoisyQuadratic q = quad();
  ParallelOptions opts;
  opts.stall_timeout = std::chrono::milliseconds(100);
  std::atomic<bool> release{false};
  opts.worker_probe = [&](std::uint32_t, std::uint64_t job) {
    if (job == 20) {
      while (!release.load()) std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  };
  RunConfig c = threaded(Mode::kConThreads, 100, 1, 1, 0.01);
  std::thread releaser([&] {
    std::this_thread::sleep_for(std::chrono::milliseconds(1000));
    release = true;
  });
  CHECK_THROWS_AS(run_param_server(q, c, opts), RunFailure);
  releaser.join();
}

TEST_CASE("run_parallel rejects simulator modes") {
  NoisyQuadratic q = quad();
  RunConfig c = threaded(Mode::kConSim, 10, 1, 1, 0.01);
  c.workers = 1;
  CHECK_THROWS_AS(run_parallel(q, c), ConfigError);
}
