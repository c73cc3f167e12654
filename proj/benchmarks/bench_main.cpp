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

#include <benchmark/benchmark.h>

#include <vector>

#include "asysg/parallel/engines.hpp"
#include "asysg/problems/least_squares.hpp"
#include "asysg/problems/mlp.hpp"
#include "asysg/problems/noisy_quadratic.hpp"
#include "asysg/sim/simulators.hpp"

namespace {

using namespace asysg;

const SyntheticMlp& full_mlp() {
  static const SyntheticMlp mlp([] {
    MlpSpec s;
    s.samples = 4096;
    return s;
  }(), 1);
  return mlp;
}

void BM_QuadraticSampleGradient(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  NoisyQuadratic q(random_quadratic_spec(n, 0.1, 2.0, true, 1.0, 100, 1.0, 1), 1);
  std::vector<double> g(n);
  std::uint64_t xi = 0;
  for (auto _ : state) {
    q.sample_gradient(q.initial_point().span(), xi++ % 100, g);
    benchmark::DoNotOptimize(g.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_QuadraticSampleGradient)->Arg(16)->Arg(128)->Arg(512);

void BM_LeastSquaresSampleGradient(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  LeastSquares ls = LeastSquares::random(n, 1000, 0.1, 1);
  std::vector<double> g(n);
  std::uint64_t xi = 0;
  for (auto _ : state) {
    ls.sample_gradient(ls.initial_point().span(), xi++ % 1000, g);
    benchmark::DoNotOptimize(g.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_LeastSquaresSampleGradient)->Arg(16)->Arg(512);

void BM_MlpSampleGradient(benchmark::State& state) {
  const SyntheticMlp& mlp = full_mlp();
  std::vector<double> g(mlp.dim());
  std::uint64_t xi = 0;
  for (auto _ : state) {
    mlp.sample_gradient(mlp.initial_point().span(), xi++ % mlp.sample_count(), g);
    benchmark::DoNotOptimize(g.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MlpSampleGradient);

// First-layer weights are the expensive case: the whole forward pass is needed.
void BM_MlpSamplePartial(benchmark::State& state) {
  const SyntheticMlp& mlp = full_mlp();
  const auto coord = static_cast<std::size_t>(state.range(0));
  std::uint64_t xi = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mlp.sample_partial(mlp.initial_point().span(), xi++ % mlp.sample_count(), coord));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MlpSamplePartial)->Arg(0)->Arg(46379);

void BM_ConSimIterations(benchmark::State& state) {
  NoisyQuadratic q(random_quadratic_spec(64, 0.1, 2.0, true, 1.0, 1000, 1.0, 1), 1);
  RunConfig c;
  c.mode = Mode::kConSim;
  c.K = 10000;
  c.M = 4;
  c.T = 8;
  c.gamma = GammaRule::constant(0.01);
  c.delay_model = DelayModel::uniform();
  c.checkpoint_every = c.K;
  for (auto _ : state) benchmark::DoNotOptimize(run_sim(q, c).x.data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.K));
}
BENCHMARK(BM_ConSimIterations)->Unit(benchmark::kMillisecond);

void BM_LockFreeMlpThroughput(benchmark::State& state) {
  const SyntheticMlp& mlp = full_mlp();
  RunConfig c;
  c.mode = Mode::kInconThreads;
  c.K = 2000;
  c.M = 32;
  c.T = 1024;
  c.workers = static_cast<std::uint32_t>(state.range(0));
  c.gamma = GammaRule::constant(0.01);
  c.clock = Clock::kWall;
  c.checkpoint_every = c.K;
  c.eval_samples = 16;
  double seconds = 0.0;
  for (auto _ : state) seconds += run_parallel(mlp, c).seconds;
  state.counters["iters_per_s"] =
      static_cast<double>(state.iterations()) * static_cast<double>(c.K) / seconds;
}
BENCHMARK(BM_LockFreeMlpThroughput)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)
    ->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
