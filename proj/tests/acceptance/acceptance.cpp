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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Criteria can be selected by number on the
// command line, e.g. `asysg_acceptance 3 4`.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "asysg/config/config_file.hpp"
#include "asysg/core/random.hpp"
#include "asysg/harness/bound_report.hpp"
#include "asysg/harness/metrics.hpp"
#include "asysg/parallel/engines.hpp"
#include "asysg/parallel/shared_params.hpp"
#include "asysg/problems/least_squares.hpp"
#include "asysg/problems/noisy_quadratic.hpp"
#include "asysg/sim/common.hpp"
#include "asysg/sim/simulators.hpp"
#include "asysg/theory/smoothness.hpp"
#include "asysg/theory/steplength.hpp"
#include "asysg/theory/theory_report.hpp"
#include "oracles/oracles.hpp"

using namespace asysg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

RunConfig sim_config(Mode mode, std::uint64_t K, std::uint32_t M, double gamma, std::uint64_t T) {
  RunConfig c;
  c.mode = mode;
  c.K = K;
  c.M = M;
  c.T = T;
  c.gamma = GammaRule::constant(gamma);
  return c;
}

// Shared by criteria 3 to 5: n = 20, spectrum on [0.1, 1], sigma^2 = 1.
NoisyQuadratic bound_quadratic() {
  return NoisyQuadratic(random_quadratic_spec(20, 0.1, 1.0, true, 1.0, 1000, 10.0, 2024), 2024);
}
constexpr std::uint32_t kBoundM = 4;

// ---- 1 ----------------------------------------------------------------------

Outcome degeneracy() {
  Stream s(1);
  int same = 0;
  const int total = 20;
  for (int t = 0; t < total; ++t) {
    const std::uint64_t seed = s();
    const std::size_t n = 2 + s.uniform_index(15);
    std::unique_ptr<Problem> p;
    if (t % 2 == 0) {
      p = std::make_unique<NoisyQuadratic>(
          random_quadratic_spec(n, 0.1, 2.0, true, 1.0, 40, 1.0, seed), seed);
    } else {
      p = std::make_unique<LeastSquares>(LeastSquares::random(n, 60, 0.3, seed));
    }
    RunConfig serial = sim_config(Mode::kSerial, 1 + s.uniform_index(10000),
                                  1 + static_cast<std::uint32_t>(s.uniform_index(8)),
                                  0.002 + 0.01 * s.uniform01(), 0);
    serial.seeds.master_seed = s();
    serial.checkpoint_every = 1 + s.uniform_index(500);
    RunConfig con = serial;
    con.mode = Mode::kConSim;
    con.T = s.uniform_index(8);
    const SimResult a = run_serial_sg(*p, serial);
    const SimResult b = run_asysg_con_sim(*p, con, DelayModel::fixed(0));
    same += a.trace.rows == b.trace.rows && a.x.values() == b.x.values();
  }
  return {same == total, fmt("%d/%d configs bit-identical", same, total)};
}

// ---- 2 ----------------------------------------------------------------------

Outcome reconstruction() {
  Stream s(2);
  double worst = 0.0;
  int prefix = 0, subset = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + s.uniform_index(10);
    const std::uint64_t T = s.uniform_index(6);
    const std::uint64_t K = 1 + s.uniform_index(200);
    const auto M = 1 + static_cast<std::uint32_t>(s.uniform_index(4));
    const std::uint64_t pseed = s();
    NoisyQuadratic q(random_quadratic_spec(n, 0.2, 2.0, true, 1.0, 16, 1.0, pseed), pseed);
    RunConfig c = sim_config(Mode::kInconSim, K, M, 0.3 / M, T);
    c.seeds.master_seed = s();
    if (t % 2 == 0) {
      c.read_model = ReadModel::prefix(s.uniform_index(T + 1));
      ++prefix;
    } else {
      c.read_model = ReadModel::random_subset(s.uniform01());
      ++subset;
    }

    std::map<std::pair<std::uint64_t, std::uint32_t>, std::vector<std::uint64_t>> reads;
    std::map<std::pair<std::uint64_t, std::uint32_t>, std::uint64_t> samples;
    std::map<std::uint64_t, std::size_t> coords;
    std::vector<ParamVector> xs{q.initial_point()}, hats;
    SimHooks h;
    h.on_read = [&](std::uint64_t k, std::uint32_t m, std::span<const std::uint64_t> J,
                    std::span<const double> xh) {
      reads[{k, m}].assign(J.begin(), J.end());
      hats.emplace_back(std::vector<double>(xh.begin(), xh.end()));
    };
    h.on_iterate = [&](std::uint64_t, const ParamVector& x) { xs.push_back(x); };
    Stream pick(s());
    h.force_sample = [&](std::uint64_t k, std::uint32_t m) -> std::optional<std::uint64_t> {
      return samples[{k, m}] = pick.uniform_index(q.sample_count());
    };
    h.force_coordinate = [&](std::uint64_t k) -> std::optional<std::size_t> {
      return coords[k] = static_cast<std::size_t>(pick.uniform_index(n));
    };
    run_sim(q, c, h);

    std::vector<ParamVector> want_hats;
    const auto want = oracle::incon_rollout(
        q, c.gamma.value, K, M, [&](std::uint64_t k, std::uint32_t m) { return reads.at({k, m}); },
        [&](std::uint64_t k, std::uint32_t m) { return samples.at({k, m}); },
        [&](std::uint64_t k) { return coords.at(k); }, &want_hats);
    if (want.size() != xs.size() || want_hats.size() != hats.size()) {
      return {false, fmt("instance %d: length mismatch", t)};
    }
    auto cmp = [&](const std::vector<ParamVector>& a, const std::vector<ParamVector>& b) {
      for (std::size_t k = 0; k < a.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
          worst = std::max(worst, std::abs(a[k][i] - b[k][i]) / std::max(1.0, std::abs(b[k][i])));
    };
    cmp(xs, want);
    cmp(hats, want_hats);
  }
  return {worst <= 1e-12, fmt("50 instances (%d prefix, %d random-subset), max deviation %.3g "
                              "(tol 1e-12)",
                              prefix, subset, worst)};
}

// ---- 3 ----------------------------------------------------------------------

std::optional<double> comparison(const BoundReport& r, const std::string& bound,
                                 const std::string& stat) {
  for (const auto& c : r.comparisons)
    if (c.bound == bound && c.statistic == stat) return c.empirical / c.bound_value;
  return std::nullopt;
}

std::vector<Trace> seeded_runs(const Problem& p, RunConfig c, int seeds) {
  std::vector<Trace> out;
  for (int r = 0; r < seeds; ++r) {
    c.seeds.master_seed = 7000 + static_cast<std::uint64_t>(r);
    out.push_back(run_sim(p, c).trace);
  }
  return out;
}

Outcome consistent_bound() {
  const NoisyQuadratic q = bound_quadratic();
  bool ok = true;
  std::string detail;
  for (std::uint64_t T : {0u, 2u, 8u}) {
    const ProblemConstants pc = q.constants(T);
    TheoryInputs in;
    in.constants = pc;
    in.n = 20;
    in.M = kBoundM;
    in.T = T;
    in.K = static_cast<double>(k_threshold_corollary2(pc.gap, kBoundM, pc.L, pc.sigma_sq, T));
    const TheoryReport th = make_theory_report(in, TheoryFamily::kCon);
    RunConfig c = sim_config(Mode::kConSim, static_cast<std::uint64_t>(in.K), kBoundM,
                             th.gamma, T);
    c.delay_model = DelayModel::fixed(T);
    const BoundReport r = bound_report(seeded_runs(q, c, 30), th);
    const auto min11 = comparison(r, "bound_eq11", "min");
    const auto erg8 = comparison(r, "bound_eq8", "ergodic");
    const bool pass = min11 && erg8 && *min11 <= kBoundTolerance && *erg8 <= kBoundTolerance;
    ok = ok && pass;
    detail += fmt("T=%llu K=%llu min/eq11=%.3f ergodic/eq8=%.3f; ",
                  static_cast<unsigned long long>(T), static_cast<unsigned long long>(c.K),
                  min11.value_or(NAN), erg8.value_or(NAN));
  }
  return {ok, detail + "ratios must be <= 1.25"};
}

// ---- 4 ----------------------------------------------------------------------

Outcome inconsistent_bound() {
  const NoisyQuadratic q = bound_quadratic();
  bool ok = true;
  std::string detail;
  for (std::uint64_t T : {0u, 2u}) {
    const ProblemConstants pc = q.constants(T);
    TheoryInputs in;
    in.constants = pc;
    in.n = 20;
    in.M = kBoundM;
    in.T = T;
    in.K = static_cast<double>(
        k_threshold_corollary4(pc.gap, pc.L_T, kBoundM, in.n, T, pc.sigma_sq));
    const TheoryReport th = make_theory_report(in, TheoryFamily::kIncon);
    RunConfig c = sim_config(Mode::kInconSim, static_cast<std::uint64_t>(in.K), kBoundM,
                             th.gamma, T);
    c.read_model = ReadModel::prefix(T);
    const BoundReport r = bound_report(seeded_runs(q, c, 30), th);
    const auto erg = comparison(r, "max(bound_eq16,bound_eq42)", "ergodic");
    const auto min19 = comparison(r, "bound_eq19", "min");
    const bool pass = erg && min19 && *erg <= kBoundTolerance && *min19 <= kBoundTolerance;
    ok = ok && pass;
    detail += fmt("T=%llu K=%llu ergodic/max(eq16,eq42)=%.3f min/eq19=%.3f; ",
                  static_cast<unsigned long long>(T), static_cast<unsigned long long>(c.K),
                  erg.value_or(NAN), min19.value_or(NAN));
  }
  return {ok, detail + "ratios must be <= 1.25"};
}

// ---- 5 ----------------------------------------------------------------------

Outcome linear_speedup() {
  const NoisyQuadratic q = bound_quadratic();
  const ProblemConstants pc = q.constants(16);
  const std::uint64_t K = k_threshold_corollary2(pc.gap, kBoundM, pc.L, pc.sigma_sq, 16);
  const double gamma = steplength_corollary2(pc.gap, kBoundM, pc.L, static_cast<double>(K),
                                             pc.sigma_sq);
  const double eps = 2.0 * bound_con(pc.gap, kBoundM, pc.L, static_cast<double>(K), pc.sigma_sq,
                                     16, 0.0, ConBound::kCorollary2);
  std::map<std::uint64_t, double> med;
  for (std::uint64_t T : {0u, 4u, 16u}) {
    RunConfig c = sim_config(Mode::kConSim, K, kBoundM, gamma, T);
    c.delay_model = DelayModel::fixed(T);
    std::vector<double> iters;
    for (const Trace& t : seeded_runs(q, c, 10)) {
      const auto k = iterations_to_target(t, eps);
      if (!k) return {false, fmt("T=%llu: a seed never reached eps=%.4g within K=%llu",
                                 static_cast<unsigned long long>(T), eps,
                                 static_cast<unsigned long long>(K))};
      iters.push_back(static_cast<double>(*k));
    }
    med[T] = median(iters);
  }
  if (med[0] <= 0.0) return {false, "target already met at x_1"};
  const double r4 = med[4] / med[0], r16 = med[16] / med[0];
  const bool pass = r4 <= 2.0 && r4 >= 0.5 && r16 <= 2.0 && r16 >= 0.5;
  return {pass, fmt("K=%llu eps=%.4g median iterations T=0:%.0f T=4:%.0f T=16:%.0f "
                    "(ratios %.3f, %.3f; must be within [0.5, 2])",
                    static_cast<unsigned long long>(K), eps, med[0], med[4], med[16], r4, r16)};
}

// ---- 6 ----------------------------------------------------------------------

double log_uniform(Stream& s, double lo, double hi) {
  return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * s.uniform01());
}

Outcome corollary_consistency() {
  Stream s(6);
  int bad2 = 0, bad4 = 0;
  for (int t = 0; t < 1000; ++t) {
    const double gap = log_uniform(s, 1e-3, 1e3), L = log_uniform(s, 1e-2, 1e2);
    const double L_max = L * s.uniform01(), sigma_sq = log_uniform(s, 1e-3, 1e3);
    const double M = static_cast<double>(1 + s.uniform_index(128));
    const std::uint64_t T = s.uniform_index(65);
    const double n = static_cast<double>(1 + s.uniform_index(100000));

    const auto K2 = k_threshold_corollary2(gap, M, L, sigma_sq, T);
    const double g2 = steplength_corollary2(gap, M, L, static_cast<double>(K2), sigma_sq);
    bad2 += !check_condition_thm1(g2, L, M, T);

    const auto K4 = k_threshold_corollary4(gap, L, M, n, T, sigma_sq);
    const double g4 =
        steplength_corollary4(gap, n, static_cast<double>(K4), L, M, std::sqrt(sigma_sq));
    bad4 += !check_condition_thm3(g4, M, T, L, L_max, n);
  }
  return {bad2 == 0 && bad4 == 0,
          fmt("1000 tuples, counterexamples: con %d, incon %d", bad2, bad4)};
}

// ---- 7 ----------------------------------------------------------------------

Outcome smoothness_oracle() {
  Stream s(7);
  double worst = 0.0;
  int order = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + s.uniform_index(8);
    DenseMatrix q(n, n);
    oracle::Matrix rows(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) q(i, j) = q(j, i) = rows[i][j] = rows[j][i] = s.normal();
    const SmoothnessConstants got = constants_quadratic(q);
    const oracle::Smoothness want = oracle::brute_force_smoothness(rows);
    auto dev = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    worst = std::max({worst, dev(got.L, want.L), dev(got.L_max, want.L_max)});
    for (std::size_t k = 1; k <= n; ++k) {
      worst = std::max(worst, dev(got.at(k), want.L_s[k - 1]));
      order += !(got.L_max <= got.at(k) + 1e-12 && got.at(k) <= got.L + 1e-12);
    }
  }
  return {worst <= 1e-10 && order == 0,
          fmt("100 matrices, max deviation %.3g (tol 1e-10), ordering violations %d", worst,
              order)};
}

// ---- 8 ----------------------------------------------------------------------

Outcome sparse_unbiased() {
  Stream s(8);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + s.uniform_index(50);
    std::vector<double> g(n, 0.0);
    const double density = s.uniform01();
    for (double& v : g)
      if (s.bernoulli(density)) v = s.normal() * std::exp(3 * s.normal());
    if (sparse_support(g).empty()) g[s.uniform_index(n)] = 1.0;
    const double gamma = log_uniform(s, 1e-4, 1.0);
    const std::size_t support = sparse_support(g).size();
    std::vector<double> avg(n, 0.0);
    for (std::size_t c = 0; c < support; ++c) {
      const SparseStep st = sparse_update(g, gamma, c);
      avg[st.coord] += st.decrement / static_cast<double>(support);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double want = gamma * g[i];
      worst = std::max(worst, std::abs(avg[i] - want) / std::max(1.0, std::abs(want)));
    }
  }
  return {worst <= 1e-12, fmt("100 gradients, max deviation %.3g (tol 1e-12)", worst)};
}

// ---- 9 ----------------------------------------------------------------------

Outcome lockfree_stress() {
  NoisyQuadratic q(random_quadratic_spec(16, 0.3, 2.0, true, 1.0, 64, 1.0, 9), 9);
  std::string detail;
  bool ok = true;
  for (std::uint32_t w : {4u, 8u}) {
    RunConfig c = sim_config(Mode::kInconThreads, 100000, 2, 0.01, 64);
    c.workers = w;
    c.clock = Clock::kWall;
    c.checkpoint_every = 10000;
    const ParallelResult r = run_lockfree_shared(q, c);
    std::uint64_t writes = 0;
    for (auto v : r.per_worker_work) writes += v;
    const bool pass = r.applied == c.K && writes == c.K && r.delays.total() == c.K;
    ok = ok && pass;
    detail += fmt("workers=%u writes=%llu/%llu; ", w, static_cast<unsigned long long>(writes),
                  static_cast<unsigned long long>(c.K));
  }

  SharedParams x(std::vector<double>(1, 0.0));
  const unsigned threads = 4;
  const int per = 300000;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = 0; i < per; ++i) x.add(0, 1.0);
    });
  for (auto& th : pool) th.join();
  const double want = static_cast<double>(threads) * per;
  ok = ok && x.load(0) == want;
  detail += fmt("hammer %.0f/%.0f increments", x.load(0), want);
  return {ok, detail};
}

// ---- 10 ---------------------------------------------------------------------

// First checkpoint whose objective is at or below `target`.
std::optional<std::uint64_t> iterations_to_objective(const std::vector<std::uint64_t>& ks,
                                                     const std::vector<double>& f, double target) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] <= target) return ks[i];
  return std::nullopt;
}

Outcome mlp_reproduction() {
  const nlohmann::json doc = nlohmann::json::parse(R"({
    "problem": {"type": "mlp", "widths": [400, 100, 50, 20, 10], "samples": 46380,
                "noise": 1.0, "seed": 5},
    "algorithm": {"mode": "incon-threads", "K": 15000, "M": 32, "T": 64, "workers": 1,
                  "gamma": 0.05, "eval_samples": 2000},
    "output": {"checkpoint_every": 1500}
  })");
  const ConfigFile cf = parse_config(doc);
  const auto p = make_problem(cf.problem);
  const int seeds = 10;

  std::vector<std::uint64_t> ks;
  std::map<std::uint32_t, std::vector<double>> med_f;
  std::map<std::uint32_t, double> secs;
  std::string detail = fmt("n=%zu N=%llu; ", p->dim(),
                           static_cast<unsigned long long>(p->sample_count()));
  bool monotone = true;
  for (std::uint32_t w : {1u, 2u, 4u}) {
    std::vector<std::vector<double>> fs;
    std::vector<double> run_secs;
    for (int r = 0; r < seeds; ++r) {
      RunConfig c = cf.run;
      c.workers = w;
      c.seeds.master_seed = 100 + static_cast<std::uint64_t>(r);
      const ParallelResult res = run_lockfree_shared(*p, c);
      std::vector<double> f;
      std::vector<std::uint64_t> k;
      for (const TraceRow& row : res.trace.rows) {
        f.push_back(row.f);
        k.push_back(row.k);
      }
      if (ks.empty()) ks = k;
      if (k != ks) return {false, "checkpoint grids differ between runs"};
      fs.push_back(std::move(f));
      run_secs.push_back(res.seconds);
    }
    std::vector<double> m(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
      std::vector<double> col;
      for (const auto& f : fs) col.push_back(f[i]);
      m[i] = median(col);
    }
    bool mono = true;
    for (std::size_t i = 1; i < m.size(); ++i) mono = mono && m[i] < m[i - 1];
    monotone = monotone && mono;
    med_f[w] = m;
    secs[w] = median(run_secs);
    detail += fmt("workers=%u median f %.4f -> %.4f %s, %.1f s/run; ", w, m.front(), m.back(),
                  mono ? "monotone" : "NOT monotone", secs[w]);
  }

  // Target: the one-worker median objective halfway through the run.
  const std::size_t half = ks.size() / 2;
  const double target = med_f[1][half];
  const auto it1 = iterations_to_objective(ks, med_f[1], target);
  const auto it4 = iterations_to_objective(ks, med_f[4], target);
  double speedup = 0.0;
  if (it1 && it4 && *it4 > 0) speedup = iteration_speedup(*it1, *it4, 4);
  detail += fmt("target f=%.4f: iterations 1w=%s 4w=%s, iteration speedup %.2f (need >= 2.4)",
                target, it1 ? std::to_string(*it1).c_str() : "none",
                it4 ? std::to_string(*it4).c_str() : "none", speedup);
  const unsigned cores = std::thread::hardware_concurrency();
  detail += fmt(", time speedup %.2f on %u core(s)", secs[1] / secs[4], cores);
  if (cores < 4) detail += " [host below the 4 cores this criterion assumes]";
  return {monotone && speedup >= 2.4, detail};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "degeneracy equivalence", degeneracy},
      {2, "inconsistent-read reconstruction", reconstruction},
      {3, "consistent-read bound respected", consistent_bound},
      {4, "inconsistent-read bound respected", inconsistent_bound},
      {5, "linear speedup in iterations", linear_speedup},
      {6, "corollary consistency", corollary_consistency},
      {7, "smoothness-constant oracle", smoothness_oracle},
      {8, "sparse-rule unbiasedness", sparse_unbiased},
      {9, "lock-free stress", lockfree_stress},
      {10, "MLP desk-scale reproduction", mlp_reproduction},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const Criterion& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const Stopwatch sw;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), sw.seconds());
    std::fflush(stdout);
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
