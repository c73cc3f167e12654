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

#include "asysg/sim/simulators.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "asysg/core/error.hpp"
#include "asysg/core/history_ring.hpp"
#include "asysg/core/random.hpp"
#include "asysg/sim/common.hpp"

namespace asysg {
namespace {

void require_mode(const RunConfig& cfg, Mode want) {
  validate(cfg);
  if (cfg.mode != want) {
    throw ConfigError("algorithm.mode", "expected " + std::string(to_string(want)) + ", got " +
                                            std::string(to_string(cfg.mode)));
  }
}

void require_dim(const Problem& p) {
  if (p.initial_point().size() != p.dim()) {
    throw DimensionError("initial point has the wrong dimension");
  }
}

// Checkpoint bookkeeping. Under the wall clock, time spent evaluating
// checkpoints is excluded from t.
class Recorder {
 public:
  Recorder(const Problem& p, const RunConfig& cfg, double gamma)
      : p_(p), cfg_(cfg), gamma_(gamma), trace_(start_trace(p, cfg)) {
    trace_.rows.reserve(static_cast<std::size_t>(checkpoint_count(cfg.K, cfg.checkpoint_every)));
  }

  void maybe(std::uint64_t k, const ParamVector& x, std::uint64_t max_delay) {
    if (!is_checkpoint(k, cfg_.K, cfg_.checkpoint_every)) return;
    const double now = clock_.seconds();
    const PointEval e = evaluate_point(p_, x.span(), cfg_.eval_samples);
    TraceRow row;
    row.k = k;
    row.t = cfg_.clock == Clock::kLogical ? static_cast<double>(k) : now - paused_;
    row.f = e.f;
    row.gradsq = e.gradsq;
    row.gamma = gamma_;
    row.max_delay_observed = max_delay;
    trace_.rows.push_back(row);
    paused_ += clock_.seconds() - now;
  }

  Trace take() { return std::move(trace_); }

 private:
  const Problem& p_;
  const RunConfig& cfg_;
  double gamma_;
  Trace trace_;
  Stopwatch clock_;
  double paused_ = 0.0;
};

class SampleDraw {
 public:
  SampleDraw(const Problem& p, const RunConfig& cfg, const SimHooks& hooks)
      : n_samples_(p.sample_count()),
        stream_(derive_stream(cfg.seeds, 0, Purpose::kSample)),
        hooks_(hooks) {}

  std::uint64_t operator()(std::uint64_t k, std::uint32_t m) {
    if (hooks_.force_sample) {
      if (auto forced = hooks_.force_sample(k, m)) {
        if (*forced >= n_samples_) throw DimensionError("forced sample index out of range");
        return *forced;
      }
    }
    return stream_.uniform_index(n_samples_);
  }

 private:
  std::uint64_t n_samples_;
  Stream stream_;
  const SimHooks& hooks_;
};

std::uint64_t draw_delay(const DelayModel& dm, std::uint64_t T, std::uint64_t k, std::uint32_t m,
                         Stream& s) {
  switch (dm.kind) {
    case DelayModel::Kind::kFixed: return dm.tau;
    case DelayModel::Kind::kUniform: return s.uniform_index(T + 1);
    case DelayModel::Kind::kCyclic: return (k + m) % (T + 1);
  }
  return 0;
}

// J(k,m), newest index first.
void draw_read_set(const ReadModel& rm, std::uint64_t T, std::uint64_t k, Stream& s,
                   std::vector<std::uint64_t>& J) {
  J.clear();
  switch (rm.kind) {
    case ReadModel::Kind::kPrefix: {
      if (rm.tau > T) {
        throw DelayBoundError("read model prefix(" + std::to_string(rm.tau) + ") exceeds T = " +
                              std::to_string(T));
      }
      const std::uint64_t depth = std::min(rm.tau, k);
      for (std::uint64_t d = 1; d <= depth; ++d) J.push_back(k - d);
      break;
    }
    case ReadModel::Kind::kRandomSubset: {
      const std::uint64_t oldest = k > T ? k - T : 0;
      for (std::uint64_t j = k; j > oldest; --j) {
        if (s.bernoulli(rm.p)) J.push_back(j - 1);
      }
      break;
    }
  }
}

// Shared by the serial and consistent-read paths so that tau = 0 reproduces
// the serial run bit for bit.
SimResult run_con_like(const Problem& p, const RunConfig& cfg, const DelayModel* dm,
                       const SimHooks& hooks) {
  require_dim(p);
  const std::size_t n = p.dim();
  SimResult res;
  res.gamma = resolve_gamma(cfg, p);
  res.x = p.initial_point();
  ParamVector& x = res.x;

  Recorder rec(p, cfg, res.gamma);
  SampleDraw sample(p, cfg, hooks);
  Stream delay = derive_stream(cfg.seeds, 0, Purpose::kDelay);
  HistoryRing<ParamVector> ring(dm ? cfg.T : 0);
  std::vector<double> acc(n), g(n);

  rec.maybe(0, x, 0);
  for (std::uint64_t k = 0; k < cfg.K; ++k) {
    if (dm) ring.push(x);
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::uint32_t m = 0; m < cfg.M; ++m) {
      const ParamVector* read = &x;
      if (dm) {
        const std::uint64_t tau = draw_delay(*dm, cfg.T, k, m, delay);
        if (tau > cfg.T) {
          throw DelayBoundError("delay " + std::to_string(tau) + " exceeds T = " +
                                std::to_string(cfg.T) + " at k = " + std::to_string(k));
        }
        const std::uint64_t eff = std::min(tau, k);
        res.max_delay = std::max(res.max_delay, eff);
        if (hooks.on_delay) hooks.on_delay(k, m, eff);
        read = &ring.get(k - eff, k);
      }
      p.sample_gradient(read->span(), sample(k, m), g);
      for (std::size_t i = 0; i < n; ++i) acc[i] += g[i];
    }
    for (std::size_t i = 0; i < n; ++i) x[i] += -(res.gamma * acc[i]);
    if (hooks.on_iterate) hooks.on_iterate(k + 1, x);
    rec.maybe(k + 1, x, res.max_delay);
  }
  res.trace = rec.take();
  return res;
}

// Applies J(k,m) to x_hat in place and restores it exactly afterwards.
class Reconstruction {
 public:
  Reconstruction(std::vector<double>& x_hat, const HistoryRing<CoordinateDelta>& ring)
      : x_hat_(x_hat), ring_(ring) {}

  void apply(std::span<const std::uint64_t> J, std::uint64_t k) {
    saved_.clear();
    for (std::uint64_t j : J) {
      const CoordinateDelta& d = ring_.get(j, k);
      saved_.emplace_back(d.coord, x_hat_[d.coord]);
      x_hat_[d.coord] -= d.delta;
    }
  }

  void restore() {
    for (auto it = saved_.rbegin(); it != saved_.rend(); ++it) x_hat_[it->first] = it->second;
    saved_.clear();
  }

 private:
  std::vector<double>& x_hat_;
  const HistoryRing<CoordinateDelta>& ring_;
  std::vector<std::pair<std::size_t, double>> saved_;
};

std::uint64_t read_age(std::span<const std::uint64_t> J, std::uint64_t k, std::uint64_t T) {
  if (J.empty()) return 0;
  const std::uint64_t oldest = *std::min_element(J.begin(), J.end());
  const std::uint64_t age = k - oldest;
  if (oldest >= k || age > T) {
    throw DelayBoundError("read set reaches index " + std::to_string(oldest) + " at k = " +
                          std::to_string(k) + " with T = " + std::to_string(T));
  }
  return age;
}

SimResult run_incon_like(const Problem& p, const RunConfig& cfg, const ReadModel& rm,
                         bool sparse, const SimHooks& hooks) {
  require_dim(p);
  const std::size_t n = p.dim();
  SimResult res;
  res.gamma = resolve_gamma(cfg, p);
  res.x = p.initial_point();
  ParamVector& x = res.x;

  Recorder rec(p, cfg, res.gamma);
  SampleDraw sample(p, cfg, hooks);
  Stream coord_stream = derive_stream(cfg.seeds, 0, Purpose::kCoordinate);
  Stream read_stream = derive_stream(cfg.seeds, 0, Purpose::kDelay);
  HistoryRing<CoordinateDelta> ring(cfg.T);
  std::vector<double> x_hat(x.begin(), x.end());
  Reconstruction recon(x_hat, ring);
  std::vector<std::uint64_t> J;
  std::vector<double> acc, g;
  if (sparse) {
    acc.resize(n);
    g.resize(n);
  }

  auto forced_coord = [&](std::uint64_t k) -> std::optional<std::size_t> {
    if (!hooks.force_coordinate) return std::nullopt;
    auto c = hooks.force_coordinate(k);
    if (c && *c >= n) throw DimensionError("forced coordinate out of range");
    return c;
  };

  rec.maybe(0, x, 0);
  for (std::uint64_t k = 0; k < cfg.K; ++k) {
    std::size_t coord = 0;
    if (!sparse) {
      const auto forced = forced_coord(k);
      coord = forced ? *forced : static_cast<std::size_t>(coord_stream.uniform_index(n));
    }
    double s = 0.0;
    if (sparse) std::fill(acc.begin(), acc.end(), 0.0);

    for (std::uint32_t m = 0; m < cfg.M; ++m) {
      draw_read_set(rm, cfg.T, k, read_stream, J);
      res.max_delay = std::max(res.max_delay, read_age(J, k, cfg.T));
      recon.apply(J, k);
      if (hooks.on_read) hooks.on_read(k, m, J, x_hat);
      const std::uint64_t xi = sample(k, m);
      if (sparse) {
        p.sample_gradient(x_hat, xi, g);
        for (std::size_t i = 0; i < n; ++i) acc[i] += g[i];
      } else {
        s += p.sample_partial(x_hat, xi, coord);
      }
      recon.restore();
    }

    double step = 0.0;
    bool skip = false;
    if (sparse) {
      const std::vector<std::size_t> support = sparse_support(acc);
      if (support.empty()) {
        skip = true;
      } else {
        std::size_t choice = 0;
        if (const auto forced = forced_coord(k)) {
          const auto it = std::lower_bound(support.begin(), support.end(), *forced);
          if (it == support.end() || *it != *forced) {
            throw std::invalid_argument("forced coordinate is outside supp(g_k)");
          }
          choice = static_cast<std::size_t>(it - support.begin());
        } else {
          choice = static_cast<std::size_t>(coord_stream.uniform_index(support.size()));
        }
        const SparseStep st = sparse_update(acc, res.gamma, choice);
        coord = st.coord;
        step = st.decrement;
      }
    } else {
      step = res.gamma * s;
    }

    if (skip) {
      ++res.skipped;
      ring.push(CoordinateDelta{0, 0.0});
    } else {
      const double old = x[coord];
      x[coord] += -step;
      x_hat[coord] = x[coord];
      ring.push(CoordinateDelta{coord, x[coord] - old});
    }
    if (hooks.on_iterate) hooks.on_iterate(k + 1, x);
    rec.maybe(k + 1, x, res.max_delay);
  }
  res.trace = rec.take();
  if (res.skipped > 0) {
    res.trace.notes.push_back("skipped " + std::to_string(res.skipped) +
                              " iterations with a zero minibatch gradient");
  }
  return res;
}

}  // namespace

SimResult run_serial_sg(const Problem& p, const RunConfig& cfg, const SimHooks& hooks) {
  require_mode(cfg, Mode::kSerial);
  return run_con_like(p, cfg, nullptr, hooks);
}

SimResult run_asysg_con_sim(const Problem& p, const RunConfig& cfg, const DelayModel& dm,
                            const SimHooks& hooks) {
  require_mode(cfg, Mode::kConSim);
  return run_con_like(p, cfg, &dm, hooks);
}

SimResult run_asysg_incon_sim(const Problem& p, const RunConfig& cfg, const ReadModel& rm,
                              const SimHooks& hooks) {
  require_mode(cfg, Mode::kInconSim);
  return run_incon_like(p, cfg, rm, false, hooks);
}

SimResult run_asysg_incon_sparse_sim(const Problem& p, const RunConfig& cfg, const ReadModel& rm,
                                     const SimHooks& hooks) {
  require_mode(cfg, Mode::kInconSparseSim);
  return run_incon_like(p, cfg, rm, true, hooks);
}

SimResult run_sim(const Problem& p, const RunConfig& cfg, const SimHooks& hooks) {
  switch (cfg.mode) {
    case Mode::kSerial: return run_serial_sg(p, cfg, hooks);
    case Mode::kConSim: return run_asysg_con_sim(p, cfg, cfg.delay_model, hooks);
    case Mode::kInconSim: return run_asysg_incon_sim(p, cfg, cfg.read_model, hooks);
    case Mode::kInconSparseSim:
      return run_asysg_incon_sparse_sim(p, cfg, cfg.read_model, hooks);
    default:
      throw ConfigError("algorithm.mode",
                        std::string(to_string(cfg.mode)) + " is not a simulator mode");
  }
}

}  // namespace asysg
