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

#include "asysg/problems/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "asysg/core/error.hpp"
#include "asysg/core/random.hpp"
#include "asysg/problems/estimators.hpp"

namespace asysg {
namespace {

// Dot product with four fixed accumulation lanes, combined in a fixed order.
// Deterministic for a given build, and it lets the compiler pipeline the FMAs.
inline double dot_lanes(const double* a, const double* b, std::size_t n) noexcept {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

}  // namespace

struct SyntheticMlp::Workspace {
  std::vector<std::vector<double>> act;    // act[0] = input, act[L] = output
  std::vector<std::vector<double>> delta;  // delta[l] = dLoss/dz_l, l = 1..L
  std::vector<double> back;                // scratch for W^T delta

  void shape(const std::vector<std::size_t>& widths) {
    if (act.size() == widths.size()) {
      bool same = true;
      for (std::size_t l = 0; l < widths.size(); ++l) same = same && act[l].size() == widths[l];
      if (same) return;
    }
    act.assign(widths.size(), {});
    delta.assign(widths.size(), {});
    std::size_t widest = 0;
    for (std::size_t l = 0; l < widths.size(); ++l) {
      act[l].assign(widths[l], 0.0);
      delta[l].assign(widths[l], 0.0);
      widest = std::max(widest, widths[l]);
    }
    back.assign(widest, 0.0);
  }
};

std::size_t mlp_parameter_count(const std::vector<std::size_t>& widths) {
  std::size_t total = 0;
  for (std::size_t l = 1; l < widths.size(); ++l) total += widths[l] * (widths[l - 1] + 1);
  return total;
}

SyntheticMlp::Workspace& SyntheticMlp::workspace_for(const SyntheticMlp& net) {
  thread_local Workspace ws;
  ws.shape(net.spec_.widths);
  return ws;
}

SyntheticMlp::SyntheticMlp(MlpSpec spec, std::uint64_t seed) : spec_(std::move(spec)) {
  const auto& w = spec_.widths;
  if (w.size() < 2) throw ConfigError("problem.widths", "need at least two layers");
  for (std::size_t v : w) {
    if (v == 0) throw ConfigError("problem.widths", "layer widths must be positive");
  }
  if (spec_.samples == 0) throw ConfigError("problem.samples", "must be >= 1");
  if (!(spec_.noise_std >= 0.0)) throw ConfigError("problem.noise", "must be >= 0");

  const std::size_t layers = w.size() - 1;
  w_offset_.assign(layers + 1, 0);
  b_offset_.assign(layers + 1, 0);
  std::size_t off = 0;
  for (std::size_t l = 1; l <= layers; ++l) {
    w_offset_[l] = off;
    off += w[l] * w[l - 1];
    b_offset_[l] = off;
    off += w[l];
  }
  param_count_ = off;

  Stream init = derive_stream(SeedSpec{seed}, 0, Purpose::kInit);
  true_params_ = ParamVector(param_count_);
  for (double& v : true_params_) v = init.normal();
  x1_ = ParamVector(param_count_);
  for (std::size_t l = 1; l <= layers; ++l) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(w[l - 1]));
    for (std::size_t i = 0; i < w[l] * w[l - 1]; ++i) x1_[w_offset_[l] + i] = scale * init.normal();
  }

  const std::size_t d_in = w.front();
  const std::size_t d_out = w.back();
  inputs_.resize(static_cast<std::size_t>(spec_.samples) * d_in);
  targets_.resize(static_cast<std::size_t>(spec_.samples) * d_out);
  Stream data = derive_stream(SeedSpec{seed}, 0, Purpose::kData);
  Stream noise = derive_stream(SeedSpec{seed}, 0, Purpose::kNoise);
  Workspace& ws = workspace_for(*this);
  for (std::uint64_t xi = 0; xi < spec_.samples; ++xi) {
    double* in = &inputs_[static_cast<std::size_t>(xi) * d_in];
    for (std::size_t i = 0; i < d_in; ++i) in[i] = data.normal();
    forward_input(true_params_.span(), {in, d_in}, ws);
    double* out = &targets_[static_cast<std::size_t>(xi) * d_out];
    for (std::size_t i = 0; i < d_out; ++i) out[i] = ws.act[layers][i] + spec_.noise_std * noise.normal();
  }
}

std::span<const double> SyntheticMlp::input(std::uint64_t xi) const {
  const std::size_t d = spec_.widths.front();
  return {&inputs_[static_cast<std::size_t>(xi) * d], d};
}

std::span<const double> SyntheticMlp::target(std::uint64_t xi) const {
  const std::size_t d = spec_.widths.back();
  return {&targets_[static_cast<std::size_t>(xi) * d], d};
}

void SyntheticMlp::forward_input(std::span<const double> x, std::span<const double> in,
                                 Workspace& ws) const {
  const auto& w = spec_.widths;
  const std::size_t layers = w.size() - 1;
  std::copy(in.begin(), in.end(), ws.act[0].begin());
  for (std::size_t l = 1; l <= layers; ++l) {
    const double* W = &x[w_offset_[l]];
    const double* b = &x[b_offset_[l]];
    const double* a = ws.act[l - 1].data();
    double* z = ws.act[l].data();
    const std::size_t cols = w[l - 1];
    for (std::size_t r = 0; r < w[l]; ++r) {
      const double pre = dot_lanes(W + r * cols, a, cols) + b[r];
      z[r] = l == layers ? pre : std::tanh(pre);
    }
  }
}

void SyntheticMlp::forward(std::span<const double> x, std::uint64_t xi, Workspace& ws) const {
  forward_input(x, input(xi), ws);
}

double SyntheticMlp::loss_from_output(std::uint64_t xi, const Workspace& ws) const {
  const auto y = target(xi);
  const auto& out = ws.act.back();
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double e = out[i] - y[i];
    s += e * e;
  }
  return s / static_cast<double>(y.size());
}

void SyntheticMlp::backward(std::span<const double> x, std::uint64_t xi, std::size_t stop_layer,
                            Workspace& ws) const {
  const auto& w = spec_.widths;
  const std::size_t layers = w.size() - 1;
  const auto y = target(xi);
  const double scale = 2.0 / static_cast<double>(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) ws.delta[layers][i] = scale * (ws.act[layers][i] - y[i]);
  for (std::size_t l = layers; l > stop_layer; --l) {
    // delta_{l-1} = (W_l^T delta_l) * tanh'(z_{l-1}); rows accumulated in order.
    const double* W = &x[w_offset_[l]];
    const std::size_t cols = w[l - 1];
    double* acc = ws.back.data();
    std::fill(acc, acc + cols, 0.0);
    for (std::size_t r = 0; r < w[l]; ++r) {
      const double d = ws.delta[l][r];
      const double* row = W + r * cols;
      for (std::size_t c = 0; c < cols; ++c) acc[c] += row[c] * d;
    }
    const auto& a = ws.act[l - 1];
    for (std::size_t c = 0; c < cols; ++c) ws.delta[l - 1][c] = acc[c] * (1.0 - a[c] * a[c]);
  }
}

SyntheticMlp::CoordLocation SyntheticMlp::locate(std::size_t coord) const {
  const auto& w = spec_.widths;
  const std::size_t layers = w.size() - 1;
  for (std::size_t l = 1; l <= layers; ++l) {
    if (coord < b_offset_[l]) {
      const std::size_t k = coord - w_offset_[l];
      return {l, false, k / w[l - 1], k % w[l - 1]};
    }
    if (coord < b_offset_[l] + w[l]) return {l, true, coord - b_offset_[l], 0};
  }
  throw DimensionError("mlp: coordinate " + std::to_string(coord) + " out of range");
}

double SyntheticMlp::sample_loss(std::span<const double> x, std::uint64_t xi) const {
  Workspace& ws = workspace_for(*this);
  forward(x, xi, ws);
  return loss_from_output(xi, ws);
}

void SyntheticMlp::sample_gradient(std::span<const double> x, std::uint64_t xi,
                                   std::span<double> out) const {
  const auto& w = spec_.widths;
  const std::size_t layers = w.size() - 1;
  Workspace& ws = workspace_for(*this);
  forward(x, xi, ws);
  backward(x, xi, 1, ws);
  for (std::size_t l = 1; l <= layers; ++l) {
    const std::size_t cols = w[l - 1];
    const double* a = ws.act[l - 1].data();
    for (std::size_t r = 0; r < w[l]; ++r) {
      const double d = ws.delta[l][r];
      double* g = &out[w_offset_[l] + r * cols];
      for (std::size_t c = 0; c < cols; ++c) g[c] = d * a[c];
      out[b_offset_[l] + r] = d;
    }
  }
}

double SyntheticMlp::sample_partial(std::span<const double> x, std::uint64_t xi,
                                    std::size_t coord) const {
  const CoordLocation loc = locate(coord);
  Workspace& ws = workspace_for(*this);
  forward(x, xi, ws);
  backward(x, xi, loc.layer, ws);
  const double d = ws.delta[loc.layer][loc.row];
  return loc.bias ? d : d * ws.act[loc.layer - 1][loc.col];
}

double SyntheticMlp::objective_prefix(std::span<const double> x, std::uint64_t count) const {
  if (count == 0 || count > sample_count()) {
    throw DimensionError("objective_prefix: sample count out of range");
  }
  Workspace& ws = workspace_for(*this);
  double s = 0.0;
  for (std::uint64_t xi = 0; xi < count; ++xi) {
    forward(x, xi, ws);
    s += loss_from_output(xi, ws);
  }
  return s / static_cast<double>(count);
}

void SyntheticMlp::gradient_prefix(std::span<const double> x, std::uint64_t count,
                                   std::span<double> out) const {
  if (count == 0 || count > sample_count()) {
    throw DimensionError("gradient_prefix: sample count out of range");
  }
  const auto& w = spec_.widths;
  const std::size_t layers = w.size() - 1;
  std::fill(out.begin(), out.end(), 0.0);
  Workspace& ws = workspace_for(*this);
  // Same per-entry arithmetic as summing sample_gradient vectors in order.
  for (std::uint64_t xi = 0; xi < count; ++xi) {
    forward(x, xi, ws);
    backward(x, xi, 1, ws);
    for (std::size_t l = 1; l <= layers; ++l) {
      const std::size_t cols = w[l - 1];
      const double* a = ws.act[l - 1].data();
      for (std::size_t r = 0; r < w[l]; ++r) {
        const double d = ws.delta[l][r];
        double* g = &out[w_offset_[l] + r * cols];
        for (std::size_t c = 0; c < cols; ++c) g[c] += d * a[c];
        out[b_offset_[l] + r] += d;
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(count);
  for (double& v : out) v *= inv;
}

ProblemConstants SyntheticMlp::constants(std::uint64_t T) const {
  ProblemConstants c;
  c.T = T;
  c.estimated = true;
  const std::uint64_t eval = std::min<std::uint64_t>(sample_count(), 256);
  const EstimatedSmoothness est = estimate_smoothness(*this, x1_, 4, 1e-3, 0x5eed, eval);
  c.L = est.L;
  c.L_max = est.L_max;
  c.L_T = est.L;
  c.sigma_sq = estimate_sigma_sq(*this, x1_, std::min<std::uint64_t>(sample_count(), 1024));
  c.gap = objective(x1_.span());
  return c;
}

}  // namespace asysg
