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
#include <vector>

#include "asysg/problems/problem.hpp"

namespace asysg {

// Fully connected regression network. Every non-input layer owns a weight
// matrix and a bias vector; hidden layers use tanh, the output is linear and
// the per-sample loss is the mean squared error over output units.
//
// Parameter layout, layer by layer: W_l (widths[l] x widths[l-1], row-major)
// followed by b_l (widths[l]). For 400x100x50x20x10 that is
// 46200 weights + 180 biases = 46380 parameters.
struct MlpSpec {
  std::vector<std::size_t> widths{400, 100, 50, 20, 10};
  std::uint64_t samples = 46380;
  double noise_std = 1.0;  // std of the Gaussian noise added to targets
};

std::size_t mlp_parameter_count(const std::vector<std::size_t>& widths);

// Synthetic data: inputs and generating parameters are i.i.d. N(0, 1); targets
// are the network output at the generating parameters plus N(0, noise_std^2)
// noise. The initial point draws weights N(0, 1/fan_in) with zero biases.
class SyntheticMlp final : public Problem {
 public:
  SyntheticMlp(MlpSpec spec, std::uint64_t seed);

  std::string name() const override { return "mlp"; }
  std::size_t dim() const override { return param_count_; }
  std::uint64_t sample_count() const override { return spec_.samples; }
  const ParamVector& initial_point() const override { return x1_; }

  double sample_loss(std::span<const double> x, std::uint64_t xi) const override;
  void sample_gradient(std::span<const double> x, std::uint64_t xi,
                       std::span<double> out) const override;
  double sample_partial(std::span<const double> x, std::uint64_t xi,
                        std::size_t coord) const override;
  double objective_prefix(std::span<const double> x, std::uint64_t count) const override;
  void gradient_prefix(std::span<const double> x, std::uint64_t count,
                       std::span<double> out) const override;

  // All constants are empirical: L and L_max from sampled gradient ratios on
  // an evaluation subsample, L_T := L, sigma^2 from estimate_sigma_sq at x1,
  // and gap := f(x1) (the loss is nonnegative).
  ProblemConstants constants(std::uint64_t T) const override;

  const MlpSpec& spec() const noexcept { return spec_; }
  const ParamVector& generating_params() const noexcept { return true_params_; }
  std::span<const double> input(std::uint64_t xi) const;
  std::span<const double> target(std::uint64_t xi) const;

 private:
  struct Workspace;
  struct CoordLocation {
    std::size_t layer;  // 1-based weight layer
    bool bias;
    std::size_t row;
    std::size_t col;
  };

  void forward(std::span<const double> x, std::uint64_t xi, Workspace& ws) const;
  void forward_input(std::span<const double> x, std::span<const double> in,
                     Workspace& ws) const;
  // Fills ws.delta for layers L down to stop_layer (>= 1).
  void backward(std::span<const double> x, std::uint64_t xi, std::size_t stop_layer,
                Workspace& ws) const;
  double loss_from_output(std::uint64_t xi, const Workspace& ws) const;
  CoordLocation locate(std::size_t coord) const;
  static Workspace& workspace_for(const SyntheticMlp& net);

  MlpSpec spec_;
  std::size_t param_count_ = 0;
  std::vector<std::size_t> w_offset_;  // per layer l = 1..L (index l)
  std::vector<std::size_t> b_offset_;
  std::vector<double> inputs_;
  std::vector<double> targets_;
  ParamVector true_params_;
  ParamVector x1_;
};

}  // namespace asysg
