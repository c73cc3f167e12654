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

#include "asysg/sim/common.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "asysg/core/error.hpp"
#include "asysg/theory/steplength.hpp"

namespace asysg {

double resolve_gamma(const RunConfig& cfg, const ProblemConstants& c, std::size_t n) {
  switch (cfg.gamma.kind) {
    case GammaRule::Kind::kConstant:
      return cfg.gamma.value;
    case GammaRule::Kind::kCorollary2:
      return steplength_corollary2(c.gap, cfg.M, c.L, static_cast<double>(cfg.K), c.sigma_sq);
    case GammaRule::Kind::kCorollary4:
      return steplength_corollary4(c.gap, static_cast<double>(n), static_cast<double>(cfg.K),
                                   c.L_T, cfg.M, std::sqrt(c.sigma_sq));
  }
  throw ConfigError("algorithm.gamma", "unknown rule");
}

double resolve_gamma(const RunConfig& cfg, const Problem& p) {
  if (cfg.gamma.kind == GammaRule::Kind::kConstant) return cfg.gamma.value;
  return resolve_gamma(cfg, p.constants(cfg.T), p.dim());
}

PointEval evaluate_point(const Problem& p, std::span<const double> x, std::uint64_t eval_samples) {
  const std::uint64_t count = eval_samples == 0 ? p.sample_count()
                                                : std::min(eval_samples, p.sample_count());
  std::vector<double> g(p.dim());
  PointEval e;
  if (count == p.sample_count()) {
    e.f = p.objective(x);
    p.full_gradient(x, g);
  } else {
    e.f = p.objective_prefix(x, count);
    p.gradient_prefix(x, count, g);
  }
  e.gradsq = squared_norm(g);
  return e;
}

bool is_checkpoint(std::uint64_t k, std::uint64_t K, std::uint64_t every) noexcept {
  return k == K || k % every == 0;
}

std::uint64_t checkpoint_count(std::uint64_t K, std::uint64_t every) noexcept {
  return K / every + 1 + (K % every != 0 ? 1 : 0);
}

Trace start_trace(const Problem& p, const RunConfig& cfg) {
  Trace t;
  t.config_id = fingerprint(cfg);
  t.notes.push_back("problem " + p.name() + " n=" + std::to_string(p.dim()) +
                    " N=" + std::to_string(p.sample_count()));
  t.notes.push_back("config " + t.config_id);
  if (cfg.eval_samples != 0 && cfg.eval_samples < p.sample_count()) {
    t.notes.push_back("f and gradsq evaluated on the first " + std::to_string(cfg.eval_samples) +
                      " samples");
  }
  t.notes.push_back(cfg.clock == Clock::kLogical ? "t is logical (t = k)" : "t is wall seconds");
  return t;
}

std::vector<std::size_t> sparse_support(std::span<const double> g) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] != 0.0) s.push_back(i);
  }
  return s;
}

SparseStep sparse_update(std::span<const double> g, double gamma, std::size_t choice) {
  std::size_t nnz = 0;
  std::size_t coord = g.size();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] != 0.0) {
      if (nnz == choice) coord = i;
      ++nnz;
    }
  }
  if (nnz == 0) throw std::invalid_argument("sparse_update: zero gradient has empty support");
  if (choice >= nnz) throw std::invalid_argument("sparse_update: choice outside the support");
  return {coord, gamma * static_cast<double>(nnz) * g[coord]};
}

}  // namespace asysg
