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

#include "asysg/core/run_config.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "asysg/core/error.hpp"

namespace asysg {
namespace {

constexpr std::array<std::pair<Mode, std::string_view>, 6> kModeNames{{
    {Mode::kSerial, "serial"},
    {Mode::kConSim, "con-sim"},
    {Mode::kInconSim, "incon-sim"},
    {Mode::kInconSparseSim, "incon-sparse-sim"},
    {Mode::kConThreads, "con-threads"},
    {Mode::kInconThreads, "incon-threads"},
}};

}  // namespace

std::string_view to_string(Mode mode) noexcept {
  for (const auto& [m, name] : kModeNames) {
    if (m == mode) return name;
  }
  return "unknown";
}

std::optional<Mode> parse_mode(std::string_view name) noexcept {
  for (const auto& [m, n] : kModeNames) {
    if (n == name) return m;
  }
  return std::nullopt;
}

bool is_sim(Mode mode) noexcept {
  return mode == Mode::kSerial || mode == Mode::kConSim || mode == Mode::kInconSim ||
         mode == Mode::kInconSparseSim;
}

bool is_threaded(Mode mode) noexcept { return !is_sim(mode); }

void validate(const RunConfig& cfg) {
  if (cfg.K < 1) throw ConfigError("algorithm.K", "must be >= 1");
  if (cfg.M < 1) throw ConfigError("algorithm.M", "must be >= 1");
  if (cfg.workers < 1) throw ConfigError("algorithm.workers", "must be >= 1");
  if (is_sim(cfg.mode) && cfg.workers != 1) {
    throw ConfigError("algorithm.workers", "simulation modes require workers = 1");
  }
  if (cfg.checkpoint_every < 1) {
    throw ConfigError("output.checkpoint_every", "must be >= 1");
  }
  if (cfg.gamma.kind == GammaRule::Kind::kConstant &&
      (!std::isfinite(cfg.gamma.value) || cfg.gamma.value < 0.0)) {
    throw ConfigError("algorithm.gamma.value", "must be finite and >= 0");
  }
  if (cfg.delay_model.kind == DelayModel::Kind::kFixed && cfg.delay_model.tau > cfg.T) {
    throw ConfigError("algorithm.delay_model.tau", "must satisfy 0 <= tau <= T");
  }
  if (cfg.read_model.kind == ReadModel::Kind::kPrefix && cfg.read_model.tau > cfg.T) {
    throw ConfigError("algorithm.read_model.tau", "must satisfy 0 <= tau <= T");
  }
  if (cfg.read_model.kind == ReadModel::Kind::kRandomSubset &&
      !(cfg.read_model.p >= 0.0 && cfg.read_model.p <= 1.0)) {
    throw ConfigError("algorithm.read_model.p", "must lie in [0, 1]");
  }
}

std::string fingerprint(const RunConfig& cfg) {
  std::ostringstream os;
  os << to_string(cfg.mode) << "|K=" << cfg.K << "|M=" << cfg.M
     << "|gamma=" << static_cast<int>(cfg.gamma.kind) << ":" << cfg.gamma.value
     << "|T=" << cfg.T << "|W=" << cfg.workers
     << "|dm=" << static_cast<int>(cfg.delay_model.kind) << ":" << cfg.delay_model.tau
     << "|rm=" << static_cast<int>(cfg.read_model.kind) << ":" << cfg.read_model.tau << ":"
     << cfg.read_model.p << "|ce=" << cfg.checkpoint_every;
  return os.str();
}

}  // namespace asysg
