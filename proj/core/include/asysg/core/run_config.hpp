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
#include <optional>
#include <string>
#include <string_view>

#include "asysg/core/random.hpp"

namespace asysg {

enum class Mode {
  kSerial,
  kConSim,
  kInconSim,
  kInconSparseSim,
  kConThreads,
  kInconThreads,
};

std::string_view to_string(Mode mode) noexcept;
std::optional<Mode> parse_mode(std::string_view name) noexcept;
bool is_sim(Mode mode) noexcept;
bool is_threaded(Mode mode) noexcept;

struct GammaRule {
  enum class Kind { kConstant, kCorollary2, kCorollary4 };
  Kind kind = Kind::kConstant;
  double value = 0.0;  // used by kConstant only

  static GammaRule constant(double gamma) { return {Kind::kConstant, gamma}; }
  static GammaRule corollary2() { return {Kind::kCorollary2, 0.0}; }
  static GammaRule corollary4() { return {Kind::kCorollary4, 0.0}; }
};

// Delay draw rule for the consistent-read simulator.
//   fixed(tau):   tau_{k,m} = tau
//   uniform(0..T): tau_{k,m} uniform on {0, ..., T}
//   cyclic(T):    tau_{k,m} = (k + m) mod (T + 1), a round robin over T+1 workers
// Every draw is clamped to min(tau, k) during warm-up.
struct DelayModel {
  enum class Kind { kFixed, kUniform, kCyclic };
  Kind kind = Kind::kFixed;
  std::uint64_t tau = 0;

  static DelayModel fixed(std::uint64_t tau) { return {Kind::kFixed, tau}; }
  static DelayModel uniform() { return {Kind::kUniform, 0}; }
  static DelayModel cyclic() { return {Kind::kCyclic, 0}; }
};

// Read-set rule J(k,m) for the inconsistent-read simulator.
//   prefix(tau):  J = {k-1, ..., k-min(tau,k)}
//   random_subset(p): each j in {max(0,k-T), ..., k-1} included with probability p
struct ReadModel {
  enum class Kind { kPrefix, kRandomSubset };
  Kind kind = Kind::kPrefix;
  std::uint64_t tau = 0;
  double p = 0.0;

  static ReadModel prefix(std::uint64_t tau) { return {Kind::kPrefix, tau, 0.0}; }
  static ReadModel random_subset(double p) { return {Kind::kRandomSubset, 0, p}; }
};

// Trace time base. Simulators default to logical time (t = k) so their output
// files are bit-reproducible; threaded engines always use wall time.
enum class Clock { kLogical, kWall };

struct RunConfig {
  Mode mode = Mode::kSerial;
  std::uint64_t K = 1;
  std::uint32_t M = 1;
  GammaRule gamma = GammaRule::constant(0.0);
  std::uint64_t T = 0;
  std::uint32_t workers = 1;
  DelayModel delay_model = DelayModel::fixed(0);
  ReadModel read_model = ReadModel::prefix(0);
  std::uint64_t checkpoint_every = 1;
  SeedSpec seeds{};
  Clock clock = Clock::kLogical;
  // Checkpoint f / gradsq over the first eval_samples samples; 0 = all.
  std::uint64_t eval_samples = 0;
};

// Throws ConfigError naming the first invalid field.
void validate(const RunConfig& cfg);

// Short identity string used to check that replicate traces share a config.
std::string fingerprint(const RunConfig& cfg);

}  // namespace asysg
