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
#include <span>

#include "asysg/core/trace.hpp"

namespace asysg {

// sum_k gamma_k g_k / sum_k gamma_k. Throws std::invalid_argument for empty or
// unequal inputs, negative entries, or zero total weight.
double ergodic_average(std::span<const double> gradsq, std::span<const double> gamma);

// Rows that the convergence bounds average over: k = 0..K-1 (the final
// checkpoint is x_{K}, one past the averaged range). A one-row trace uses
// its only row.
std::span<const TraceRow> averaged_rows(const Trace& trace);
double trace_ergodic_average(const Trace& trace);
double trace_min_gradsq(const Trace& trace);

// Smallest checkpointed k with gradsq <= epsilon.
std::optional<std::uint64_t> iterations_to_target(const Trace& trace, double epsilon);
// Trace time t at that checkpoint.
std::optional<double> seconds_to_target(const Trace& trace, double epsilon);

// serial_iters / parallel_iters * workers. Throws std::invalid_argument unless
// all arguments are positive.
double iteration_speedup(double serial_iters, double parallel_iters, double workers);
// serial_seconds / parallel_seconds, same error rule.
double time_speedup(double serial_seconds, double parallel_seconds);

struct SpeedupRow {
  std::uint32_t workers = 1;
  std::optional<double> iteration_speedup;
  std::optional<double> time_speedup;
  std::optional<std::uint64_t> iterations_to_target;
  std::optional<double> seconds_to_target;
};

// Throws std::runtime_error when the baseline never reaches epsilon. Fields of
// a parallel trace that misses epsilon stay empty.
SpeedupRow speedup_row(const Trace& baseline, const Trace& parallel, std::uint32_t workers,
                       double epsilon);

}  // namespace asysg
