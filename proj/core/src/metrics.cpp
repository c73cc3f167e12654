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

#include "asysg/harness/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace asysg {

double ergodic_average(std::span<const double> gradsq, std::span<const double> gamma) {
  if (gradsq.empty()) throw std::invalid_argument("ergodic_average: empty input");
  if (gradsq.size() != gamma.size()) {
    throw std::invalid_argument("ergodic_average: sequences differ in length");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < gradsq.size(); ++i) {
    if (gradsq[i] < 0.0 || gamma[i] < 0.0) {
      throw std::invalid_argument("ergodic_average: negative entry");
    }
    num += gamma[i] * gradsq[i];
    den += gamma[i];
  }
  if (!(den > 0.0)) throw std::invalid_argument("ergodic_average: zero total weight");
  return num / den;
}

std::span<const TraceRow> averaged_rows(const Trace& trace) {
  if (trace.rows.empty()) throw std::invalid_argument("trace has no rows");
  if (trace.rows.size() == 1) return trace.rows;
  return std::span<const TraceRow>(trace.rows).first(trace.rows.size() - 1);
}

double trace_ergodic_average(const Trace& trace) {
  const auto rows = averaged_rows(trace);
  std::vector<double> g, w;
  g.reserve(rows.size());
  w.reserve(rows.size());
  for (const TraceRow& r : rows) {
    g.push_back(r.gradsq);
    w.push_back(r.gamma);
  }
  return ergodic_average(g, w);
}

double trace_min_gradsq(const Trace& trace) {
  const auto rows = averaged_rows(trace);
  double best = rows.front().gradsq;
  for (const TraceRow& r : rows) best = std::min(best, r.gradsq);
  return best;
}

std::optional<std::uint64_t> iterations_to_target(const Trace& trace, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("iterations_to_target: epsilon must be > 0");
  for (const TraceRow& r : trace.rows) {
    if (r.gradsq <= epsilon) return r.k;
  }
  return std::nullopt;
}

std::optional<double> seconds_to_target(const Trace& trace, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("seconds_to_target: epsilon must be > 0");
  for (const TraceRow& r : trace.rows) {
    if (r.gradsq <= epsilon) return r.t;
  }
  return std::nullopt;
}

double iteration_speedup(double serial_iters, double parallel_iters, double workers) {
  if (!(serial_iters > 0.0) || !(parallel_iters > 0.0) || !(workers > 0.0)) {
    throw std::invalid_argument("iteration_speedup: arguments must be positive");
  }
  return serial_iters / parallel_iters * workers;
}

double time_speedup(double serial_seconds, double parallel_seconds) {
  if (!(serial_seconds > 0.0) || !(parallel_seconds > 0.0)) {
    throw std::invalid_argument("time_speedup: arguments must be positive");
  }
  return serial_seconds / parallel_seconds;
}

SpeedupRow speedup_row(const Trace& baseline, const Trace& parallel, std::uint32_t workers,
                       double epsilon) {
  const auto base_k = iterations_to_target(baseline, epsilon);
  const auto base_t = seconds_to_target(baseline, epsilon);
  if (!base_k) throw std::runtime_error("baseline trace never reaches the target");
  SpeedupRow row;
  row.workers = workers;
  row.iterations_to_target = iterations_to_target(parallel, epsilon);
  row.seconds_to_target = seconds_to_target(parallel, epsilon);
  if (row.iterations_to_target && *base_k > 0 && *row.iterations_to_target > 0) {
    row.iteration_speedup = iteration_speedup(static_cast<double>(*base_k),
                                              static_cast<double>(*row.iterations_to_target),
                                              workers);
  }
  if (row.seconds_to_target && *base_t > 0.0 && *row.seconds_to_target > 0.0) {
    row.time_speedup = time_speedup(*base_t, *row.seconds_to_target);
  }
  return row;
}

}  // namespace asysg
