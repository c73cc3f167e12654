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
#include <string>
#include <vector>

namespace asysg {

// One checkpoint: state after k iterations.
struct TraceRow {
  std::uint64_t k = 0;
  double t = 0.0;       // seconds since run start (or k under the logical clock)
  double f = 0.0;       // objective value
  double gradsq = 0.0;  // ||grad f(x_k)||^2
  double gamma = 0.0;   // steplength in effect
  std::uint64_t max_delay_observed = 0;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct Trace {
  std::vector<TraceRow> rows;
  // Config fingerprint; replicate traces compared in reports must agree.
  std::string config_id;
  // Free-form header notes, written as leading '#' lines in CSV output.
  std::vector<std::string> notes;

  bool empty() const noexcept { return rows.empty(); }
  std::size_t size() const noexcept { return rows.size(); }
};

}  // namespace asysg
