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

#include <algorithm>
#include <string>

#include "asysg/core/error.hpp"
#include "asysg/parallel/engines.hpp"

namespace asysg {

std::uint64_t DelayStats::total() const noexcept {
  std::uint64_t s = 0;
  for (const auto& [delay, count] : histogram) s += count;
  return s;
}

DelayStats delay_stats(std::span<const DelayRecord> log, std::size_t workers) {
  DelayStats st;
  std::size_t w = workers;
  for (const DelayRecord& r : log) w = std::max<std::size_t>(w, r.worker + 1);
  std::vector<double> sum(w, 0.0);
  std::vector<std::uint64_t> count(w, 0);
  for (std::size_t i = 0; i < log.size(); ++i) {
    const DelayRecord& r = log[i];
    if (r.apply < r.pull) {
      throw DelayBoundError("corrupt delay log at entry " + std::to_string(i) + ": applied at " +
                            std::to_string(r.apply) + " before pull " + std::to_string(r.pull));
    }
    const std::uint64_t d = r.apply - r.pull;
    ++st.histogram[d];
    st.max_observed = std::max(st.max_observed, d);
    sum[r.worker] += static_cast<double>(d);
    ++count[r.worker];
  }
  st.per_worker_mean.assign(w, 0.0);
  for (std::size_t i = 0; i < w; ++i) {
    if (count[i] > 0) st.per_worker_mean[i] = sum[i] / static_cast<double>(count[i]);
  }
  return st;
}

nlohmann::json to_json(const DelayStats& st) {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [delay, count] : st.histogram) hist[std::to_string(delay)] = count;
  return {{"max_observed", st.max_observed},
          {"total", st.total()},
          {"histogram", hist},
          {"per_worker_mean", st.per_worker_mean}};
}

}  // namespace asysg
