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

#include "asysg/core/error.hpp"

namespace asysg {

// Single-coordinate change of one inconsistent-read iteration:
// x_{j+1} - x_j = delta * e_coord.
struct CoordinateDelta {
  std::size_t coord = 0;
  double delta = 0.0;
};

// Fixed window of the last T+1 per-iteration records. Slot j holds whatever the
// owning simulator stores for iteration j (a full iterate or a delta). Indices
// are pushed in order 0, 1, 2, ...; anything older than k_now - T is rejected.
template <typename Slot>
class HistoryRing {
 public:
  explicit HistoryRing(std::uint64_t max_delay)
      : max_delay_(max_delay), slots_(static_cast<std::size_t>(max_delay + 1)) {}

  std::uint64_t max_delay() const noexcept { return max_delay_; }
  std::size_t capacity() const noexcept { return slots_.size(); }
  // Number of records ever pushed; the next push gets this index.
  std::uint64_t pushed() const noexcept { return pushed_; }

  void push(Slot slot) {
    slots_[static_cast<std::size_t>(pushed_ % slots_.size())] = std::move(slot);
    ++pushed_;
  }

  // Record j as seen from iteration k_now. Throws HistoryRangeError unless
  // max(0, k_now - T) <= j <= k_now and j has been stored.
  const Slot& get(std::uint64_t j, std::uint64_t k_now) const {
    if (j > k_now || k_now - j > max_delay_) {
      throw HistoryRangeError("history index " + std::to_string(j) +
                              " outside window [max(0," + std::to_string(k_now) + "-" +
                              std::to_string(max_delay_) + "), " +
                              std::to_string(k_now) + "]");
    }
    if (j >= pushed_ || pushed_ - j > slots_.size()) {
      throw HistoryRangeError("history index " + std::to_string(j) + " not retained");
    }
    return slots_[static_cast<std::size_t>(j % slots_.size())];
  }

 private:
  std::uint64_t max_delay_;
  std::vector<Slot> slots_;
  std::uint64_t pushed_ = 0;
};

}  // namespace asysg
