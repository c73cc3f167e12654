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

#include <atomic>
#include <cstddef>
#include <memory>
#include <span>

namespace asysg {

// Parameter vector shared by lock-free workers. Each coordinate is updated by
// an indivisible read-modify-write; whole-vector reads are deliberately not
// synchronized, so a copy may mix coordinates from different iterations.
class SharedParams {
 public:
  explicit SharedParams(std::span<const double> init)
      : n_(init.size()), values_(std::make_unique<std::atomic<double>[]>(init.size())) {
    for (std::size_t i = 0; i < n_; ++i) values_[i].store(init[i], std::memory_order_relaxed);
  }

  std::size_t size() const noexcept { return n_; }

  double load(std::size_t i) const noexcept { return values_[i].load(std::memory_order_relaxed); }

  // x_i <- x_i + delta; returns the previous value.
  double add(std::size_t i, double delta) noexcept {
    double old = values_[i].load(std::memory_order_relaxed);
    while (!values_[i].compare_exchange_weak(old, old + delta, std::memory_order_relaxed)) {
    }
    return old;
  }

  void store(std::size_t i, double v) noexcept { values_[i].store(v, std::memory_order_relaxed); }

  // Coordinate-wise copy; may be torn.
  void copy_to(std::span<double> out) const noexcept {
    for (std::size_t i = 0; i < n_; ++i) out[i] = values_[i].load(std::memory_order_relaxed);
  }

 private:
  std::size_t n_;
  std::unique_ptr<std::atomic<double>[]> values_;
};

}  // namespace asysg
