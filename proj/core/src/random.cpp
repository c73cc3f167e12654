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

#include "asysg/core/random.hpp"

#include <cmath>
#include <numbers>

namespace asysg {
namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

std::uint64_t Stream::uniform_index(std::uint64_t n) noexcept {
  // Lemire's multiply-and-reject, unbiased.
  u128 m = static_cast<u128>((*this)()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<u128>((*this)()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Stream::normal() noexcept {
  // Box-Muller, one variate per pair of draws.
  double u1 = uniform01();
  const double u2 = uniform01();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Stream derive_stream(const SeedSpec& seeds, std::uint64_t worker, Purpose purpose) {
  std::uint64_t key = mix64(seeds.master_seed ^ 0x5851f42d4c957f2dULL);
  key = mix64(key ^ ((worker + 1) * 0xd1b54a32d192ed03ULL));
  key = mix64(key ^ (static_cast<std::uint64_t>(purpose) * 0x8cb92ba72f3d8dd7ULL));
  return Stream(key);
}

}  // namespace asysg
