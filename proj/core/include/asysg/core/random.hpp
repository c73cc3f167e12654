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
#include <limits>

namespace asysg {

// What a random stream is used for. Distinct purposes on the same worker get
// independent streams.
enum class Purpose : std::uint32_t {
  kSample = 1,      // minibatch sample indices xi_{k,m}
  kCoordinate = 2,  // coordinate choice i_k
  kDelay = 3,       // delay / read-set models
  kData = 4,        // synthetic dataset generation
  kInit = 5,        // initial point
  kNoise = 6,       // noise vectors of synthetic problems
  kEstimate = 7,    // empirical constant estimators
};

struct SeedSpec {
  std::uint64_t master_seed = 0;
};

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream: draw j is a pure function of (key, j), so streams can
// be jumped to any position and never share mutable state.
class Stream {
 public:
  using result_type = std::uint64_t;

  Stream() = default;
  explicit Stream(std::uint64_t key, std::uint64_t counter = 0) noexcept
      : key_(key), counter_(counter) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  // Stateless access to draw j.
  result_type at(std::uint64_t j) const noexcept {
    return mix64(key_ + (j + 1) * 0x9e3779b97f4a7c15ULL);
  }
  result_type operator()() noexcept { return at(counter_++); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }
  // Uniform integer on [0, n); n must be positive.
  std::uint64_t uniform_index(std::uint64_t n) noexcept;
  double normal() noexcept;
  bool bernoulli(double p) noexcept { return uniform01() < p; }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t position() const noexcept { return counter_; }
  void seek(std::uint64_t j) noexcept { counter_ = j; }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

Stream derive_stream(const SeedSpec& seeds, std::uint64_t worker, Purpose purpose);

}  // namespace asysg
