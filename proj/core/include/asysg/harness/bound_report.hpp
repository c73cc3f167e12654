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

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "asysg/core/trace.hpp"
#include "asysg/theory/theory_report.hpp"

namespace asysg {

inline constexpr double kBoundTolerance = 1.25;
inline constexpr std::size_t kLowSeedCount = 10;

struct BoundComparison {
  std::string bound;      // report key, e.g. "bound_eq11"
  std::string statistic;  // "min" or "ergodic"
  double empirical = 0.0;
  double bound_value = 0.0;
  bool pass = false;      // empirical <= tolerance * bound_value
};

struct BoundReport {
  std::size_t seeds = 0;
  bool low_seed_count = false;
  double tolerance = kBoundTolerance;
  double mean_min_gradsq = 0.0;
  double mean_ergodic = 0.0;
  std::vector<BoundComparison> comparisons;
  // All comparisons with their designated statistic pass: min for eq11 and
  // eq19, ergodic for eq8, eq16/eq42 (against the larger of the two) and eq20.
  bool pass = false;
};

// Throws std::invalid_argument for an empty set and ConfigError when the
// traces carry different config ids.
BoundReport bound_report(const std::vector<Trace>& traces, const TheoryReport& theory,
                         double tolerance = kBoundTolerance);

nlohmann::json to_json(const BoundReport& report);

}  // namespace asysg
