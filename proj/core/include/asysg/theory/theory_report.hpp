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
#include <vector>

#include <nlohmann/json.hpp>

#include "asysg/problems/problem.hpp"

namespace asysg {

enum class TheoryFamily { kCon, kIncon, kBoth };

struct TheoryInputs {
  ProblemConstants constants;
  double n = 1.0;  // problem dimension
  double M = 1.0;
  double K = 1.0;
  std::uint64_t T = 0;
  // Evaluate the conditions and constant-steplength bounds at this
  // steplength instead of the corollary-rule one.
  std::optional<double> gamma_constant;
  // max_k ||g_k||_0 for the sparse bound; defaults to n (dense gradients).
  std::optional<double> g0max;
};

// Every number is tagged by the equation it instantiates. Entries whose
// inputs or preconditions are not met stay empty and get a line in `notes`.
struct TheoryReport {
  TheoryInputs inputs;
  TheoryFamily family = TheoryFamily::kBoth;

  // consistent read
  std::optional<double> gamma_eq9;
  std::optional<std::uint64_t> kmin_eq10;
  std::optional<double> lhs_eq7;
  std::optional<bool> cond_eq7;
  std::optional<double> bound_eq8;
  std::optional<double> bound_eq11;

  // inconsistent read
  std::optional<double> gamma_eq17;
  std::optional<std::uint64_t> kmin_eq18;
  std::optional<double> lhs_eq15;
  std::optional<bool> cond_eq15;
  std::optional<double> bound_eq16;
  std::optional<double> bound_eq42;
  std::optional<double> bound_eq19;
  std::optional<double> bound_eq20;

  // Headline values for the primary family (incon when family = kIncon).
  double gamma = 0.0;
  bool condition_ok = false;
  std::uint64_t K_threshold = 0;
  std::optional<double> bound_value;

  std::vector<std::string> notes;
};

TheoryReport make_theory_report(const TheoryInputs& inputs, TheoryFamily family);

// Re-evaluates the primary condition from report.inputs.
bool recheck_condition(const TheoryReport& report);

nlohmann::json to_json(const TheoryReport& report);

}  // namespace asysg
