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
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "asysg/core/run_config.hpp"
#include "asysg/problems/problem.hpp"

namespace asysg {

// Fixed values for some or all problem constants; unset fields come from the
// problem itself.
struct ConstantsOverride {
  std::optional<double> L;
  std::optional<double> L_max;
  std::optional<double> L_T;
  std::optional<double> sigma_sq;
  std::optional<double> gap;

  bool any() const noexcept { return L || L_max || L_T || sigma_sq || gap; }
  bool complete() const noexcept { return L && L_max && L_T && sigma_sq && gap; }
};

struct ProblemSection {
  std::string type = "noisy_quadratic";  // noisy_quadratic | least_squares | mlp
  std::uint64_t seed = 1;
  std::size_t dim = 10;
  std::uint64_t samples = 1000;
  // noisy_quadratic
  double sigma = 1.0;
  double lambda_min = 1.0;
  double lambda_max = 1.0;
  bool rotate = false;
  double gap = 1.0;
  // least_squares (label noise) and mlp (target noise std)
  double noise = 1.0;
  // mlp
  std::vector<std::size_t> widths{400, 100, 50, 20, 10};
  ConstantsOverride constants;
};

struct OutputSection {
  std::string trace = "trace.csv";
  std::uint64_t checkpoint_every = 1;
};

struct SeedsSection {
  std::uint64_t master = 0;
  std::uint32_t replicates = 1;
};

struct ConfigFile {
  ProblemSection problem;
  RunConfig run;  // seeds.master and output.checkpoint_every folded in
  OutputSection output;
  SeedsSection seeds;
};

// Applies one "section.key=value" override to a config document. The value is
// read as JSON when it parses as JSON and as a plain string otherwise.
void apply_override(nlohmann::json& doc, const std::string& assignment);

// Validates and converts a document. Unknown keys, wrong types and RunConfig
// violations throw ConfigError naming the dotted field.
ConfigFile parse_config(const nlohmann::json& doc);

// Reads the file (parse failures become ConfigError on field "<file>"),
// applies overrides in order, then parses.
ConfigFile load_config(const std::filesystem::path& path,
                       const std::vector<std::string>& overrides = {});

std::unique_ptr<Problem> make_problem(const ProblemSection& section);

// Master seed of replicate r.
std::uint64_t replicate_seed(const SeedsSection& seeds, std::uint32_t r) noexcept;

}  // namespace asysg
