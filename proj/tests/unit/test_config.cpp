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

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "asysg/config/config_file.hpp"
#include "asysg/core/error.hpp"
#include "asysg/problems/noisy_quadratic.hpp"

using namespace asysg;
using nlohmann::json;

namespace {

json minimal() {
  return json::parse(R"({
    "problem": {"type": "noisy_quadratic", "dim": 4, "samples": 10, "sigma": 0.5},
    "algorithm": {"mode": "serial", "K": 100, "M": 2, "gamma": 0.05},
    "output": {"trace": "out.csv", "checkpoint_every": 10},
    "seeds": {"master": 3, "replicates": 2}
  })");
}

std::string error_field(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal config parses") {
  const ConfigFile c = parse_config(minimal());
  CHECK(c.problem.dim == 4);
  CHECK(c.run.mode == Mode::kSerial);
  CHECK(c.run.K == 100);
  CHECK(c.run.M == 2);
  CHECK(c.run.gamma.value == 0.05);
  CHECK(c.run.checkpoint_every == 10);
  CHECK(c.run.seeds.master_seed == 3);
  CHECK(c.run.clock == Clock::kLogical);
  CHECK(c.output.trace == "out.csv");
  CHECK(replicate_seed(c.seeds, 1) == 4);
}

TEST_CASE("unknown keys and bad values name the field") {
  json d = minimal();
  d["algorithm"]["stepsize"] = 0.1;
  CHECK(error_field(d) == "algorithm.stepsize");

  d = minimal();
  d["extra"] = 1;
  CHECK(error_field(d) == "extra");

  d = minimal();
  d["algorithm"]["T"] = -1;
  CHECK(error_field(d) == "algorithm.T");

  d = minimal();
  d["algorithm"]["mode"] = "hogwild";
  CHECK(error_field(d) == "algorithm.mode");

  d = minimal();
  d["problem"]["constants"] = {{"Lip", 1.0}};
  CHECK(error_field(d) == "problem.constants.Lip");

  d = minimal();
  d["algorithm"]["delay_model"] = {{"kind", "fixed"}, {"tau", 3}};
  d["algorithm"]["mode"] = "con-sim";
  d["algorithm"]["T"] = 2;
  CHECK(error_field(d) == "algorithm.delay_model.tau");

  d = minimal();
  d["problem"]["samples"] = 11;
  CHECK(error_field(d) == "problem.samples");

  d = minimal();
  d["algorithm"]["K"] = 0;
  CHECK(error_field(d) == "algorithm.K");
}

TEST_CASE("numbers accept scientific notation") {
  json d = minimal();
  d["algorithm"]["K"] = 1e4;
  d["algorithm"]["gamma"] = 5e-3;
  const ConfigFile c = parse_config(d);
  CHECK(c.run.K == 10000);
  CHECK(c.run.gamma.value == 5e-3);
  d["algorithm"]["K"] = 1.5;
  CHECK(error_field(d) == "algorithm.K");
}

TEST_CASE("gamma rules") {
  json d = minimal();
  d["algorithm"]["gamma"] = "corollary2";
  CHECK(parse_config(d).run.gamma.kind == GammaRule::Kind::kCorollary2);
  d["algorithm"]["gamma"] = {{"rule", "constant"}, {"value", 0.2}};
  CHECK(parse_config(d).run.gamma.value == 0.2);
  d["algorithm"]["gamma"] = "annealed";
  CHECK(error_field(d) == "algorithm.gamma.rule");
}

TEST_CASE("threaded modes run on the wall clock") {
  json d = minimal();
  d["algorithm"]["mode"] = "incon-threads";
  d["algorithm"]["workers"] = 4;
  const ConfigFile c = parse_config(d);
  CHECK(c.run.clock == Clock::kWall);
  CHECK(c.run.workers == 4);
}

TEST_CASE("overrides") {
  json d = minimal();
  apply_override(d, "algorithm.workers=4");
  CHECK(d["algorithm"]["workers"] == 4);
  apply_override(d, "algorithm.mode=incon-threads");
  CHECK(d["algorithm"]["mode"] == "incon-threads");
  apply_override(d, "problem.constants.L=2.5");
  CHECK(d["problem"]["constants"]["L"] == 2.5);
  apply_override(d, "algorithm.delay_model={\"kind\":\"uniform\"}");
  CHECK(d["algorithm"]["delay_model"]["kind"] == "uniform");
  CHECK_THROWS_AS(apply_override(d, "no_equals"), ConfigError);
  CHECK_THROWS_AS(apply_override(d, "algorithm.K.x=1"), ConfigError);
}

TEST_CASE("load_config reads files and applies overrides in order") {
  const auto path = std::filesystem::temp_directory_path() / "asysg_test_config.json";
  {
    std::ofstream os(path);
    os << minimal().dump(2);
  }
  const ConfigFile c = load_config(path, {"algorithm.K=7", "algorithm.K=9"});
  CHECK(c.run.K == 9);
  {
    std::ofstream os(path);
    os << "{ not json";
  }
  CHECK_THROWS_AS(load_config(path), ConfigError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_config(path), ConfigError);
}

TEST_CASE("make_problem and constant overrides") {
  json d = minimal();
  d["problem"]["gap"] = 2.0;
  ConfigFile c = parse_config(d);
  auto p = make_problem(c.problem);
  CHECK(p->dim() == 4);
  CHECK(p->sample_count() == 10);
  CHECK(p->constants(0).gap == doctest::Approx(2.0));
  CHECK(p->constants(0).sigma_sq == doctest::Approx(0.25));

  d["problem"]["constants"] = {{"L", 7.0}, {"sigma_sq", 3.0}};
  c = parse_config(d);
  p = make_problem(c.problem);
  const ProblemConstants k = p->constants(2);
  CHECK(k.L == 7.0);
  CHECK(k.sigma_sq == 3.0);
  CHECK(k.gap == doctest::Approx(2.0));
  CHECK(k.T == 2);

  d["problem"] = {{"type", "least_squares"}, {"dim", 3}, {"samples", 20}, {"noise", 0.1}};
  p = make_problem(parse_config(d).problem);
  CHECK(p->name() == "least_squares");

  d["problem"] = {{"type", "mlp"}, {"widths", {5, 4, 2}}, {"samples", 30}};
  p = make_problem(parse_config(d).problem);
  CHECK(p->dim() == 5 * 4 + 4 + 4 * 2 + 2);
}
