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

#include <array>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "asysg/harness/trace_io.hpp"
#include "asysg_cli/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "asysg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = asysg::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(fs::temp_directory_path() / name) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& s) const { return path_ / s; }

 private:
  fs::path path_;
};

fs::path write_json(const fs::path& p, const json& j) {
  std::ofstream os(p);
  os << j.dump(2);
  return p;
}

json serial_config() {
  return json::parse(R"({
    "problem": {"type": "noisy_quadratic", "dim": 5, "samples": 20, "sigma": 0.5,
                "lambda_min": 0.5, "lambda_max": 1.5},
    "algorithm": {"mode": "serial", "K": 1000, "M": 1, "gamma": 0.05},
    "output": {"checkpoint_every": 100}
  })");
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("run writes one row per checkpoint") {
  TempDir dir("asysg_cli_run");
  const auto cfg = write_json(dir / "c.json", serial_config());
  const Result r = cli({"run", "--config", cfg.string(), "--out", (dir / "t.csv").string()});
  CHECK(r.code == 0);
  const asysg::Trace t = asysg::read_trace_file(dir / "t.csv");
  CHECK(t.size() == 1000 / 100 + 1);
}

TEST_CASE("invalid config exits 2 and names the field") {
  TempDir dir("asysg_cli_bad");
  json c = serial_config();
  c["algorithm"]["T"] = -1;
  const auto cfg = write_json(dir / "c.json", c);
  const Result r = cli({"run", "--config", cfg.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("algorithm.T") != std::string::npos);

  CHECK(cli({"run", "--config", (dir / "missing.json").string()}).code == 2);
  CHECK(cli({"run"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"run", "--config", cfg.string(), "--override", "algorithm.K=abc"}).code == 2);
}

TEST_CASE("threaded runs write a delay sidecar") {
  TempDir dir("asysg_cli_threads");
  json c = serial_config();
  c["algorithm"]["mode"] = "incon-threads";
  c["algorithm"]["T"] = 64;
  const auto cfg = write_json(dir / "c.json", c);
  const Result r = cli({"run", "--config", cfg.string(), "--override", "algorithm.workers=4",
                        "--out", (dir / "t.csv").string()});
  CHECK(r.code == 0);
  REQUIRE(fs::exists(dir / "t.delays.json"));
  std::ifstream is(dir / "t.delays.json");
  const json side = json::parse(is);
  CHECK(side["workers"] == 4);
  CHECK(side["applied"] == 1000);
}

TEST_CASE("replicates get their own files and reruns are bit-identical") {
  TempDir dir("asysg_cli_seeds");
  json c = serial_config();
  c["algorithm"]["mode"] = "con-sim";
  c["algorithm"]["T"] = 2;
  c["algorithm"]["delay_model"] = {{"kind", "uniform"}};
  const auto cfg = write_json(dir / "c.json", c);
  const std::vector<std::string> args{"run", "--config", cfg.string(), "--seeds", "3",
                                      "--out", (dir / "t.csv").string()};
  REQUIRE(cli(args).code == 0);
  for (int r = 0; r < 3; ++r) CHECK(fs::exists(dir / ("t_seed" + std::to_string(r) + ".csv")));
  const std::string first = slurp(dir / "t_seed1.csv");
  REQUIRE(cli(args).code == 0);
  CHECK(slurp(dir / "t_seed1.csv") == first);
  CHECK(slurp(dir / "t_seed0.csv") != first);
}

TEST_CASE("theory command examples") {
  const fs::path configs = ASYSG_CONFIG_DIR;
  Result r = cli({"theory", "--config", (configs / "theory_con.json").string()});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["gamma_eq9"].get<double>() == doctest::Approx(0.1));
  CHECK(j["kmin_eq10"] == 64);
  CHECK(j["cond_eq7"] == true);
  CHECK(j["bound_eq11"].get<double>() == doctest::Approx(0.4));

  r = cli({"theory", "--config", (configs / "theory_incon.json").string()});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["kmin_eq18"] == 96);
  CHECK(j["gamma_eq17"].get<double>() == doctest::Approx(0.2));
  CHECK(j["cond_eq15"].is_boolean());

  TempDir dir("asysg_cli_theory");
  const json mlp = json::parse(R"({
    "problem": {"type": "mlp", "widths": [8, 6, 3], "samples": 200},
    "algorithm": {"mode": "incon-threads", "K": 1000, "M": 4, "T": 4, "workers": 2,
                  "gamma": "corollary4"}
  })");
  r = cli({"theory", "--config", write_json(dir / "m.json", mlp).string()});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["constants"] == "estimated");

  json zero = serial_config();
  zero["problem"]["sigma"] = 0.0;
  r = cli({"theory", "--config", write_json(dir / "z.json", zero).string()});
  CHECK(r.code == 2);
}

TEST_CASE("speedup table") {
  TempDir dir("asysg_cli_speedup");
  auto trace = [&](const std::string& name, std::vector<std::array<double, 3>> rows) {
    asysg::Trace t;
    for (const auto& r : rows) {
      asysg::TraceRow row;
      row.k = static_cast<std::uint64_t>(r[0]);
      row.t = r[1];
      row.gradsq = r[2];
      t.rows.push_back(row);
    }
    asysg::write_trace_file(dir / name, t);
    return (dir / name).string();
  };
  const auto base = trace("base.csv", {{0, 0, 9}, {1000, 100, 0.5}});
  const auto four = trace("four.csv", {{0, 0, 9}, {1026, 25, 0.5}});
  const auto never = trace("never.csv", {{0, 0, 9}, {2000, 10, 2}});

  Result r = cli({"speedup", "--baseline", base, "--trace", "4=" + four, "--trace",
                  "2=" + never, "--trace", "1=" + base, "--epsilon", "1"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, l4, l2, l1;
  std::getline(lines, header);
  std::getline(lines, l4);
  std::getline(lines, l2);
  std::getline(lines, l1);
  CHECK(header == "workers,iteration_speedup,time_speedup,iterations_to_target,seconds_to_target");
  CHECK(l4 == "4,3.89864,4,1026,25");
  CHECK(l2 == "2,none,none,none,none");
  CHECK(l1 == "1,1,1,1000,100");

  r = cli({"speedup", "--baseline", never, "--trace", "4=" + four, "--epsilon", "1"});
  CHECK(r.code == 1);
  r = cli({"speedup", "--baseline", base, "--trace", "four", "--epsilon", "1"});
  CHECK(r.code == 2);
}

TEST_CASE("plotdata") {
  TempDir dir("asysg_cli_plot");
  const auto cfg = write_json(dir / "c.json", serial_config());
  REQUIRE(cli({"run", "--config", cfg.string(), "--out", (dir / "t.csv").string()}).code == 0);
  const Result r = cli({"plotdata", "--trace", (dir / "t.csv").string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "t_gradsq.dat"));
  CHECK(fs::exists(dir / "t_f.dat"));

  std::ofstream(dir / "bad.csv") << "k,t\n1,2\n";
  CHECK(cli({"plotdata", "--trace", (dir / "bad.csv").string()}).code == 2);
}

TEST_CASE("every shipped config validates and finishes within 60 s") {
  TempDir dir("asysg_cli_configs");
  int seen = 0;
  for (const auto& e : fs::directory_iterator(ASYSG_CONFIG_DIR)) {
    if (e.path().extension() != ".json") continue;
    ++seen;
    const auto start = std::chrono::steady_clock::now();
    const Result r = cli({"run", "--config", e.path().string(), "--out",
                          (dir / (e.path().stem().string() + ".csv")).string()});
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    INFO(e.path().filename().string(), " took ", secs, " s: ", r.err);
    CHECK(r.code == 0);
    CHECK(secs < 60.0);
  }
  CHECK(seen >= 6);
}
