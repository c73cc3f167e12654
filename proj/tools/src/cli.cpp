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

#include "asysg_cli/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "asysg/config/config_file.hpp"
#include "asysg/core/error.hpp"
#include "asysg/harness/metrics.hpp"
#include "asysg/harness/trace_io.hpp"
#include "asysg/parallel/engines.hpp"
#include "asysg/sim/simulators.hpp"
#include "asysg/theory/theory_report.hpp"

namespace asysg::cli {
namespace fs = std::filesystem;

fs::path replicate_path(const fs::path& base, std::uint32_t r, std::uint32_t replicates) {
  if (replicates <= 1) return base;
  fs::path p = base;
  p.replace_filename(base.stem().string() + "_seed" + std::to_string(r) +
                     base.extension().string());
  return p;
}

fs::path delays_path(const fs::path& trace) {
  fs::path p = trace;
  p.replace_filename(trace.stem().string() + ".delays.json");
  return p;
}

namespace {

struct CommonArgs {
  std::string config;
  std::vector<std::string> overrides;
};

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

// A missing input file is bad input, not a runtime failure.
Trace load_trace(const fs::path& p) {
  if (!fs::is_regular_file(p)) throw ConfigError(p.string(), "no such trace file");
  return read_trace_file(p);
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int cmd_run(const CommonArgs& a, const std::string& out_path, std::optional<std::uint32_t> seeds,
            std::ostream& out, std::ostream& err) {
  std::vector<std::string> overrides = a.overrides;
  if (seeds) overrides.push_back("seeds.replicates=" + std::to_string(*seeds));
  const ConfigFile cf = load_config(a.config, overrides);
  const fs::path base = out_path.empty() ? fs::path(cf.output.trace) : fs::path(out_path);
  const auto problem = make_problem(cf.problem);

  for (std::uint32_t r = 0; r < cf.seeds.replicates; ++r) {
    RunConfig cfg = cf.run;
    cfg.seeds.master_seed = replicate_seed(cf.seeds, r);
    const fs::path path = replicate_path(base, r, cf.seeds.replicates);
    ensure_parent(path);
    Trace trace;
    if (is_sim(cfg.mode)) {
      trace = run_sim(*problem, cfg).trace;
    } else {
      ParallelResult res;
      try {
        res = run_parallel(*problem, cfg);
      } catch (const RunFailure& e) {
        write_trace_file(path, e.partial_trace());
        err << "run failed (partial trace in " << path.string() << "): " << e.what() << "\n";
        return kRuntimeFailure;
      }
      trace = std::move(res.trace);
      nlohmann::json side = to_json(res.delays);
      side["workers"] = cfg.workers;
      side["seconds"] = res.seconds;
      side["applied"] = res.applied;
      side["discarded"] = res.discarded;
      side["per_worker_work"] = res.per_worker_work;
      std::ofstream os(delays_path(path));
      os << side.dump(2) << "\n";
      if (!os) throw std::runtime_error("cannot write " + delays_path(path).string());
    }
    write_trace_file(path, trace);
    out << path.string() << ": " << trace.size() << " rows";
    if (!trace.empty()) out << ", final gradsq " << format_real(trace.rows.back().gradsq);
    out << "\n";
  }
  return kOk;
}

TheoryFamily family_of(Mode m) {
  switch (m) {
    case Mode::kInconSim:
    case Mode::kInconSparseSim:
    case Mode::kInconThreads: return TheoryFamily::kIncon;
    default: return TheoryFamily::kCon;
  }
}

int cmd_theory(const CommonArgs& a, std::ostream& out) {
  const ConfigFile cf = load_config(a.config, a.overrides);
  const auto problem = make_problem(cf.problem);
  TheoryInputs in;
  in.constants = problem->constants(cf.run.T);
  in.n = static_cast<double>(problem->dim());
  in.M = cf.run.M;
  in.K = static_cast<double>(cf.run.K);
  in.T = cf.run.T;
  if (cf.run.gamma.kind == GammaRule::Kind::kConstant && cf.run.gamma.value > 0.0) {
    in.gamma_constant = cf.run.gamma.value;
  }
  const auto& c = in.constants;
  if (!(c.L > 0.0 && c.L_max > 0.0 && c.L_T > 0.0 && c.gap > 0.0 && c.sigma_sq > 0.0)) {
    throw TheoryError("problem constants are missing or not positive (L=" + format_real(c.L) +
                      ", L_max=" + format_real(c.L_max) + ", L_T=" + format_real(c.L_T) +
                      ", gap=" + format_real(c.gap) + ", sigma_sq=" + format_real(c.sigma_sq) +
                      "); set problem.constants");
  }
  const TheoryReport r = make_theory_report(in, family_of(cf.run.mode));
  out << to_json(r).dump(2) << "\n";
  return kOk;
}

std::string cell(const std::optional<double>& v) { return v ? format_real(*v) : "none"; }
std::string cell(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : "none";
}

// Spacing of the checkpoint grid around the first crossing: the target
// could have been met anywhere in (k_prev, k_hit].
std::optional<std::uint64_t> crossing_resolution(const Trace& t, double eps) {
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.rows[i].gradsq <= eps) return i == 0 ? 0 : t.rows[i].k - t.rows[i - 1].k;
  }
  return std::nullopt;
}

int cmd_speedup(const std::string& baseline, const std::vector<std::string>& traces,
                double epsilon, std::ostream& out, std::ostream& err) {
  if (!(epsilon > 0.0)) throw ConfigError("--epsilon", "must be positive");
  const Trace base = load_trace(baseline);
  if (!iterations_to_target(base, epsilon)) {
    err << "baseline " << baseline << " never reaches gradsq <= " << format_real(epsilon)
        << "\n";
    return kRuntimeFailure;
  }
  std::vector<std::pair<std::uint32_t, Trace>> rows;
  for (const std::string& spec : traces) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw ConfigError("--trace", "expected WORKERS=PATH, got " + spec);
    std::uint32_t w = 0;
    try {
      const unsigned long v = std::stoul(spec.substr(0, eq));
      if (v == 0 || v > 0xffffffffUL) throw std::out_of_range("workers");
      w = static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
      throw ConfigError("--trace", "bad worker count in " + spec);
    }
    rows.emplace_back(w, load_trace(spec.substr(eq + 1)));
  }
  out << "workers,iteration_speedup,time_speedup,iterations_to_target,seconds_to_target\n";
  err << "# baseline checkpoint resolution at target: "
      << cell(crossing_resolution(base, epsilon)) << " iterations\n";
  for (const auto& [w, t] : rows) {
    const SpeedupRow r = speedup_row(base, t, w, epsilon);
    out << r.workers << "," << cell(r.iteration_speedup) << "," << cell(r.time_speedup) << ","
        << cell(r.iterations_to_target) << "," << cell(r.seconds_to_target) << "\n";
    err << "# workers=" << w << " checkpoint resolution at target: "
        << cell(crossing_resolution(t, epsilon)) << " iterations\n";
  }
  return kOk;
}

int cmd_plotdata(const std::string& trace, const std::string& out_stem, std::ostream& out) {
  const Trace t = load_trace(trace);
  fs::path stem = out_stem.empty() ? fs::path(trace).replace_extension() : fs::path(out_stem);
  ensure_parent(stem);
  for (const fs::path& p : write_plot_data(t, stem)) out << p.string() << "\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Asynchronous stochastic gradient experiments", "asysg"};
  app.require_subcommand(1);

  CommonArgs run_args;
  std::string run_out;
  std::optional<std::uint32_t> run_seeds;
  CLI::App* run_cmd = app.add_subcommand("run", "Run an experiment and write trace CSVs");
  run_cmd->add_option("--config", run_args.config, "JSON config file")->required();
  run_cmd->add_option("--override", run_args.overrides, "section.key=value (repeatable)");
  run_cmd->add_option("--out", run_out, "Trace path (default: output.trace)");
  run_cmd->add_option("--seeds", run_seeds, "Number of replicate seeds")
      ->check(CLI::PositiveNumber);

  CommonArgs theory_args;
  CLI::App* theory_cmd = app.add_subcommand("theory", "Print steplengths, conditions and bounds");
  theory_cmd->add_option("--config", theory_args.config, "JSON config file")->required();
  theory_cmd->add_option("--override", theory_args.overrides, "section.key=value (repeatable)");

  std::string baseline;
  std::vector<std::string> traces;
  double epsilon = 0.0;
  CLI::App* speedup_cmd = app.add_subcommand("speedup", "Speedup table against a baseline trace");
  speedup_cmd->add_option("--baseline", baseline, "Serial or one-worker trace")->required();
  speedup_cmd->add_option("--trace", traces, "WORKERS=PATH (repeatable)")->required();
  speedup_cmd->add_option("--epsilon", epsilon, "Target gradsq")->required();

  std::string plot_trace, plot_out;
  CLI::App* plot_cmd = app.add_subcommand("plotdata", "Write two-column plot files from a trace");
  plot_cmd->add_option("--trace", plot_trace, "Trace CSV")->required();
  plot_cmd->add_option("--out", plot_out, "Output stem (default: trace path without .csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInvalidInput;
  }

  try {
    if (*run_cmd) return cmd_run(run_args, run_out, run_seeds, out, err);
    if (*theory_cmd) return cmd_theory(theory_args, out);
    if (*speedup_cmd) return cmd_speedup(baseline, traces, epsilon, out, err);
    if (*plot_cmd) return cmd_plotdata(plot_trace, plot_out, out);
  } catch (const ConfigError& e) {
    err << "invalid config: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const ParseError& e) {
    err << "invalid trace: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const TheoryError& e) {
    err << "theory: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const DimensionError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kInvalidInput;
}

}  // namespace asysg::cli
