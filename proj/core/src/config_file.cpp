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

#include "asysg/config/config_file.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "asysg/core/error.hpp"
#include "asysg/problems/least_squares.hpp"
#include "asysg/problems/mlp.hpp"
#include "asysg/problems/noisy_quadratic.hpp"

namespace asysg {
namespace {

using nlohmann::json;

// Reads fields of one JSON object and rejects the keys nobody asked for.
class Section {
 public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_, "must be an object");
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json* get(const std::string& key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  double real(const std::string& key, double fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(field(key), "must be a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) throw ConfigError(field(key), "must be finite");
    return d;
  }

  std::optional<double> optional_real(const std::string& key) {
    if (!has(key)) {
      seen_.insert(key);
      return std::nullopt;
    }
    return real(key, 0.0);
  }

  // Nonnegative integer; integral reals such as 1e4 are accepted.
  std::uint64_t count(const std::string& key, std::uint64_t fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (v->is_number_unsigned()) return v->get<std::uint64_t>();
    if (v->is_number_integer()) {
      const std::int64_t i = v->get<std::int64_t>();
      if (i >= 0) return static_cast<std::uint64_t>(i);
      throw ConfigError(field(key), "must be a nonnegative integer, got " + v->dump());
    }
    if (v->is_number_float()) {
      const double d = v->get<double>();
      if (d >= 0.0 && d < 1.8e19 && std::floor(d) == d) return static_cast<std::uint64_t>(d);
    }
    throw ConfigError(field(key), "must be a nonnegative integer, got " + v->dump());
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(field(key), "must be true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(field(key), "must be a string");
    return v->get<std::string>();
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(field(it.key()), "unknown key");
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

std::uint32_t narrow32(std::uint64_t v, const std::string& field) {
  if (v > 0xffffffffULL) throw ConfigError(field, "too large");
  return static_cast<std::uint32_t>(v);
}

ProblemSection parse_problem(const json& doc) {
  ProblemSection p;
  Section s(doc, "problem");
  p.type = s.string("type", p.type);
  if (p.type != "noisy_quadratic" && p.type != "least_squares" && p.type != "mlp") {
    throw ConfigError("problem.type", "unknown problem type '" + p.type + "'");
  }
  p.seed = s.count("seed", p.seed);
  p.dim = static_cast<std::size_t>(s.count("dim", p.dim));
  if (p.type == "mlp") p.samples = 46380;
  p.samples = s.count("samples", p.samples);
  p.sigma = s.real("sigma", p.sigma);
  p.lambda_min = s.real("lambda_min", p.lambda_min);
  p.lambda_max = s.real("lambda_max", p.lambda_max);
  p.rotate = s.boolean("rotate", p.rotate);
  p.gap = s.real("gap", p.gap);
  p.noise = s.real("noise", p.noise);
  if (const json* w = s.get("widths")) {
    if (!w->is_array() || w->size() < 2) {
      throw ConfigError("problem.widths", "must be an array of at least two widths");
    }
    p.widths.clear();
    for (const json& v : *w) {
      if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) {
        throw ConfigError("problem.widths", "widths must be positive integers");
      }
      p.widths.push_back(v.get<std::size_t>());
    }
  }
  if (const json* c = s.get("constants")) {
    Section cs(*c, "problem.constants");
    p.constants.L = cs.optional_real("L");
    p.constants.L_max = cs.optional_real("L_max");
    p.constants.L_T = cs.optional_real("L_T");
    p.constants.sigma_sq = cs.optional_real("sigma_sq");
    p.constants.gap = cs.optional_real("gap");
    cs.finish();
  }
  s.finish();

  if (p.dim == 0) throw ConfigError("problem.dim", "must be >= 1");
  if (p.samples == 0) throw ConfigError("problem.samples", "must be >= 1");
  if (p.type == "noisy_quadratic" && p.samples % 2 != 0) {
    throw ConfigError("problem.samples", "noisy_quadratic needs an even sample count");
  }
  if (p.sigma < 0.0) throw ConfigError("problem.sigma", "must be >= 0");
  if (p.noise < 0.0) throw ConfigError("problem.noise", "must be >= 0");
  return p;
}

GammaRule parse_gamma(const json& v) {
  if (v.is_number()) return GammaRule::constant(v.get<double>());
  std::string rule;
  double value = 0.0;
  if (v.is_string()) {
    rule = v.get<std::string>();
  } else {
    Section g(v, "algorithm.gamma");
    rule = g.string("rule", "constant");
    value = g.real("value", 0.0);
    g.finish();
  }
  if (rule == "constant") return GammaRule::constant(value);
  if (rule == "corollary2") return GammaRule::corollary2();
  if (rule == "corollary4") return GammaRule::corollary4();
  throw ConfigError("algorithm.gamma.rule", "unknown rule '" + rule + "'");
}

DelayModel parse_delay_model(const json& v) {
  Section d(v, "algorithm.delay_model");
  const std::string kind = d.string("kind", "fixed");
  const std::uint64_t tau = d.count("tau", 0);
  d.finish();
  if (kind == "fixed") return DelayModel::fixed(tau);
  if (kind == "uniform") return DelayModel::uniform();
  if (kind == "cyclic") return DelayModel::cyclic();
  throw ConfigError("algorithm.delay_model.kind", "unknown delay model '" + kind + "'");
}

ReadModel parse_read_model(const json& v) {
  Section r(v, "algorithm.read_model");
  const std::string kind = r.string("kind", "prefix");
  const std::uint64_t tau = r.count("tau", 0);
  const double p = r.real("p", 0.5);
  r.finish();
  if (kind == "prefix") return ReadModel::prefix(tau);
  if (kind == "random_subset") return ReadModel::random_subset(p);
  throw ConfigError("algorithm.read_model.kind", "unknown read model '" + kind + "'");
}

RunConfig parse_algorithm(const json& doc) {
  RunConfig cfg;
  Section s(doc, "algorithm");
  const std::string mode = s.string("mode", "serial");
  const auto parsed = parse_mode(mode);
  if (!parsed) throw ConfigError("algorithm.mode", "unknown mode '" + mode + "'");
  cfg.mode = *parsed;
  cfg.K = s.count("K", cfg.K);
  cfg.M = narrow32(s.count("M", cfg.M), "algorithm.M");
  cfg.T = s.count("T", cfg.T);
  cfg.workers = narrow32(s.count("workers", cfg.workers), "algorithm.workers");
  if (const json* g = s.get("gamma")) cfg.gamma = parse_gamma(*g);
  if (const json* d = s.get("delay_model")) cfg.delay_model = parse_delay_model(*d);
  if (const json* r = s.get("read_model")) cfg.read_model = parse_read_model(*r);
  cfg.eval_samples = s.count("eval_samples", 0);
  const std::string clock = s.string("clock", is_threaded(cfg.mode) ? "wall" : "logical");
  if (clock == "logical") {
    cfg.clock = Clock::kLogical;
  } else if (clock == "wall") {
    cfg.clock = Clock::kWall;
  } else {
    throw ConfigError("algorithm.clock", "must be 'logical' or 'wall'");
  }
  if (is_threaded(cfg.mode)) cfg.clock = Clock::kWall;
  s.finish();
  return cfg;
}

// Forwards every oracle call; only constants() changes.
class OverriddenConstants final : public Problem {
 public:
  OverriddenConstants(std::unique_ptr<Problem> inner, ConstantsOverride o)
      : inner_(std::move(inner)), o_(o) {}

  std::string name() const override { return inner_->name(); }
  std::size_t dim() const override { return inner_->dim(); }
  std::uint64_t sample_count() const override { return inner_->sample_count(); }
  const ParamVector& initial_point() const override { return inner_->initial_point(); }
  double sample_loss(std::span<const double> x, std::uint64_t xi) const override {
    return inner_->sample_loss(x, xi);
  }
  void sample_gradient(std::span<const double> x, std::uint64_t xi,
                       std::span<double> out) const override {
    inner_->sample_gradient(x, xi, out);
  }
  double sample_partial(std::span<const double> x, std::uint64_t xi,
                        std::size_t coord) const override {
    return inner_->sample_partial(x, xi, coord);
  }
  double objective_prefix(std::span<const double> x, std::uint64_t count) const override {
    return inner_->objective_prefix(x, count);
  }
  void gradient_prefix(std::span<const double> x, std::uint64_t count,
                       std::span<double> out) const override {
    inner_->gradient_prefix(x, count, out);
  }
  double objective(std::span<const double> x) const override { return inner_->objective(x); }
  void full_gradient(std::span<const double> x, std::span<double> out) const override {
    inner_->full_gradient(x, out);
  }

  ProblemConstants constants(std::uint64_t T) const override {
    ProblemConstants c;
    if (!o_.complete()) c = inner_->constants(T);
    c.T = T;
    if (o_.L) c.L = *o_.L;
    if (o_.L_max) c.L_max = *o_.L_max;
    if (o_.L_T) c.L_T = *o_.L_T;
    if (o_.sigma_sq) c.sigma_sq = *o_.sigma_sq;
    if (o_.gap) c.gap = *o_.gap;
    return c;
  }

 private:
  std::unique_ptr<Problem> inner_;
  ConstantsOverride o_;
};

}  // namespace

void apply_override(json& doc, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError(assignment, "override must look like section.key=value");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos
                                                                        : dot - start);
    if (key.empty()) throw ConfigError(path, "empty path component");
    if (!node->is_object()) throw ConfigError(path, "cannot descend into a non-object");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    if (node->is_null()) *node = json::object();
    start = dot + 1;
  }
}

ConfigFile parse_config(const json& doc) {
  ConfigFile cf;
  Section top(doc, "");
  if (const json* p = top.get("problem")) cf.problem = parse_problem(*p);
  if (const json* a = top.get("algorithm")) cf.run = parse_algorithm(*a);
  if (const json* o = top.get("output")) {
    Section s(*o, "output");
    cf.output.trace = s.string("trace", cf.output.trace);
    cf.output.checkpoint_every = s.count("checkpoint_every", cf.output.checkpoint_every);
    s.finish();
  }
  if (const json* sd = top.get("seeds")) {
    Section s(*sd, "seeds");
    cf.seeds.master = s.count("master", cf.seeds.master);
    cf.seeds.replicates = narrow32(s.count("replicates", cf.seeds.replicates), "seeds.replicates");
    s.finish();
  }
  top.finish();
  if (cf.seeds.replicates == 0) throw ConfigError("seeds.replicates", "must be >= 1");
  cf.run.checkpoint_every = cf.output.checkpoint_every;
  cf.run.seeds.master_seed = cf.seeds.master;
  validate(cf.run);
  return cf;
}

ConfigFile load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream is(path);
  if (!is) throw ConfigError(path.string(), "cannot open config file");
  json doc = json::parse(is, nullptr, false);
  if (doc.is_discarded()) throw ConfigError(path.string(), "not valid JSON");
  for (const std::string& o : overrides) apply_override(doc, o);
  return parse_config(doc);
}

std::unique_ptr<Problem> make_problem(const ProblemSection& s) {
  std::unique_ptr<Problem> p;
  if (s.type == "noisy_quadratic") {
    NoisyQuadraticSpec spec = random_quadratic_spec(s.dim, s.lambda_min, s.lambda_max, s.rotate,
                                                    s.sigma, s.samples, s.gap, s.seed);
    p = std::make_unique<NoisyQuadratic>(std::move(spec), s.seed);
  } else if (s.type == "least_squares") {
    p = std::make_unique<LeastSquares>(LeastSquares::random(s.dim, s.samples, s.noise, s.seed));
  } else if (s.type == "mlp") {
    MlpSpec spec;
    spec.widths = s.widths;
    spec.samples = s.samples;
    spec.noise_std = s.noise;
    p = std::make_unique<SyntheticMlp>(std::move(spec), s.seed);
  } else {
    throw ConfigError("problem.type", "unknown problem type '" + s.type + "'");
  }
  if (s.constants.any()) p = std::make_unique<OverriddenConstants>(std::move(p), s.constants);
  return p;
}

std::uint64_t replicate_seed(const SeedsSection& seeds, std::uint32_t r) noexcept {
  return seeds.master + r;
}

}  // namespace asysg
