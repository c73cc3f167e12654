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

#include "asysg/theory/theory_report.hpp"

#include <cmath>

#include "asysg/core/error.hpp"
#include "asysg/theory/steplength.hpp"

namespace asysg {
namespace {

template <typename F>
auto attempt(std::vector<std::string>& notes, const char* key, F&& fn)
    -> std::optional<decltype(fn())> {
  try {
    return fn();
  } catch (const TheoryError& e) {
    notes.push_back(std::string(key) + ": " + e.what());
    return std::nullopt;
  }
}

template <typename T>
nlohmann::json opt(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

const char* family_name(TheoryFamily f) {
  switch (f) {
    case TheoryFamily::kCon: return "con";
    case TheoryFamily::kIncon: return "incon";
    case TheoryFamily::kBoth: return "both";
  }
  return "both";
}

void fill_con(TheoryReport& r) {
  const TheoryInputs& in = r.inputs;
  const ProblemConstants& c = in.constants;
  auto& notes = r.notes;
  r.gamma_eq9 = attempt(notes, "gamma_eq9",
                        [&] { return steplength_corollary2(c.gap, in.M, c.L, in.K, c.sigma_sq); });
  r.kmin_eq10 = attempt(notes, "kmin_eq10",
                        [&] { return k_threshold_corollary2(c.gap, in.M, c.L, c.sigma_sq, in.T); });
  const std::optional<double> g = in.gamma_constant ? in.gamma_constant : r.gamma_eq9;
  if (g) {
    r.lhs_eq7 = condition_thm1_lhs(*g, c.L, in.M, in.T);
    r.cond_eq7 = attempt(notes, "cond_eq7", [&] { return check_condition_thm1(*g, c.L, in.M, in.T); });
    r.bound_eq8 = attempt(notes, "bound_eq8", [&] {
      return bound_con(c.gap, in.M, c.L, in.K, c.sigma_sq, in.T, *g, ConBound::kThm1Constant);
    });
  }
  r.bound_eq11 = attempt(notes, "bound_eq11", [&] {
    return bound_con(c.gap, in.M, c.L, in.K, c.sigma_sq, in.T, 0.0, ConBound::kCorollary2);
  });
}

void fill_incon(TheoryReport& r) {
  const TheoryInputs& in = r.inputs;
  const ProblemConstants& c = in.constants;
  auto& notes = r.notes;
  r.gamma_eq17 = attempt(notes, "gamma_eq17", [&] {
    return steplength_corollary4(c.gap, in.n, in.K, c.L_T, in.M, std::sqrt(c.sigma_sq));
  });
  r.kmin_eq18 = attempt(notes, "kmin_eq18", [&] {
    return k_threshold_corollary4(c.gap, c.L_T, in.M, in.n, in.T, c.sigma_sq);
  });
  InconBoundArgs a;
  a.gap = c.gap;
  a.n = in.n;
  a.K = in.K;
  a.M = in.M;
  a.T = in.T;
  a.L_T = c.L_T;
  a.L_max = c.L_max;
  a.sigma_sq = c.sigma_sq;
  a.g0max = in.g0max.value_or(in.n);
  const std::optional<double> g = in.gamma_constant ? in.gamma_constant : r.gamma_eq17;
  if (g) {
    a.gamma = *g;
    r.lhs_eq15 = condition_thm3_lhs(*g, in.M, in.T, c.L_T, c.L_max, in.n);
    r.cond_eq15 = attempt(notes, "cond_eq15",
                          [&] { return check_condition_thm3(*g, in.M, in.T, c.L_T, c.L_max, in.n); });
    r.bound_eq16 = attempt(notes, "bound_eq16", [&] { return bound_incon(a, InconBound::kThm3); });
    r.bound_eq42 =
        attempt(notes, "bound_eq42", [&] { return bound_incon(a, InconBound::kThm3Appendix); });
  }
  r.bound_eq19 = attempt(notes, "bound_eq19", [&] { return bound_incon(a, InconBound::kCorollary4); });
  r.bound_eq20 = attempt(notes, "bound_eq20", [&] { return bound_incon(a, InconBound::kSparse); });
}

}  // namespace

TheoryReport make_theory_report(const TheoryInputs& inputs, TheoryFamily family) {
  TheoryReport r;
  r.inputs = inputs;
  r.family = family;
  if (family != TheoryFamily::kIncon) fill_con(r);
  if (family != TheoryFamily::kCon) fill_incon(r);

  if (family == TheoryFamily::kIncon) {
    r.gamma = inputs.gamma_constant.value_or(r.gamma_eq17.value_or(0.0));
    r.condition_ok = r.cond_eq15.value_or(false);
    r.K_threshold = r.kmin_eq18.value_or(0);
    r.bound_value = r.bound_eq19;
  } else {
    r.gamma = inputs.gamma_constant.value_or(r.gamma_eq9.value_or(0.0));
    r.condition_ok = r.cond_eq7.value_or(false);
    r.K_threshold = r.kmin_eq10.value_or(0);
    r.bound_value = r.bound_eq11;
  }
  return r;
}

bool recheck_condition(const TheoryReport& r) {
  const TheoryInputs& in = r.inputs;
  const ProblemConstants& c = in.constants;
  if (r.family == TheoryFamily::kIncon) {
    return check_condition_thm3(r.gamma, in.M, in.T, c.L_T, c.L_max, in.n);
  }
  return check_condition_thm1(r.gamma, c.L, in.M, in.T);
}

nlohmann::json to_json(const TheoryReport& r) {
  const TheoryInputs& in = r.inputs;
  const ProblemConstants& c = in.constants;
  nlohmann::json j;
  j["family"] = family_name(r.family);
  j["constants"] = c.estimated ? "estimated" : "analytic";
  j["inputs"] = {{"gap", c.gap}, {"L", c.L},       {"L_max", c.L_max}, {"L_T", c.L_T},
                 {"sigma_sq", c.sigma_sq},         {"n", in.n},       {"M", in.M},
                 {"K", in.K},     {"T", in.T},     {"gamma_constant", opt(in.gamma_constant)},
                 {"g0max", in.g0max.value_or(in.n)}};
  if (r.family != TheoryFamily::kIncon) {
    j["gamma_eq9"] = opt(r.gamma_eq9);
    j["kmin_eq10"] = opt(r.kmin_eq10);
    j["lhs_eq7"] = opt(r.lhs_eq7);
    j["cond_eq7"] = opt(r.cond_eq7);
    j["bound_eq8"] = opt(r.bound_eq8);
    j["bound_eq11"] = opt(r.bound_eq11);
  }
  if (r.family != TheoryFamily::kCon) {
    j["gamma_eq17"] = opt(r.gamma_eq17);
    j["kmin_eq18"] = opt(r.kmin_eq18);
    j["lhs_eq15"] = opt(r.lhs_eq15);
    j["cond_eq15"] = opt(r.cond_eq15);
    j["bound_eq16"] = opt(r.bound_eq16);
    j["bound_eq42"] = opt(r.bound_eq42);
    j["bound_eq19"] = opt(r.bound_eq19);
    j["bound_eq20"] = opt(r.bound_eq20);
  }
  j["gamma"] = r.gamma;
  j["condition_ok"] = r.condition_ok;
  j["K_threshold"] = r.K_threshold;
  j["bound_value"] = opt(r.bound_value);
  j["notes"] = r.notes;
  return j;
}

}  // namespace asysg
