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

#include "asysg/harness/bound_report.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "asysg/core/error.hpp"
#include "asysg/harness/metrics.hpp"

namespace asysg {

BoundReport bound_report(const std::vector<Trace>& traces, const TheoryReport& theory,
                         double tolerance) {
  if (traces.empty()) throw std::invalid_argument("bound_report: no traces");
  for (const Trace& t : traces) {
    if (t.config_id != traces.front().config_id) {
      throw ConfigError("traces", "config mismatch: '" + t.config_id + "' vs '" +
                                      traces.front().config_id + "'");
    }
  }
  BoundReport rep;
  rep.seeds = traces.size();
  rep.low_seed_count = rep.seeds < kLowSeedCount;
  rep.tolerance = tolerance;
  for (const Trace& t : traces) {
    rep.mean_min_gradsq += trace_min_gradsq(t);
    rep.mean_ergodic += trace_ergodic_average(t);
  }
  rep.mean_min_gradsq /= static_cast<double>(rep.seeds);
  rep.mean_ergodic /= static_cast<double>(rep.seeds);

  std::optional<double> eq16_42;
  if (theory.bound_eq16 || theory.bound_eq42) {
    eq16_42 = std::max(theory.bound_eq16.value_or(0.0), theory.bound_eq42.value_or(0.0));
  }
  struct Entry {
    const char* key;
    std::optional<double> value;
    const char* primary;  // statistic that decides pass/fail
  };
  const Entry entries[] = {
      {"bound_eq8", theory.bound_eq8, "ergodic"},
      {"bound_eq11", theory.bound_eq11, "min"},
      {"bound_eq16", theory.bound_eq16, nullptr},
      {"bound_eq42", theory.bound_eq42, nullptr},
      {"max(bound_eq16,bound_eq42)", eq16_42, "ergodic"},
      {"bound_eq19", theory.bound_eq19, "min"},
      {"bound_eq20", theory.bound_eq20, "ergodic"},
  };
  bool any = false;
  bool all = true;
  for (const Entry& e : entries) {
    if (!e.value) continue;
    for (const char* stat : {"min", "ergodic"}) {
      BoundComparison c;
      c.bound = e.key;
      c.statistic = stat;
      c.empirical = std::string_view(stat) == "min" ? rep.mean_min_gradsq : rep.mean_ergodic;
      c.bound_value = *e.value;
      c.pass = c.empirical <= tolerance * c.bound_value;
      if (e.primary && std::string_view(stat) == e.primary) {
        any = true;
        all = all && c.pass;
      }
      rep.comparisons.push_back(c);
    }
  }
  rep.pass = any && all;
  return rep;
}

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const BoundComparison& c : r.comparisons) {
    rows.push_back({{"bound", c.bound},
                    {"statistic", c.statistic},
                    {"empirical", c.empirical},
                    {"bound_value", c.bound_value},
                    {"pass", c.pass}});
  }
  return {{"seeds", r.seeds},
          {"low_seed_count", r.low_seed_count},
          {"tolerance", r.tolerance},
          {"mean_min_gradsq", r.mean_min_gradsq},
          {"mean_ergodic", r.mean_ergodic},
          {"comparisons", rows},
          {"pass", r.pass}};
}

}  // namespace asysg
