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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "asysg/core/trace.hpp"

namespace asysg {

inline constexpr const char* kTraceHeader = "k,t,f,gradsq,gamma,max_delay_observed";

// Notes first ('# ' lines), then the header, then one row per checkpoint with
// reals at 17 significant digits so every value round-trips exactly.
void write_trace_csv(std::ostream& os, const Trace& trace);
std::string trace_to_csv(const Trace& trace);
void write_trace_file(const std::filesystem::path& path, const Trace& trace);

// Throws ParseError naming the 1-based line of the first malformed line. A
// "# config <id>" note restores config_id.
Trace parse_trace_csv(std::istream& is);
Trace parse_trace_csv(const std::string& text);
Trace read_trace_file(const std::filesystem::path& path);

// Two-column "x y" files, one per curve: <stem>_f.dat, <stem>_gradsq.dat,
// <stem>_max_delay.dat (all against k) and <stem>_gradsq_time.dat (against
// t). Returns the paths written.
std::vector<std::filesystem::path> write_plot_data(const Trace& trace,
                                                   const std::filesystem::path& stem);

}  // namespace asysg
