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
#include <iosfwd>
#include <string>

namespace asysg::cli {

enum ExitCode : int { kOk = 0, kRuntimeFailure = 1, kInvalidInput = 2 };

// Entry point of the asysg tool; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Trace path of replicate r: the base path itself for a single replicate,
// <stem>_seed<r><ext> otherwise.
std::filesystem::path replicate_path(const std::filesystem::path& base, std::uint32_t r,
                                     std::uint32_t replicates);

// <stem>.delays.json next to a trace file.
std::filesystem::path delays_path(const std::filesystem::path& trace);

}  // namespace asysg::cli
