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

#include "asysg/harness/trace_io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "asysg/core/error.hpp"

namespace asysg {
namespace {

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

double parse_real(std::string_view field, std::size_t line, const char* name) {
  const std::string f(trim(field));
  if (f.empty()) throw ParseError(line, std::string("empty ") + name);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(f.c_str(), &end);
  if (end != f.c_str() + f.size()) {
    throw ParseError(line, std::string("non-numeric ") + name + " '" + f + "'");
  }
  return v;
}

std::uint64_t parse_count(std::string_view field, std::size_t line, const char* name) {
  const std::string_view f = trim(field);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
    throw ParseError(line, std::string("invalid ") + name + " '" + std::string(f) + "'");
  }
  return v;
}

}  // namespace

void write_trace_csv(std::ostream& os, const Trace& trace) {
  for (const std::string& note : trace.notes) os << "# " << note << '\n';
  os << kTraceHeader << '\n';
  for (const TraceRow& r : trace.rows) {
    os << r.k << ',' << real(r.t) << ',' << real(r.f) << ',' << real(r.gradsq) << ','
       << real(r.gamma) << ',' << r.max_delay_observed << '\n';
  }
}

std::string trace_to_csv(const Trace& trace) {
  std::ostringstream os;
  write_trace_csv(os, trace);
  return os.str();
}

void write_trace_file(const std::filesystem::path& path, const Trace& trace) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_trace_csv(os, trace);
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

Trace parse_trace_csv(std::istream& is) {
  Trace trace;
  std::string raw;
  std::size_t line = 0;
  bool header_seen = false;
  while (std::getline(is, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (!header_seen) {
      if (!text.empty() && text.front() == '#') {
        std::string_view note = text.substr(1);
        if (!note.empty() && note.front() == ' ') note.remove_prefix(1);
        trace.notes.emplace_back(note);
        if (note.substr(0, 7) == "config ") trace.config_id = std::string(note.substr(7));
        continue;
      }
      if (text != kTraceHeader) {
        throw ParseError(line, "expected header '" + std::string(kTraceHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    if (text.empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = text.find(',', start);
      fields.push_back(text.substr(start, comma == std::string_view::npos ? text.npos
                                                                          : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 6) {
      throw ParseError(line, "expected 6 fields, found " + std::to_string(fields.size()));
    }
    TraceRow r;
    r.k = parse_count(fields[0], line, "k");
    r.t = parse_real(fields[1], line, "t");
    r.f = parse_real(fields[2], line, "f");
    r.gradsq = parse_real(fields[3], line, "gradsq");
    r.gamma = parse_real(fields[4], line, "gamma");
    r.max_delay_observed = parse_count(fields[5], line, "max_delay_observed");
    if (!trace.rows.empty() && r.k <= trace.rows.back().k) {
      throw ParseError(line, "k must be strictly increasing");
    }
    trace.rows.push_back(r);
  }
  if (!header_seen) throw ParseError(line + 1, "missing header");
  return trace;
}

Trace parse_trace_csv(const std::string& text) {
  std::istringstream is(text);
  return parse_trace_csv(is);
}

Trace read_trace_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return parse_trace_csv(is);
}

std::vector<std::filesystem::path> write_plot_data(const Trace& trace,
                                                   const std::filesystem::path& stem) {
  struct Curve {
    const char* suffix;
    bool by_time;
    double (*y)(const TraceRow&);
  };
  static const Curve curves[] = {
      {"_f.dat", false, [](const TraceRow& r) { return r.f; }},
      {"_gradsq.dat", false, [](const TraceRow& r) { return r.gradsq; }},
      {"_max_delay.dat", false,
       [](const TraceRow& r) { return static_cast<double>(r.max_delay_observed); }},
      {"_gradsq_time.dat", true, [](const TraceRow& r) { return r.gradsq; }},
  };
  if (stem.has_parent_path()) std::filesystem::create_directories(stem.parent_path());
  std::vector<std::filesystem::path> out;
  for (const Curve& c : curves) {
    std::filesystem::path path = stem;
    path += c.suffix;
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (const TraceRow& r : trace.rows) {
      const double x = c.by_time ? r.t : static_cast<double>(r.k);
      os << real(x) << ' ' << real(c.y(r)) << '\n';
    }
    out.push_back(path);
  }
  return out;
}

}  // namespace asysg
