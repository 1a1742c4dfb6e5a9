// Copyright 2026 The pidtune Authors.
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

#pragma once

#include "pidtune/lti.hpp"
#include "pidtune/objective.hpp"
#include "pidtune/search.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pidtune {

inline constexpr std::string_view kTraceCsvHeader =
    "index,kp,ki,kd,total,rise_time,rise_term,deviation,rose,improved,best_so_far";

// Everything besides the trace needed to reproduce a run.
struct TraceContext {
  std::string plant;  // plant text, see format_plant
  SimConfig sim;
  SettlingBand band;
  std::string start;  // "zn", "random" or "manual"
  std::optional<std::uint64_t> seed;
  PidGains initial;
};

// Header plus one row per record; reals use 17 significant digits, flags are
// written as true/false.
std::string export_trace_csv(const SearchTrace& trace);

// {config, records, incumbent, termination}; records carry the CSV field names.
std::string export_trace_json(const SearchTrace& trace, const TraceContext& context);

// Reads records back from export_trace_csv output. Throws Error(Parse).
std::vector<EvaluationRecord> parse_trace_csv(std::string_view csv);

// Writes <dir>/trace.csv and <dir>/trace.json. Throws Error(OutputUnwritable).
void write_trace_files(const SearchTrace& trace, const TraceContext& context, const std::filesystem::path& dir);

// Creates parent directories as needed. Throws Error(OutputUnwritable).
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace pidtune
