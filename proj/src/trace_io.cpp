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

#include "pidtune/trace_io.hpp"

#include "pidtune/error.hpp"
#include "pidtune/plant_text.hpp"

#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pidtune {

namespace {

using nlohmann::ordered_json;

ordered_json objective_json(const ObjectiveValue& v) {
  return {{"total", v.total},
          {"rise_time", v.rise_time},
          {"rise_term", v.rise_term},
          {"deviation", v.deviation},
          {"rose", v.rose}};
}

const char* flag(bool b) { return b ? "true" : "false"; }

double parse_real(const std::string& field, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size()) {
    throw Error(ErrorCode::Parse, "trace csv line " + std::to_string(line) + ": bad number '" + field + "'");
  }
  return v;
}

bool parse_flag(const std::string& field, std::size_t line) {
  if (field == "true") return true;
  if (field == "false") return false;
  throw Error(ErrorCode::Parse, "trace csv line " + std::to_string(line) + ": bad flag '" + field + "'");
}

}  // namespace

std::string export_trace_csv(const SearchTrace& trace) {
  std::string out(kTraceCsvHeader);
  out += '\n';
  for (const auto& r : trace.records) {
    const auto& o = r.objective;
    out += std::to_string(r.index);
    for (double v : {r.gains.kp, r.gains.ki, r.gains.kd, o.total, o.rise_time, o.rise_term, o.deviation}) {
      out += ',';
      out += format_17g(v);
    }
    out += ',';
    out += flag(o.rose);
    out += ',';
    out += flag(r.improved);
    out += ',';
    out += format_17g(r.best_so_far);
    out += '\n';
  }
  return out;
}

std::string export_trace_json(const SearchTrace& trace, const TraceContext& context) {
  const SearchConfig& sc = trace.config;
  ordered_json config = {
      {"plant", context.plant},
      {"start", context.start},
      {"seed", context.seed ? ordered_json(*context.seed) : ordered_json(nullptr)},
      {"initial", {{"kp", context.initial.kp}, {"ki", context.initial.ki}, {"kd", context.initial.kd}}},
      {"sim", {{"t_max", context.sim.t_max}, {"dt", context.sim.dt}, {"blow_up_limit", context.sim.blow_up_limit}}},
      {"band",
       {{"upper", context.band.upper}, {"lower", context.band.lower}, {"rise_level", context.band.rise_level}}},
      {"search",
       {{"initial_step", sc.initial_step},
        {"shrink", sc.shrink},
        {"expand", sc.expand},
        {"min_step", sc.min_step},
        {"max_evals", sc.max_evals}}},
  };
  ordered_json records = ordered_json::array();
  for (const auto& r : trace.records) {
    const auto& o = r.objective;
    records.push_back({{"index", r.index},
                       {"kp", r.gains.kp},
                       {"ki", r.gains.ki},
                       {"kd", r.gains.kd},
                       {"total", o.total},
                       {"rise_time", o.rise_time},
                       {"rise_term", o.rise_term},
                       {"deviation", o.deviation},
                       {"rose", o.rose},
                       {"improved", r.improved},
                       {"best_so_far", r.best_so_far}});
  }
  ordered_json incumbent = {{"kp", trace.incumbent.kp}, {"ki", trace.incumbent.ki}, {"kd", trace.incumbent.kd}};
  incumbent.update(objective_json(trace.incumbent_value));
  ordered_json doc = {{"config", std::move(config)},
                      {"records", std::move(records)},
                      {"incumbent", std::move(incumbent)},
                      {"termination", std::string(to_string(trace.termination))}};
  return doc.dump(2) + "\n";
}

std::vector<EvaluationRecord> parse_trace_csv(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line) || line != kTraceCsvHeader) {
    throw Error(ErrorCode::Parse, "trace csv: missing or unexpected header");
  }
  std::vector<EvaluationRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream row(line);
    for (std::string f; std::getline(row, f, ',');) fields.push_back(f);
    if (fields.size() != 11) {
      throw Error(ErrorCode::Parse, "trace csv line " + std::to_string(line_no) + ": expected 11 fields");
    }
    EvaluationRecord r;
    r.index = static_cast<std::size_t>(parse_real(fields[0], line_no));
    r.gains = {parse_real(fields[1], line_no), parse_real(fields[2], line_no), parse_real(fields[3], line_no)};
    r.objective.total = parse_real(fields[4], line_no);
    r.objective.rise_time = parse_real(fields[5], line_no);
    r.objective.rise_term = parse_real(fields[6], line_no);
    r.objective.deviation = parse_real(fields[7], line_no);
    r.objective.rose = parse_flag(fields[8], line_no);
    r.improved = parse_flag(fields[9], line_no);
    r.best_so_far = parse_real(fields[10], line_no);
    records.push_back(r);
  }
  return records;
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorCode::OutputUnwritable, "cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) throw Error(ErrorCode::OutputUnwritable, "cannot write " + path.string());
}

void write_trace_files(const SearchTrace& trace, const TraceContext& context, const std::filesystem::path& dir) {
  write_text_file(dir / "trace.csv", export_trace_csv(trace));
  write_text_file(dir / "trace.json", export_trace_json(trace, context));
}

}  // namespace pidtune
