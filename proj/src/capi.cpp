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

#include "pidtune/pidtune.h"

#include "pidtune/error.hpp"
#include "pidtune/lti.hpp"
#include "pidtune/objective.hpp"
#include "pidtune/plant_text.hpp"
#include "pidtune/render.hpp"
#include "pidtune/search.hpp"
#include "pidtune/trace_io.hpp"
#include "pidtune/tuning.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct pt_plant {
  pidtune::TransferFunction tf;
  std::string text;
};

struct pt_response {
  pidtune::StepResponse response;
};

struct pt_trace {
  pidtune::SearchTrace trace;
  pidtune::TransferFunction plant;
  pidtune::TraceContext context;
};

namespace {

thread_local std::string last_error;

pt_status to_status(pidtune::ErrorCode code) {
  using pidtune::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return PT_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return PT_ERR_PARSE;
    case ErrorCode::ImproperLoop: return PT_ERR_IMPROPER_LOOP;
    case ErrorCode::ImproperSystem: return PT_ERR_IMPROPER_SYSTEM;
    case ErrorCode::NoUltimateGain: return PT_ERR_NO_ULTIMATE_GAIN;
    case ErrorCode::NonFiniteStart: return PT_ERR_NON_FINITE_START;
    case ErrorCode::ResampleExhausted: return PT_ERR_RESAMPLE_EXHAUSTED;
    case ErrorCode::OutputUnwritable: return PT_ERR_OUTPUT_UNWRITABLE;
  }
  return PT_ERR_INTERNAL;
}

pt_status fail(pt_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename Fn>
pt_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return PT_OK;
  } catch (const pidtune::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PT_ERR_INTERNAL, "unknown error");
  }
}

template <typename... Ptrs>
bool any_null(const Ptrs*... ptrs) {
  return ((ptrs == nullptr) || ...);
}

pt_status null_argument(const char* fn) { return fail(PT_ERR_INVALID_ARGUMENT, std::string(fn) + ": null argument"); }

pidtune::PidGains from_c(const pt_gains& g) { return {g.kp, g.ki, g.kd}; }
pt_gains to_c(const pidtune::PidGains& g) { return {g.kp, g.ki, g.kd}; }
pidtune::SimConfig from_c(const pt_sim_config& c) { return {c.t_max, c.dt, c.blow_up_limit}; }
pidtune::SettlingBand from_c(const pt_band& b) { return {b.upper, b.lower, b.rise_level}; }

pidtune::SearchConfig from_c(const pt_search_config& c) {
  pidtune::SearchConfig out;
  out.initial_step = c.initial_step;
  out.shrink = c.shrink;
  out.expand = c.expand;
  out.min_step = c.min_step;
  out.max_evals = static_cast<std::size_t>(c.max_evals);
  return out;
}

pidtune::RandomStartConfig from_c(const pt_random_config& c) {
  pidtune::RandomStartConfig out;
  out.seed = c.seed;
  for (std::size_t i = 0; i < 3; ++i) {
    out.low[i] = c.low[i];
    out.high[i] = c.high[i];
  }
  return out;
}

pt_objective to_c(const pidtune::ObjectiveValue& v) {
  return {v.total, v.rise_time, v.rise_term, v.deviation, v.rose ? 1 : 0};
}

pt_plant* make_plant(pidtune::TransferFunction tf) {
  std::string text = pidtune::format_plant(tf);
  return new pt_plant{std::move(tf), std::move(text)};
}

}  // namespace

extern "C" {

const char* pt_version(void) { return "1.0.0"; }

const char* pt_last_error(void) { return last_error.c_str(); }

const char* pt_status_name(pt_status status) {
  switch (status) {
    case PT_OK: return "OK";
    case PT_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case PT_ERR_PARSE: return "ParseError";
    case PT_ERR_IMPROPER_LOOP: return "ImproperLoop";
    case PT_ERR_IMPROPER_SYSTEM: return "ImproperSystem";
    case PT_ERR_NO_ULTIMATE_GAIN: return "NoUltimateGain";
    case PT_ERR_NON_FINITE_START: return "NonFiniteStart";
    case PT_ERR_RESAMPLE_EXHAUSTED: return "ResampleExhausted";
    case PT_ERR_OUTPUT_UNWRITABLE: return "OutputUnwritable";
    case PT_ERR_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

void pt_sim_config_default(pt_sim_config* out) {
  if (!out) return;
  const pidtune::SimConfig d;
  *out = {d.t_max, d.dt, d.blow_up_limit};
}

void pt_band_default(pt_band* out) {
  if (!out) return;
  const pidtune::SettlingBand d;
  *out = {d.upper, d.lower, d.rise_level};
}

void pt_search_config_default(pt_search_config* out) {
  if (!out) return;
  const pidtune::SearchConfig d;
  *out = {d.initial_step, d.shrink, d.expand, d.min_step, static_cast<uint64_t>(d.max_evals)};
}

void pt_random_config_default(pt_random_config* out, uint64_t seed) {
  if (!out) return;
  const pidtune::RandomStartConfig d;
  out->seed = seed;
  for (std::size_t i = 0; i < 3; ++i) {
    out->low[i] = d.low[i];
    out->high[i] = d.high[i];
  }
}

pt_status pt_plant_parse(const char* text, pt_plant** out) {
  if (any_null(text, out)) return null_argument("pt_plant_parse");
  *out = nullptr;
  return guarded([&] { *out = make_plant(pidtune::parse_plant(text)); });
}

pt_status pt_plant_create(const double* num, size_t num_len, const double* den, size_t den_len, pt_plant** out) {
  if (any_null(num, den, out)) return null_argument("pt_plant_create");
  *out = nullptr;
  return guarded([&] {
    pidtune::TransferFunction tf(pidtune::Poly(num, num + num_len), pidtune::Poly(den, den + den_len));
    if (!tf.is_proper()) throw pidtune::Error(pidtune::ErrorCode::ImproperSystem, "plant must be proper");
    *out = make_plant(std::move(tf));
  });
}

void pt_plant_free(pt_plant* plant) { delete plant; }

const char* pt_plant_text(const pt_plant* plant) { return plant ? plant->text.c_str() : ""; }

int pt_plant_relative_degree(const pt_plant* plant) { return plant ? plant->tf.relative_degree() : 0; }

pt_status pt_evaluate(const pt_plant* plant, const pt_gains* gains, const pt_sim_config* sim, const pt_band* band,
                      pt_objective* out) {
  if (any_null(plant, gains, sim, band, out)) return null_argument("pt_evaluate");
  return guarded([&] { *out = to_c(pidtune::evaluate(from_c(*gains), plant->tf, from_c(*sim), from_c(*band))); });
}

pt_status pt_simulate(const pt_plant* plant, const pt_gains* gains, const pt_sim_config* sim, pt_response** out) {
  if (any_null(plant, gains, sim, out)) return null_argument("pt_simulate");
  *out = nullptr;
  return guarded([&] {
    const auto loop = pidtune::close_unity_feedback(pidtune::pid_transfer_function(from_c(*gains)), plant->tf);
    *out = new pt_response{pidtune::simulate_step(pidtune::tf_to_state_space(loop), from_c(*sim))};
  });
}

size_t pt_response_size(const pt_response* response) { return response ? response->response.values.size() : 0; }

const double* pt_response_values(const pt_response* response) {
  return response ? response->response.values.data() : nullptr;
}

double pt_response_dt(const pt_response* response) { return response ? response->response.dt : 0.0; }

int pt_response_diverged(const pt_response* response) { return response && response->response.diverged ? 1 : 0; }

void pt_response_free(pt_response* response) { delete response; }

pt_status pt_find_ultimate_point(const pt_plant* plant, pt_ultimate_point* out) {
  if (any_null(plant, out)) return null_argument("pt_ultimate_point");
  return guarded([&] {
    const auto up = pidtune::ultimate_point(plant->tf);
    *out = {up.ku, up.tu};
  });
}

pt_status pt_zn_pid_gains(const pt_ultimate_point* point, pt_gains* out) {
  if (any_null(point, out)) return null_argument("pt_zn_pid_gains");
  if (!(point->ku > 0.0 && point->tu > 0.0)) return fail(PT_ERR_INVALID_ARGUMENT, "ultimate point needs ku, tu > 0");
  *out = to_c(pidtune::zn_pid_gains({point->ku, point->tu}));
  return PT_OK;
}

pt_status pt_random_gains(const pt_random_config* cfg, pt_gains* out) {
  if (any_null(cfg, out)) return null_argument("pt_random_gains");
  return guarded([&] { *out = to_c(pidtune::random_gains(from_c(*cfg))); });
}

pt_status pt_random_unstable_gains(const pt_plant* plant, const pt_random_config* cfg, const pt_sim_config* sim,
                                   unsigned max_attempts, pt_gains* out, unsigned* attempts) {
  if (any_null(plant, cfg, sim, out)) return null_argument("pt_random_unstable_gains");
  return guarded([&] {
    pidtune::GainSampler sampler(from_c(*cfg));
    const pidtune::SimConfig sc = from_c(*sim);
    for (unsigned i = 1; i <= max_attempts; ++i) {
      const pidtune::PidGains g = sampler.next();
      const auto loop = pidtune::close_unity_feedback(pidtune::pid_transfer_function(g), plant->tf);
      if (pidtune::simulate_step(pidtune::tf_to_state_space(loop), sc).diverged) {
        *out = to_c(g);
        if (attempts) *attempts = i;
        return;
      }
    }
    if (attempts) *attempts = max_attempts;
    throw pidtune::Error(pidtune::ErrorCode::ResampleExhausted,
                         "no diverging random start found in " + std::to_string(max_attempts) + " draws");
  });
}

pt_status pt_tune(const pt_plant* plant, const pt_gains* start, const pt_sim_config* sim, const pt_band* band,
                  const pt_search_config* search, pt_trace** out) {
  if (any_null(plant, start, sim, band, search, out)) return null_argument("pt_tune");
  *out = nullptr;
  return guarded([&] {
    const pidtune::SimConfig sc = from_c(*sim);
    const pidtune::SettlingBand bd = from_c(*band);
    sc.validate();
    bd.validate();
    const pidtune::TransferFunction& tf = plant->tf;
    auto trace = pidtune::optimize(
        from_c(*start), [&](const pidtune::PidGains& g) { return pidtune::evaluate(g, tf, sc, bd); },
        from_c(*search));
    pidtune::TraceContext context{plant->text, sc, bd, "manual", std::nullopt, from_c(*start)};
    *out = new pt_trace{std::move(trace), tf, std::move(context)};
  });
}

void pt_trace_set_origin(pt_trace* trace, pt_start_kind start, const uint64_t* seed) {
  if (!trace) return;
  switch (start) {
    case PT_START_ZN: trace->context.start = "zn"; break;
    case PT_START_RANDOM: trace->context.start = "random"; break;
    default: trace->context.start = "manual"; break;
  }
  trace->context.seed = seed ? std::optional<std::uint64_t>(*seed) : std::nullopt;
}

size_t pt_trace_size(const pt_trace* trace) { return trace ? trace->trace.records.size() : 0; }

pt_status pt_trace_record(const pt_trace* trace, size_t i, pt_record* out) {
  if (any_null(trace, out)) return null_argument("pt_trace_record");
  if (i >= trace->trace.records.size()) return fail(PT_ERR_INVALID_ARGUMENT, "record index out of range");
  const auto& r = trace->trace.records[i];
  *out = {static_cast<uint64_t>(r.index), to_c(r.gains), to_c(r.objective), r.improved ? 1 : 0, r.best_so_far};
  return PT_OK;
}

pt_status pt_trace_incumbent(const pt_trace* trace, pt_gains* gains, pt_objective* value) {
  if (!trace) return null_argument("pt_trace_incumbent");
  if (gains) *gains = to_c(trace->trace.incumbent);
  if (value) *value = to_c(trace->trace.incumbent_value);
  return PT_OK;
}

pt_termination pt_trace_termination(const pt_trace* trace) {
  return trace && trace->trace.termination == pidtune::Termination::BudgetExhausted ? PT_BUDGET_EXHAUSTED
                                                                                    : PT_STEP_CONVERGED;
}

pt_status pt_trace_export(const pt_trace* trace, pt_format format, char** out, size_t* len) {
  if (any_null(trace, out)) return null_argument("pt_trace_export");
  *out = nullptr;
  return guarded([&] {
    const std::string text = format == PT_FORMAT_JSON ? pidtune::export_trace_json(trace->trace, trace->context)
                                                      : pidtune::export_trace_csv(trace->trace);
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
    if (len) *len = text.size();
  });
}

void pt_string_free(char* s) { std::free(s); }

pt_status pt_trace_write(const pt_trace* trace, const char* dir) {
  if (any_null(trace, dir)) return null_argument("pt_trace_write");
  return guarded([&] { pidtune::write_trace_files(trace->trace, trace->context, dir); });
}

pt_status pt_trace_render_frames(const pt_trace* trace, const char* frame_dir, size_t* frame_count) {
  if (any_null(trace, frame_dir)) return null_argument("pt_trace_render_frames");
  return guarded([&] {
    const auto& ctx = trace->context;
    const auto source = [&](const pidtune::EvaluationRecord& r) {
      return pidtune::evaluate_with_response(r.gains, trace->plant, ctx.sim, ctx.band).response;
    };
    const std::size_t n =
        pidtune::render_animation(trace->trace, source, ctx.band, pidtune::FrameStyle{}, frame_dir, ctx.plant);
    if (frame_count) *frame_count = n;
  });
}

void pt_trace_free(pt_trace* trace) { delete trace; }

}  // extern "C"
