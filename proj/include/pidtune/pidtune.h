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

/* C interface to the pidtune library.
 *
 * Handles are opaque and owned by the caller once returned; release them with
 * the matching *_free function (all accept NULL). Every fallible call returns
 * a pt_status; on failure pt_last_error() describes the problem. The message
 * is thread-local and stays valid until the next failing call on the same
 * thread.
 */
#ifndef PIDTUNE_PIDTUNE_H_
#define PIDTUNE_PIDTUNE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PIDTUNE_BUILDING_LIBRARY)
#    define PIDTUNE_API __declspec(dllexport)
#  else
#    define PIDTUNE_API __declspec(dllimport)
#  endif
#else
#  define PIDTUNE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pt_status {
  PT_OK = 0,
  PT_ERR_INVALID_ARGUMENT = 1,
  PT_ERR_PARSE = 2,
  PT_ERR_IMPROPER_LOOP = 3,
  PT_ERR_IMPROPER_SYSTEM = 4,
  PT_ERR_NO_ULTIMATE_GAIN = 5,
  PT_ERR_NON_FINITE_START = 6,
  PT_ERR_RESAMPLE_EXHAUSTED = 7,
  PT_ERR_OUTPUT_UNWRITABLE = 8,
  PT_ERR_INTERNAL = 99
} pt_status;

typedef enum pt_termination { PT_STEP_CONVERGED = 0, PT_BUDGET_EXHAUSTED = 1 } pt_termination;

typedef enum pt_start_kind { PT_START_MANUAL = 0, PT_START_ZN = 1, PT_START_RANDOM = 2 } pt_start_kind;

typedef enum pt_format { PT_FORMAT_CSV = 0, PT_FORMAT_JSON = 1 } pt_format;

typedef struct pt_gains {
  double kp;
  double ki;
  double kd;
} pt_gains;

typedef struct pt_sim_config {
  double t_max;
  double dt;
  double blow_up_limit;
} pt_sim_config;

typedef struct pt_band {
  double upper;
  double lower;
  double rise_level;
} pt_band;

typedef struct pt_search_config {
  double initial_step;
  double shrink;
  double expand;
  double min_step;
  uint64_t max_evals;
} pt_search_config;

typedef struct pt_random_config {
  uint64_t seed;
  double low[3]; /* kp, ki, kd */
  double high[3];
} pt_random_config;

typedef struct pt_objective {
  double total;
  double rise_time;
  double rise_term;
  double deviation;
  int rose;
} pt_objective;

typedef struct pt_record {
  uint64_t index; /* 1-based */
  pt_gains gains;
  pt_objective objective;
  int improved;
  double best_so_far;
} pt_record;

typedef struct pt_ultimate_point {
  double ku;
  double tu;
} pt_ultimate_point;

typedef struct pt_plant pt_plant;
typedef struct pt_response pt_response;
typedef struct pt_trace pt_trace;

PIDTUNE_API const char* pt_version(void);
PIDTUNE_API const char* pt_last_error(void);
PIDTUNE_API const char* pt_status_name(pt_status status);

/* Defaults: t_max 100 s, dt 0.01 s, blow-up limit 1e6; band [0.98, 1.02]
 * with rise level 0.98; search step 1 shrink 0.5 expand 2 min step 1e-6,
 * 5000 evaluations; random gains uniform on [-10, 10]. */
PIDTUNE_API void pt_sim_config_default(pt_sim_config* out);
PIDTUNE_API void pt_band_default(pt_band* out);
PIDTUNE_API void pt_search_config_default(pt_search_config* out);
PIDTUNE_API void pt_random_config_default(pt_random_config* out, uint64_t seed);

/* Plants: preset name ("benchmark3") or "num: c_n ... c_0 / den: d_m ... d_0". */
PIDTUNE_API pt_status pt_plant_parse(const char* text, pt_plant** out);
PIDTUNE_API pt_status pt_plant_create(const double* num, size_t num_len, const double* den, size_t den_len,
                                      pt_plant** out);
PIDTUNE_API void pt_plant_free(pt_plant* plant);
/* Canonical text form; owned by the handle. */
PIDTUNE_API const char* pt_plant_text(const pt_plant* plant);
PIDTUNE_API int pt_plant_relative_degree(const pt_plant* plant);

/* Closed-loop unit step of the ideal PID around the plant, and its score. */
PIDTUNE_API pt_status pt_evaluate(const pt_plant* plant, const pt_gains* gains, const pt_sim_config* sim,
                                  const pt_band* band, pt_objective* out);
PIDTUNE_API pt_status pt_simulate(const pt_plant* plant, const pt_gains* gains, const pt_sim_config* sim,
                                  pt_response** out);
PIDTUNE_API size_t pt_response_size(const pt_response* response);
PIDTUNE_API const double* pt_response_values(const pt_response* response);
PIDTUNE_API double pt_response_dt(const pt_response* response);
PIDTUNE_API int pt_response_diverged(const pt_response* response);
PIDTUNE_API void pt_response_free(pt_response* response);

PIDTUNE_API pt_status pt_find_ultimate_point(const pt_plant* plant, pt_ultimate_point* out);
PIDTUNE_API pt_status pt_zn_pid_gains(const pt_ultimate_point* point, pt_gains* out);
PIDTUNE_API pt_status pt_random_gains(const pt_random_config* cfg, pt_gains* out);
/* Draws successive triples from the seeded stream until the closed-loop step
 * response diverges; PT_ERR_RESAMPLE_EXHAUSTED after max_attempts draws.
 * attempts (nullable) receives the number of draws used. */
PIDTUNE_API pt_status pt_random_unstable_gains(const pt_plant* plant, const pt_random_config* cfg,
                                               const pt_sim_config* sim, unsigned max_attempts, pt_gains* out,
                                               unsigned* attempts);

/* Compass search of the objective from start. */
PIDTUNE_API pt_status pt_tune(const pt_plant* plant, const pt_gains* start, const pt_sim_config* sim,
                              const pt_band* band, const pt_search_config* search, pt_trace** out);
/* Start kind and seed echoed in trace.json; seed may be NULL. */
PIDTUNE_API void pt_trace_set_origin(pt_trace* trace, pt_start_kind start, const uint64_t* seed);
PIDTUNE_API size_t pt_trace_size(const pt_trace* trace);
PIDTUNE_API pt_status pt_trace_record(const pt_trace* trace, size_t i, pt_record* out); /* i is 0-based */
PIDTUNE_API pt_status pt_trace_incumbent(const pt_trace* trace, pt_gains* gains, pt_objective* value);
PIDTUNE_API pt_termination pt_trace_termination(const pt_trace* trace);
/* *out is NUL-terminated and must be released with pt_string_free. */
PIDTUNE_API pt_status pt_trace_export(const pt_trace* trace, pt_format format, char** out, size_t* len);
PIDTUNE_API void pt_string_free(char* s);
/* Writes <dir>/trace.csv and <dir>/trace.json. */
PIDTUNE_API pt_status pt_trace_write(const pt_trace* trace, const char* dir);
/* Re-simulates every record and writes film_<k>.svg plus index.json. */
PIDTUNE_API pt_status pt_trace_render_frames(const pt_trace* trace, const char* frame_dir, size_t* frame_count);
PIDTUNE_API void pt_trace_free(pt_trace* trace);

#ifdef __cplusplus
}
#endif

#endif /* PIDTUNE_PIDTUNE_H_ */
