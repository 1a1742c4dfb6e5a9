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

// pidtune command line: simulate one gain vector or tune from a
// Ziegler-Nichols / random start. Talks to the library only through the C API.

#include "pidtune/pidtune.h"

#include "CLI11.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>

namespace {

constexpr unsigned kMaxResampleAttempts = 1000;

struct PlantDeleter {
  void operator()(pt_plant* p) const { pt_plant_free(p); }
};
struct ResponseDeleter {
  void operator()(pt_response* r) const { pt_response_free(r); }
};
struct TraceDeleter {
  void operator()(pt_trace* t) const { pt_trace_free(t); }
};
using PlantPtr = std::unique_ptr<pt_plant, PlantDeleter>;
using ResponsePtr = std::unique_ptr<pt_response, ResponseDeleter>;
using TracePtr = std::unique_ptr<pt_trace, TraceDeleter>;

// Thrown after the error has been reported; carries the exit status.
struct Failure {
  int exit_code;
};

void check(pt_status status) {
  if (status == PT_OK) return;
  std::cerr << "error: " << pt_status_name(status) << ": " << pt_last_error() << "\n";
  if (status == PT_ERR_IMPROPER_LOOP) {
    std::cerr << "hint: the ideal PID adds a zero pair; with kd != 0 the plant needs relative degree >= 1 (>= 2 for a strictly proper loop)\n";
  }
  throw Failure{1};
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string describe(const pt_gains& g, const pt_objective& o) {
  return "kp=" + sig6(g.kp) + " ki=" + sig6(g.ki) + " kd=" + sig6(g.kd) + " f=" + sig6(o.total) +
         " rise_time=" + sig6(o.rise_time) + " deviation=" + sig6(o.deviation);
}

PlantPtr load_plant(const std::string& text) {
  pt_plant* raw = nullptr;
  check(pt_plant_parse(text.c_str(), &raw));
  return PlantPtr(raw);
}

struct CommonOptions {
  std::string plant = "benchmark3";
  pt_sim_config sim{};
  pt_band band{};
};

int run_simulate(const CommonOptions& common, const pt_gains& gains, const std::string& samples_path) {
  auto plant = load_plant(common.plant);
  std::cout << "config: plant=\"" << pt_plant_text(plant.get()) << "\" kp=" << shortest(gains.kp)
            << " ki=" << shortest(gains.ki) << " kd=" << shortest(gains.kd) << " dt=" << shortest(common.sim.dt)
            << " tmax=" << shortest(common.sim.t_max) << "\n";
  pt_objective value{};
  check(pt_evaluate(plant.get(), &gains, &common.sim, &common.band, &value));
  std::cout << "f=" << sig6(value.total) << " rise_time=" << sig6(value.rise_time)
            << " deviation=" << sig6(value.deviation) << " rose=" << (value.rose ? "true" : "false") << "\n";
  if (!samples_path.empty()) {
    pt_response* raw = nullptr;
    check(pt_simulate(plant.get(), &gains, &common.sim, &raw));
    ResponsePtr response(raw);
    std::ofstream out(samples_path, std::ios::binary | std::ios::trunc);
    out << "t,z\n";
    const double* z = pt_response_values(response.get());
    const double dt = pt_response_dt(response.get());
    char line[96];
    for (std::size_t k = 0; k < pt_response_size(response.get()); ++k) {
      std::snprintf(line, sizeof line, "%.17g,%.17g\n", static_cast<double>(k) * dt, z[k]);
      out << line;
    }
    out.close();
    if (!out) {
      std::cerr << "error: OutputUnwritable: cannot write " << samples_path << "\n";
      return 1;
    }
  }
  return 0;
}

struct TuneOptions {
  std::string start = "zn";
  std::optional<std::uint64_t> seed;
  bool ensure_unstable = false;
  std::string out_dir = "pidtune_out";
  bool frames = false;
  pt_search_config search{};
};

int run_tune(const CommonOptions& common, const TuneOptions& opts) {
  auto plant = load_plant(common.plant);

  pt_gains start{};
  std::uint64_t seed = 0;
  if (opts.start == "zn") {
    pt_ultimate_point up{};
    check(pt_find_ultimate_point(plant.get(), &up));
    check(pt_zn_pid_gains(&up, &start));
    std::cout << "ultimate point: ku=" << sig6(up.ku) << " tu=" << sig6(up.tu) << "\n";
  } else {
    seed = opts.seed ? *opts.seed : std::random_device{}() * 4294967296ULL + std::random_device{}();
    pt_random_config rc{};
    pt_random_config_default(&rc, seed);
    if (opts.ensure_unstable) {
      unsigned attempts = 0;
      check(pt_random_unstable_gains(plant.get(), &rc, &common.sim, kMaxResampleAttempts, &start, &attempts));
      std::cout << "random start: diverging draw found after " << attempts << " attempt(s)\n";
    } else {
      check(pt_random_gains(&rc, &start));
    }
  }

  const pt_search_config& s = opts.search;
  std::cout << "config: plant=\"" << pt_plant_text(plant.get()) << "\" start=" << opts.start;
  if (opts.start == "random") {
    std::cout << " seed=" << seed << " ensure_unstable=" << (opts.ensure_unstable ? "true" : "false");
  }
  std::cout << " dt=" << shortest(common.sim.dt) << " tmax=" << shortest(common.sim.t_max)
            << " blow_up_limit=" << shortest(common.sim.blow_up_limit) << " band=[" << shortest(common.band.lower)
            << "," << shortest(common.band.upper) << "] rise_level=" << shortest(common.band.rise_level)
            << " step=" << shortest(s.initial_step) << " min_step=" << shortest(s.min_step)
            << " shrink=" << shortest(s.shrink) << " expand=" << shortest(s.expand) << " max_evals=" << s.max_evals
            << "\n";

  pt_trace* raw = nullptr;
  check(pt_tune(plant.get(), &start, &common.sim, &common.band, &s, &raw));
  TracePtr trace(raw);
  const std::uint64_t* seed_ptr = opts.start == "random" ? &seed : nullptr;
  pt_trace_set_origin(trace.get(), opts.start == "zn" ? PT_START_ZN : PT_START_RANDOM, seed_ptr);

  pt_record first{};
  check(pt_trace_record(trace.get(), 0, &first));
  pt_gains best{};
  pt_objective best_value{};
  check(pt_trace_incumbent(trace.get(), &best, &best_value));
  std::cout << "initial: " << describe(first.gains, first.objective) << "\n";
  std::cout << "final:   " << describe(best, best_value) << "\n";
  std::cout << "evaluations: " << pt_trace_size(trace.get()) << " termination: "
            << (pt_trace_termination(trace.get()) == PT_STEP_CONVERGED ? "step-converged" : "budget-exhausted")
            << "\n";

  check(pt_trace_write(trace.get(), opts.out_dir.c_str()));
  std::cout << "wrote " << (std::filesystem::path(opts.out_dir) / "trace.csv").string() << " and trace.json\n";
  if (opts.frames) {
    const std::string frame_dir = (std::filesystem::path(opts.out_dir) / "frames").string();
    std::size_t count = 0;
    check(pt_trace_render_frames(trace.get(), frame_dir.c_str(), &count));
    std::cout << "wrote " << count << " frames to " << frame_dir << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PID auto-tuning by compass search on a step-response objective"};
  app.require_subcommand(1);

  CommonOptions common;
  pt_sim_config_default(&common.sim);
  pt_band_default(&common.band);
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--plant", common.plant, "plant preset (benchmark3) or \"num: ... / den: ...\"")
        ->capture_default_str();
    cmd->add_option("--dt", common.sim.dt, "integration step [s]")->capture_default_str();
    cmd->add_option("--tmax", common.sim.t_max, "simulation horizon [s]")->capture_default_str();
  };

  auto* simulate = app.add_subcommand("simulate", "score one gain vector");
  add_common(simulate);
  pt_gains gains{0.0, 0.0, 0.0};
  std::string samples;
  simulate->add_option("--kp", gains.kp, "proportional gain")->required();
  simulate->add_option("--ki", gains.ki, "integral gain")->capture_default_str();
  simulate->add_option("--kd", gains.kd, "derivative gain")->capture_default_str();
  simulate->add_option("--samples", samples, "write t,z samples as CSV");

  auto* tune = app.add_subcommand("tune", "minimize the objective by compass search");
  add_common(tune);
  TuneOptions topts;
  pt_search_config_default(&topts.search);
  std::uint64_t seed_value = 0;
  tune->add_option("--start", topts.start, "initial gains")
      ->check(CLI::IsMember({"zn", "random"}))
      ->capture_default_str();
  auto* seed_opt = tune->add_option("--seed", seed_value, "random start seed (default: from entropy)");
  tune->add_flag("--ensure-unstable", topts.ensure_unstable, "resample random starts until the response diverges");
  tune->add_option("--out", topts.out_dir, "output directory")->capture_default_str();
  tune->add_flag("--frames", topts.frames, "render film_<k>.svg frames");
  tune->add_option("--max-evals", topts.search.max_evals, "evaluation budget")->capture_default_str();
  tune->add_option("--step", topts.search.initial_step, "initial step")->capture_default_str();
  tune->add_option("--min-step", topts.search.min_step, "termination step")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  if (*seed_opt) topts.seed = seed_value;

  try {
    if (*simulate) return run_simulate(common, gains, samples);
    return run_tune(common, topts);
  } catch (const Failure& f) {
    return f.exit_code;
  }
}
