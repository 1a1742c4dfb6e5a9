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

namespace pidtune {

// Target band for the unit step. The upper bound applies for every t > 0,
// the lower bound only after the rise time.
struct SettlingBand {
  double upper = 1.02;
  double lower = 0.98;
  double rise_level = 0.98;

  void validate() const;
};

struct ObjectiveValue {
  double total = 0.0;      // rise_term + deviation
  double rise_time = 0.0;  // seconds; t_max when the response never rose
  double rise_term = 0.0;  // rise_time / t_max
  double deviation = 0.0;  // worst settling-band violation
  bool rose = false;
};

struct RiseTime {
  double seconds = 0.0;
  bool rose = false;
};

// First crossing of band.rise_level, linearly interpolated between the
// bracketing samples. Returns {resp.t_max, false} when the level is never reached.
RiseTime rise_time(const StepResponse& resp, const SettlingBand& band);

// Largest settling-band violation: overshoot above band.upper over t > 0,
// undershoot below band.lower over t > rise (only when the response rose).
double band_deviation(const StepResponse& resp, const SettlingBand& band, double rise, bool rose);

// Deviation assigned to a diverged response instead of band_deviation:
// (L + band.upper) + L (1 - t_div / t_max), L = resp.blow_up_limit. It is
// above every deviation a bounded response can reach and grows the earlier
// the response blows up, so the search is pulled toward stability.
double divergence_deviation(const StepResponse& resp, const SettlingBand& band);

ObjectiveValue score_response(const StepResponse& resp, const SettlingBand& band);

struct Evaluation {
  ObjectiveValue value;
  StepResponse response;
};

// Closes the ideal-PID loop around the plant, simulates the unit step and
// scores it. Throws Error(ImproperLoop) from the loop composition.
ObjectiveValue evaluate(const PidGains& gains, const TransferFunction& plant, const SimConfig& cfg,
                        const SettlingBand& band);

// Same as evaluate, keeping the simulated response.
Evaluation evaluate_with_response(const PidGains& gains, const TransferFunction& plant, const SimConfig& cfg,
                                  const SettlingBand& band);

}  // namespace pidtune
