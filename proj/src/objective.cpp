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

#include "pidtune/objective.hpp"

#include "pidtune/error.hpp"

#include <algorithm>
#include <cmath>

namespace pidtune {

void SettlingBand::validate() const {
  if (!(std::isfinite(upper) && std::isfinite(lower) && std::isfinite(rise_level))) {
    throw Error(ErrorCode::InvalidArgument, "settling band levels must be finite");
  }
  if (!(lower <= rise_level && rise_level < upper)) {
    throw Error(ErrorCode::InvalidArgument, "settling band requires lower <= rise_level < upper");
  }
}

RiseTime rise_time(const StepResponse& resp, const SettlingBand& band) {
  const auto& z = resp.values;
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (z[k] < band.rise_level) continue;
    if (k == 0) return {0.0, true};
    const double fraction = (band.rise_level - z[k - 1]) / (z[k] - z[k - 1]);
    return {resp.time_at(k - 1) + resp.dt * fraction, true};
  }
  return {resp.t_max, false};
}

double band_deviation(const StepResponse& resp, const SettlingBand& band, double rise, bool rose) {
  const auto& z = resp.values;
  double over = 0.0;
  double under = 0.0;
  for (std::size_t k = 1; k < z.size(); ++k) {
    over = std::max(over, z[k] - band.upper);
    if (rose && resp.time_at(k) > rise) under = std::max(under, band.lower - z[k]);
  }
  return std::max(over, under);
}

double divergence_deviation(const StepResponse& resp, const SettlingBand& band) {
  const double limit = resp.blow_up_limit;
  const double early = 1.0 - std::clamp(resp.divergence_time / resp.t_max, 0.0, 1.0);
  return (limit + band.upper) + limit * early;
}

ObjectiveValue score_response(const StepResponse& resp, const SettlingBand& band) {
  const RiseTime rise = rise_time(resp, band);
  ObjectiveValue out;
  out.rise_time = rise.seconds;
  out.rose = rise.rose;
  out.rise_term = rise.seconds / resp.t_max;
  out.deviation = resp.diverged ? divergence_deviation(resp, band)
                                : band_deviation(resp, band, rise.seconds, rise.rose);
  out.total = out.rise_term + out.deviation;
  return out;
}

Evaluation evaluate_with_response(const PidGains& gains, const TransferFunction& plant, const SimConfig& cfg,
                                  const SettlingBand& band) {
  band.validate();
  const TransferFunction loop = close_unity_feedback(pid_transfer_function(gains), plant);
  Evaluation out;
  out.response = simulate_step(tf_to_state_space(loop), cfg);
  out.value = score_response(out.response, band);
  return out;
}

ObjectiveValue evaluate(const PidGains& gains, const TransferFunction& plant, const SimConfig& cfg,
                        const SettlingBand& band) {
  return evaluate_with_response(gains, plant, cfg, band).value;
}

}  // namespace pidtune
