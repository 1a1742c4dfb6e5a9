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

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

namespace pidtune {

struct SearchConfig {
  double initial_step = 1.0;
  double shrink = 0.5;
  double expand = 2.0;
  double min_step = 1e-6;
  std::size_t max_evals = 5000;

  void validate() const;
};

struct EvaluationRecord {
  std::size_t index = 0;  // 1-based
  PidGains gains;
  ObjectiveValue objective;
  bool improved = false;  // strictly better than every earlier record
  double best_so_far = 0.0;
};

enum class Termination { StepConverged, BudgetExhausted };

std::string_view to_string(Termination t) noexcept;

struct SearchTrace {
  std::vector<EvaluationRecord> records;
  PidGains incumbent;
  ObjectiveValue incumbent_value;
  Termination termination = Termination::StepConverged;
  SearchConfig config;
};

using ScoreFn = std::function<ObjectiveValue(const PidGains&)>;

// Compass search over (kp, ki, kd) with opportunistic polling in the fixed
// order +kp, -kp, +ki, -ki, +kd, -kd. A strictly better poll point becomes
// the incumbent at once and the step grows by cfg.expand (never past
// initial_step); a full unsuccessful poll shrinks it by cfg.shrink. Every
// call to score is recorded, in call order.
//
// Throws Error(NonFiniteStart) when score(start).total is not finite.
SearchTrace optimize(const PidGains& start, const ScoreFn& score, const SearchConfig& cfg = {});

}  // namespace pidtune
