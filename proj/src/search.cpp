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

#include "pidtune/search.hpp"

#include "pidtune/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace pidtune {

namespace {

struct Direction {
  double kp, ki, kd;
};

constexpr std::array<Direction, 6> kPollOrder{{
    {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1},
}};

}  // namespace

void SearchConfig::validate() const {
  if (!(shrink > 0.0 && shrink < 1.0)) throw Error(ErrorCode::InvalidArgument, "shrink must lie in (0, 1)");
  if (!(expand >= 1.0 && std::isfinite(expand))) throw Error(ErrorCode::InvalidArgument, "expand must be >= 1");
  if (!(min_step > 0.0 && min_step < initial_step && std::isfinite(initial_step))) {
    throw Error(ErrorCode::InvalidArgument, "step sizes require 0 < min_step < initial_step");
  }
  if (max_evals < 1) throw Error(ErrorCode::InvalidArgument, "max_evals must be at least 1");
}

std::string_view to_string(Termination t) noexcept {
  return t == Termination::StepConverged ? "step-converged" : "budget-exhausted";
}

SearchTrace optimize(const PidGains& start, const ScoreFn& score, const SearchConfig& cfg) {
  cfg.validate();
  SearchTrace trace;
  trace.config = cfg;

  auto record = [&](const PidGains& gains) -> const EvaluationRecord& {
    EvaluationRecord r;
    r.index = trace.records.size() + 1;
    r.gains = gains;
    r.objective = score(gains);
    r.improved = trace.records.empty() || r.objective.total < trace.records.back().best_so_far;
    r.best_so_far = r.improved ? r.objective.total : trace.records.back().best_so_far;
    trace.records.push_back(r);
    return trace.records.back();
  };

  const EvaluationRecord& first = record(start);
  if (!std::isfinite(first.objective.total)) {
    throw Error(ErrorCode::NonFiniteStart, "objective at the starting gains is not finite");
  }
  trace.incumbent = start;
  trace.incumbent_value = first.objective;

  double step = cfg.initial_step;
  while (step >= cfg.min_step) {
    bool moved = false;
    for (const Direction& dir : kPollOrder) {
      if (trace.records.size() >= cfg.max_evals) {
        trace.termination = Termination::BudgetExhausted;
        return trace;
      }
      const PidGains trial{trace.incumbent.kp + step * dir.kp, trace.incumbent.ki + step * dir.ki,
                           trace.incumbent.kd + step * dir.kd};
      const EvaluationRecord& r = record(trial);
      if (r.improved) {
        trace.incumbent = trial;
        trace.incumbent_value = r.objective;
        step = std::min(step * cfg.expand, cfg.initial_step);
        moved = true;
        break;
      }
    }
    if (!moved) step *= cfg.shrink;
  }
  trace.termination = Termination::StepConverged;
  return trace;
}

}  // namespace pidtune
