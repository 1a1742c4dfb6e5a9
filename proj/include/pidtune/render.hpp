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

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace pidtune {

struct FrameStyle {
  std::string improved_color = "green";
  std::string rejected_color = "red";
  std::string band_color = "black";
  std::string band_dash = "6,4";
  std::string axis_label = "time [s]";
  int width = 640;
  int height = 480;
};

inline constexpr int kDefaultFps = 12;

// Standalone SVG of one evaluated response. The curve is stroked in
// improved_color iff record.improved; the band edges are the only dashed
// elements (class="band", data-level="<level>").
std::string render_frame(const EvaluationRecord& record, const StepResponse& response, const SettlingBand& band,
                         const FrameStyle& style = {});

using ResponseSource = std::function<StepResponse(const EvaluationRecord&)>;

// Writes film_1.svg .. film_N.svg and then index.json into out_dir and
// returns N. Responses are pulled one record at a time so long traces never
// hold every response in memory. Throws Error(OutputUnwritable).
std::size_t render_animation(const SearchTrace& trace, const ResponseSource& responses, const SettlingBand& band,
                             const FrameStyle& style, const std::filesystem::path& out_dir,
                             const std::string& plant_text, int fps = kDefaultFps);

// Precomputed responses, one per record. Throws Error(InvalidArgument) on a
// length mismatch.
std::size_t render_animation(const SearchTrace& trace, const std::vector<StepResponse>& responses,
                             const SettlingBand& band, const FrameStyle& style, const std::filesystem::path& out_dir,
                             const std::string& plant_text, int fps = kDefaultFps);

}  // namespace pidtune
