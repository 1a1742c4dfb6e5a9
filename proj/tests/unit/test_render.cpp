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

#include "doctest.h"

#include "pidtune/error.hpp"
#include "pidtune/render.hpp"

#include "json.hpp"

#include <fstream>
#include <regex>
#include <sstream>

using namespace pidtune;

namespace {

StepResponse ramp_response(std::size_t n = 10001, double dt = 0.01) {
  StepResponse r;
  r.dt = dt;
  r.t_max = dt * static_cast<double>(n - 1);
  r.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) r.values[k] = 1.0 - std::exp(-0.5 * r.time_at(k));
  return r;
}

EvaluationRecord record(std::size_t index, bool improved) {
  EvaluationRecord r;
  r.index = index;
  r.improved = improved;
  return r;
}

std::string curve_stroke(const std::string& svg) {
  static const std::regex re(R"re(<polyline class="response"[^>]*stroke="([^"]*)")re");
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, re));
  return m[1];
}

std::vector<std::string> dashed_elements(const std::string& svg) {
  std::vector<std::string> out;
  static const std::regex re(R"(<[^>]*stroke-dasharray[^>]*>)");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
    out.push_back(it->str());
  }
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SearchTrace trace_of(std::initializer_list<bool> flags) {
  SearchTrace t;
  std::size_t i = 0;
  for (bool f : flags) t.records.push_back(record(++i, f));
  return t;
}

}  // namespace

TEST_SUITE("render") {
  TEST_CASE("curve color follows the improved flag") {
    const FrameStyle style;
    CHECK(curve_stroke(render_frame(record(1, true), ramp_response(), SettlingBand{}, style)) == "green");
    CHECK(curve_stroke(render_frame(record(2, false), ramp_response(), SettlingBand{}, style)) == "red");
    FrameStyle custom;
    custom.improved_color = "#00aa00";
    CHECK(curve_stroke(render_frame(record(1, true), ramp_response(), SettlingBand{}, custom)) == "#00aa00");
  }

  TEST_CASE("exactly two dashed band lines") {
    const std::string svg = render_frame(record(3, false), ramp_response(), SettlingBand{});
    const auto dashed = dashed_elements(svg);
    REQUIRE(dashed.size() == 2);
    CHECK(dashed[0].find("data-level=\"1.02\"") != std::string::npos);
    CHECK(dashed[1].find("data-level=\"0.98\"") != std::string::npos);
    for (const auto& line : dashed) {
      CHECK(line.find("stroke=\"black\"") != std::string::npos);
      CHECK(line.find("x1=\"70.00\"") != std::string::npos);
      CHECK(line.find("x2=\"620.00\"") != std::string::npos);
    }
    CHECK(svg.find(">time [s]<") != std::string::npos);
  }

  TEST_CASE("y range floor keeps the band visible") {
    // Flat response at 0.5: range is [0, 1.1] plus 5% margins; 1.02 lies inside the plot.
    StepResponse r = ramp_response(101, 1.0);
    std::fill(r.values.begin(), r.values.end(), 0.5);
    const std::string svg = render_frame(record(1, true), r, SettlingBand{});
    static const std::regex re(R"re(data-level="1.02" x1="[^"]*" y1="([^"]*)")re");
    std::smatch m;
    REQUIRE(std::regex_search(svg, m, re));
    const double y = std::stod(m[1]);
    const double top = 36.0, bottom = 480.0 - 52.0;
    const double lo = -0.055, hi = 1.155;
    CHECK(y == doctest::Approx(top + (bottom - top) * (hi - 1.02) / (hi - lo)).epsilon(1e-3));
  }

  TEST_CASE("degenerate response is rejected") {
    StepResponse r;
    r.dt = 0.1;
    r.values = {1.0};
    CHECK_THROWS_AS(render_frame(record(1, true), r, SettlingBand{}), Error);
  }

  TEST_CASE("animation writes numbered frames and an index") {
    const auto dir = std::filesystem::temp_directory_path() / "pidtune_render_anim";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto t = trace_of({true, false, true, false, false});
    const std::vector<StepResponse> responses(5, ramp_response(501));
    const std::size_t n = render_animation(t, responses, SettlingBand{}, FrameStyle{}, dir, "num: 1 / den: 1 1");
    CHECK(n == 5);
    for (int k = 1; k <= 5; ++k) CHECK(std::filesystem::exists(dir / ("film_" + std::to_string(k) + ".svg")));
    CHECK_FALSE(std::filesystem::exists(dir / "film_0.svg"));
    CHECK_FALSE(std::filesystem::exists(dir / "film_6.svg"));
    const auto index = nlohmann::json::parse(slurp(dir / "index.json"));
    CHECK(index["fps"] == 12);
    REQUIRE(index["frames"].size() == 5);
    CHECK(index["frames"][0] == "film_1.svg");
    CHECK(index["frames"][4] == "film_5.svg");
    CHECK(index["band"]["upper"].get<double>() == 1.02);
    CHECK(index["plant"] == "num: 1 / den: 1 1");
    // Green frames are exactly the improved records.
    for (const auto& r : t.records) {
      const auto svg = slurp(dir / ("film_" + std::to_string(r.index) + ".svg"));
      CHECK((curve_stroke(svg) == "green") == r.improved);
    }
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("animation input mismatch and unwritable directory") {
    const auto t = trace_of({true, false});
    CHECK_THROWS_AS(render_animation(t, std::vector<StepResponse>(1, ramp_response(11)), SettlingBand{},
                                     FrameStyle{}, std::filesystem::temp_directory_path(), ""),
                    Error);
    const auto blocker = std::filesystem::temp_directory_path() / "pidtune_render_blocker";
    std::filesystem::remove_all(blocker);
    { std::ofstream(blocker) << "x"; }
    try {
      render_animation(t, std::vector<StepResponse>(2, ramp_response(11)), SettlingBand{}, FrameStyle{},
                       blocker / "frames", "");
      FAIL("expected OutputUnwritable");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OutputUnwritable);
    }
    std::filesystem::remove_all(blocker);
  }

  TEST_CASE("dense responses are decimated but keep their extremes") {
    StepResponse r = ramp_response();
    r.values[5000] = 3.0;  // single-sample spike
    const std::string svg = render_frame(record(1, true), r, SettlingBand{});
    CHECK(svg.size() < 80 * 1024);
    // The spike is the top of the auto-fitted range.
    const double y_spike = 36.0 + (480.0 - 52.0 - 36.0) * 0.05 / 1.1;
    char needle[32];
    std::snprintf(needle, sizeof needle, ",%.2f", y_spike);
    CHECK(svg.find(needle) != std::string::npos);
  }
}
