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

#include "pidtune/render.hpp"

#include "pidtune/error.hpp"
#include "pidtune/plant_text.hpp"
#include "pidtune/trace_io.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace pidtune {

namespace {

constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 52.0;

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

double nice_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_frame(const EvaluationRecord& record, const StepResponse& response, const SettlingBand& band,
                         const FrameStyle& style) {
  const auto& z = response.values;
  if (z.size() < 2) throw Error(ErrorCode::InvalidArgument, "render_frame needs at least two samples");

  const double w = style.width;
  const double h = style.height;
  const double plot_w = w - kLeft - kRight;
  const double plot_h = h - kTop - kBottom;
  const double t_end = response.t_max > 0.0 ? response.t_max : response.time_at(z.size() - 1);

  const auto [zmin_it, zmax_it] = std::minmax_element(z.begin(), z.end());
  double y_lo = std::min(0.0, *zmin_it);
  double y_hi = std::max(1.1, *zmax_it);
  const double margin = 0.05 * (y_hi - y_lo);
  y_lo -= margin;
  y_hi += margin;

  auto px = [&](double t) { return kLeft + plot_w * t / t_end; };
  auto py = [&](double v) { return kTop + plot_h * (y_hi - v) / (y_hi - y_lo); };

  std::string svg;
  svg.reserve(64 * 1024);
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) + "\" height=\"" +
         std::to_string(style.height) + "\" viewBox=\"0 0 " + std::to_string(style.width) + " " +
         std::to_string(style.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  char title[256];
  std::snprintf(title, sizeof title, "evaluation %zu: Kp=%.6g Ki=%.6g Kd=%.6g f=%.6g", record.index, record.gains.kp,
                record.gains.ki, record.gains.kd, record.objective.total);
  svg += "<text class=\"title\" x=\"" + fixed(w / 2) + "\" y=\"20\" text-anchor=\"middle\">" + escape(title) +
         "</text>\n";

  // Axes and ticks.
  svg += "<g class=\"axes\" stroke=\"#444\" fill=\"none\">\n";
  svg += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(plot_w) + "\" height=\"" +
         fixed(plot_h) + "\"/>\n";
  svg += "</g>\n<g class=\"ticks\" fill=\"#222\">\n";
  const double tx = nice_step(t_end);
  for (double t = 0.0; t <= t_end * (1 + 1e-12); t += tx) {
    svg += "<line x1=\"" + fixed(px(t)) + "\" y1=\"" + fixed(kTop + plot_h) + "\" x2=\"" + fixed(px(t)) +
           "\" y2=\"" + fixed(kTop + plot_h + 5) + "\" stroke=\"#444\"/>";
    svg += "<text x=\"" + fixed(px(t)) + "\" y=\"" + fixed(kTop + plot_h + 18) + "\" text-anchor=\"middle\">" +
           label(t) + "</text>\n";
  }
  const double ty = nice_step(y_hi - y_lo);
  for (double v = std::ceil(y_lo / ty) * ty; v <= y_hi; v += ty) {
    svg += "<line x1=\"" + fixed(kLeft - 5) + "\" y1=\"" + fixed(py(v)) + "\" x2=\"" + fixed(kLeft) + "\" y2=\"" +
           fixed(py(v)) + "\" stroke=\"#444\"/>";
    svg += "<text x=\"" + fixed(kLeft - 8) + "\" y=\"" + fixed(py(v) + 4) + "\" text-anchor=\"end\">" + label(v) +
           "</text>\n";
  }
  svg += "</g>\n";
  svg += "<text class=\"xlabel\" x=\"" + fixed(kLeft + plot_w / 2) + "\" y=\"" + fixed(h - 12) +
         "\" text-anchor=\"middle\">" + escape(style.axis_label) + "</text>\n";
  svg += "<text class=\"ylabel\" transform=\"translate(18," + fixed(kTop + plot_h / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">z(t)</text>\n";

  for (double level : {band.upper, band.lower}) {
    svg += "<line class=\"band\" data-level=\"" + format_shortest(level) + "\" x1=\"" + fixed(kLeft) + "\" y1=\"" +
           fixed(py(level)) + "\" x2=\"" + fixed(kLeft + plot_w) + "\" y2=\"" + fixed(py(level)) + "\" stroke=\"" +
           escape(style.band_color) + "\" stroke-dasharray=\"" + escape(style.band_dash) + "\"/>\n";
  }

  // One min/max pair per pixel column keeps the envelope of dense responses.
  const std::size_t columns = static_cast<std::size_t>(std::max(1.0, plot_w));
  const std::string& color = record.improved ? style.improved_color : style.rejected_color;
  svg += "<polyline class=\"response\" fill=\"none\" stroke=\"" + escape(color) +
         "\" stroke-width=\"1.5\" points=\"";
  auto point = [&](std::size_t k) {
    svg += fixed(px(response.time_at(k))) + "," + fixed(py(z[k])) + " ";
  };
  if (z.size() <= 2 * columns) {
    for (std::size_t k = 0; k < z.size(); ++k) point(k);
  } else {
    std::size_t begin = 0;
    for (std::size_t col = 0; col < columns; ++col) {
      const std::size_t end = (col + 1 == columns) ? z.size() : (z.size() * (col + 1)) / columns;
      if (end <= begin) continue;
      const auto [lo, hi] = std::minmax_element(z.begin() + static_cast<std::ptrdiff_t>(begin),
                                                z.begin() + static_cast<std::ptrdiff_t>(end));
      const auto a = static_cast<std::size_t>(lo - z.begin());
      const auto b = static_cast<std::size_t>(hi - z.begin());
      if (begin == 0 && std::min(a, b) != 0) point(0);
      point(std::min(a, b));
      if (a != b) point(std::max(a, b));
      if (end == z.size() && std::max(a, b) != end - 1) point(end - 1);
      begin = end;
    }
  }
  if (svg.back() == ' ') svg.pop_back();
  svg += "\"/>\n</svg>\n";
  return svg;
}

std::size_t render_animation(const SearchTrace& trace, const ResponseSource& responses, const SettlingBand& band,
                             const FrameStyle& style, const std::filesystem::path& out_dir,
                             const std::string& plant_text, int fps) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw Error(ErrorCode::OutputUnwritable, "cannot create frame directory " + out_dir.string());
  }
  nlohmann::ordered_json frames = nlohmann::ordered_json::array();
  for (const auto& record : trace.records) {
    const std::string name = "film_" + std::to_string(record.index) + ".svg";
    write_text_file(out_dir / name, render_frame(record, responses(record), band, style));
    frames.push_back(name);
  }
  const nlohmann::ordered_json index = {
      {"frames", std::move(frames)},
      {"fps", fps},
      {"band", {{"upper", band.upper}, {"lower", band.lower}}},
      {"plant", plant_text},
  };
  write_text_file(out_dir / "index.json", index.dump(2) + "\n");
  return trace.records.size();
}

std::size_t render_animation(const SearchTrace& trace, const std::vector<StepResponse>& responses,
                             const SettlingBand& band, const FrameStyle& style, const std::filesystem::path& out_dir,
                             const std::string& plant_text, int fps) {
  if (responses.size() != trace.records.size()) {
    throw Error(ErrorCode::InvalidArgument, "render_animation needs one response per record");
  }
  return render_animation(
      trace, [&](const EvaluationRecord& r) { return responses.at(r.index - 1); }, band, style, out_dir, plant_text,
      fps);
}

}  // namespace pidtune
