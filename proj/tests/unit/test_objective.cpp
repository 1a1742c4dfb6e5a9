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
#include "pidtune/objective.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace pidtune;

namespace {

StepResponse make_response(std::vector<double> values, double dt = 0.01) {
  StepResponse r;
  r.dt = dt;
  r.t_max = dt * static_cast<double>(values.size() - 1);
  r.values = std::move(values);
  r.blow_up_limit = 1e6;
  return r;
}

StepResponse sampled(double (*f)(double), double dt = 0.01, double t_max = 100.0) {
  std::vector<double> v(static_cast<std::size_t>(std::floor(t_max / dt)) + 1);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(static_cast<double>(k) * dt);
  auto r = make_response(std::move(v), dt);
  r.t_max = t_max;
  return r;
}

// Straight scan of the definitions, written separately from the library.
ObjectiveValue brute_force_score(const StepResponse& r, const SettlingBand& band) {
  const auto& z = r.values;
  std::size_t first = z.size();
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (z[k] >= band.rise_level) {
      first = k;
      break;
    }
  }
  ObjectiveValue v;
  v.rose = first < z.size();
  if (!v.rose) {
    v.rise_time = r.t_max;
  } else if (first == 0) {
    v.rise_time = 0.0;
  } else {
    const double t0 = r.dt * static_cast<double>(first - 1);
    v.rise_time = t0 + r.dt * (band.rise_level - z[first - 1]) / (z[first] - z[first - 1]);
  }
  double over = 0.0;
  double under = 0.0;
  for (std::size_t k = 1; k < z.size(); ++k) {
    if (z[k] > band.upper) over = std::max(over, z[k] - band.upper);
    const double t = r.dt * static_cast<double>(k);
    if (v.rose && t > v.rise_time && z[k] < band.lower) under = std::max(under, band.lower - z[k]);
  }
  v.deviation = std::max(over, under);
  v.rise_term = v.rise_time / r.t_max;
  v.total = v.rise_term + v.deviation;
  return v;
}

const TransferFunction kBenchmark3({1.0}, {1.0, 3.0, 3.0, 1.0});

}  // namespace

TEST_SUITE("objective") {
  TEST_CASE("band validation") {
    CHECK_NOTHROW(SettlingBand{}.validate());
    CHECK_THROWS_AS((SettlingBand{1.0, 0.98, 1.0}.validate()), Error);
    CHECK_THROWS_AS((SettlingBand{1.02, 0.99, 0.98}.validate()), Error);
  }

  TEST_CASE("rise time of 1 - exp(-t)") {
    const auto r = sampled([](double t) { return 1.0 - std::exp(-t); });
    const auto rise = rise_time(r, SettlingBand{});
    CHECK(rise.rose);
    CHECK(std::abs(rise.seconds - (-std::log(0.02))) < 0.01);
  }

  TEST_CASE("rise time edge cases") {
    auto rise = rise_time(make_response({1.0, 1.0, 1.0}), SettlingBand{});
    CHECK(rise.rose);
    CHECK(rise.seconds == 0.0);
    const auto flat = make_response(std::vector<double>(101, 0.5));
    rise = rise_time(flat, SettlingBand{});
    CHECK_FALSE(rise.rose);
    CHECK(rise.seconds == flat.t_max);
    // Interpolated crossing between 0.9 and 1.0 at one step of 0.5 s.
    rise = rise_time(make_response({0.0, 0.9, 1.0}, 0.5), SettlingBand{});
    CHECK(rise.seconds == doctest::Approx(0.5 + 0.5 * 0.8));
  }

  TEST_CASE("band deviation examples") {
    const SettlingBand band;
    const auto mono = sampled([](double t) { return 1.0 - std::exp(-t); });
    const auto rise = rise_time(mono, band);
    CHECK(band_deviation(mono, band, rise.seconds, rise.rose) == 0.0);

    // Peak at 1.30 then settle inside the band.
    std::vector<double> peak{0.0, 0.5, 1.0, 1.3, 1.1, 1.0, 1.0};
    auto r = make_response(peak);
    auto rr = rise_time(r, band);
    CHECK(band_deviation(r, band, rr.seconds, rr.rose) == doctest::Approx(0.28));

    // Crosses 0.98, dips to 0.90, never above 1.02.
    r = make_response({0.0, 0.5, 1.0, 0.95, 0.9, 0.99, 1.0});
    rr = rise_time(r, band);
    CHECK(band_deviation(r, band, rr.seconds, rr.rose) == doctest::Approx(0.08));

    // t = 0 is outside the overshoot window.
    r = make_response({5.0, 1.0, 1.0});
    rr = rise_time(r, band);
    CHECK(band_deviation(r, band, rr.seconds, rr.rose) == 0.0);

    // Never rose: undershoot window is empty.
    r = make_response({0.0, 0.1, 0.2});
    CHECK(band_deviation(r, band, r.t_max, false) == 0.0);
  }

  TEST_CASE("evaluate on an integrator plant") {
    const auto v = evaluate({1.0, 0.0, 0.0}, TransferFunction({1.0}, {1.0, 0.0}), SimConfig{}, SettlingBand{});
    CHECK(v.rose);
    CHECK(std::abs(v.total - 0.039120) <= 2e-4);
    CHECK(std::abs(v.rise_time - 3.9120) <= 0.01);
    CHECK(v.deviation == 0.0);
  }

  TEST_CASE("evaluate on a loop stuck at one half") {
    const auto v = evaluate({1.0, 0.0, 0.0}, TransferFunction({1.0}, {1.0, 1.0}), SimConfig{}, SettlingBand{});
    CHECK_FALSE(v.rose);
    CHECK(v.rise_term == 1.0);
    CHECK(v.deviation == 0.0);
    CHECK(v.total == 1.0);
  }

  TEST_CASE("identically one response scores zero") {
    const auto v = score_response(make_response(std::vector<double>(50, 1.0)), SettlingBand{});
    CHECK(v.total == 0.0);
    CHECK(v.rise_time == 0.0);
  }

  TEST_CASE("zero controller on benchmark3 scores one") {
    const auto v = evaluate({0.0, 0.0, 0.0}, kBenchmark3, SimConfig{}, SettlingBand{});
    CHECK(v.total == 1.0);
  }

  TEST_CASE("improper loop propagates") {
    try {
      evaluate({1.0, 0.0, 1.0}, TransferFunction({1.0}, {1.0}), SimConfig{}, SettlingBand{});
      FAIL("expected ImproperLoop");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ImproperLoop);
    }
  }

  TEST_CASE("oracle equivalence on random stable loops") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> kp(0.0, 5.0), ki(0.0, 2.0), kd(0.0, 3.0);
    int checked = 0;
    while (checked < 100) {
      const PidGains g{kp(rng), ki(rng), kd(rng)};
      const auto e = evaluate_with_response(g, kBenchmark3, SimConfig{}, SettlingBand{});
      if (e.response.diverged) continue;
      const auto want = brute_force_score(e.response, SettlingBand{});
      REQUIRE(std::abs(e.value.total - want.total) <= 1e-12);
      REQUIRE(std::abs(e.value.rise_time - want.rise_time) <= 1e-12);
      REQUIRE(std::abs(e.value.deviation - want.deviation) <= 1e-12);
      REQUIRE(e.value.rose == want.rose);
      ++checked;
    }
  }

  TEST_CASE("totality, decomposition and interpolation bound over arbitrary gains") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> gain(-20.0, 20.0);
    const SimConfig cfg;
    for (int i = 0; i < 150; ++i) {
      const PidGains g{gain(rng), gain(rng), gain(rng)};
      const auto e = evaluate_with_response(g, kBenchmark3, cfg, SettlingBand{});
      const auto& v = e.value;
      REQUIRE(std::isfinite(v.total));
      CHECK(v.total - v.rise_term - v.deviation == 0.0);
      CHECK(v.rise_time >= 0.0);
      CHECK(v.rise_time <= cfg.t_max);
      CHECK(v.rise_term <= 1.0);
      CHECK(v.deviation >= 0.0);
      if (v.rose && v.rise_time > 0.0) {
        const double snapped = std::ceil(v.rise_time / cfg.dt - 1e-9) * cfg.dt;
        CHECK(snapped - v.rise_time < cfg.dt);
      }
    }
  }

  TEST_CASE("band edges isolate each deviation side") {
    const auto r = make_response({0.0, 0.5, 1.0, 1.3, 0.9, 1.0});
    SettlingBand band;
    const auto rise = rise_time(r, band);
    SettlingBand no_lower = band;
    no_lower.lower = -1e300;
    no_lower.rise_level = band.rise_level;
    CHECK(band_deviation(r, no_lower, rise.seconds, rise.rose) == doctest::Approx(1.3 - 1.02));
    SettlingBand no_upper = band;
    no_upper.upper = 1e300;
    CHECK(band_deviation(r, no_upper, rise.seconds, rise.rose) == doctest::Approx(0.98 - 0.9));
  }

  TEST_CASE("diverged responses rank above bounded ones and by blow-up time") {
    const SimConfig cfg;
    const SettlingBand band;
    // Closed loop s^3 + 3 s^2 + 3 s + 1 + kp: unstable beyond kp = 8, faster growth for larger kp.
    const auto slow = evaluate_with_response({15.0, 0.0, 0.0}, kBenchmark3, cfg, band);
    const auto fast = evaluate_with_response({30.0, 0.0, 0.0}, kBenchmark3, cfg, band);
    const auto stable = evaluate_with_response({7.9, 0.0, 0.0}, kBenchmark3, cfg, band);
    REQUIRE(slow.response.diverged);
    REQUIRE(fast.response.diverged);
    REQUIRE_FALSE(stable.response.diverged);
    CHECK(fast.response.divergence_time < slow.response.divergence_time);
    CHECK(fast.value.total > slow.value.total);
    CHECK(slow.value.total > stable.value.total);
    CHECK(slow.value.deviation >= cfg.blow_up_limit + band.upper);
    CHECK(fast.value.deviation < 2.0 * cfg.blow_up_limit + band.upper);
    // Negative gains diverge downward without rising; still ordered and above bounded responses.
    const auto negative = evaluate_with_response({-5.0, -1.0, 0.0}, kBenchmark3, cfg, band);
    REQUIRE(negative.response.diverged);
    CHECK_FALSE(negative.value.rose);
    CHECK(negative.value.total > stable.value.total);
  }
}
