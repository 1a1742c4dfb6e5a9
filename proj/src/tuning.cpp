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

#include "pidtune/tuning.hpp"

#include "pidtune/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pidtune {

std::vector<std::complex<double>> polynomial_roots(const Poly& p) {
  const Poly q = trim_leading_zeros(p);
  const int degree = static_cast<int>(q.size()) - 1;
  if (degree < 1) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -q[static_cast<std::size_t>(degree - i)] / q[0];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  const Eigen::VectorXcd values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

double max_real_part(const Poly& p) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& r : polynomial_roots(p)) best = std::max(best, r.real());
  return best;
}

Poly proportional_characteristic(const TransferFunction& plant, double k) {
  return poly_add(plant.den(), poly_scale(plant.num(), k));
}

UltimatePoint ultimate_point(const TransferFunction& plant, double k_search_max) {
  if (!plant.is_proper()) throw Error(ErrorCode::ImproperSystem, "plant must be proper");
  if (!(k_search_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "k_search_max must be positive");
  auto stable = [&](double k) { return max_real_part(proportional_characteristic(plant, k)) < 0.0; };

  // Powers of two from 2^-20 upward, ending exactly at k_search_max.
  std::vector<double> grid;
  for (double k = std::ldexp(1.0, -20); k < k_search_max; k *= 2.0) grid.push_back(k);
  grid.push_back(k_search_max);

  double lo = 0.0;
  double hi = 0.0;
  bool seen_stable = false;
  for (double k : grid) {
    if (stable(k)) {
      seen_stable = true;
      lo = k;
    } else if (seen_stable) {
      hi = k;
      break;
    }
  }
  if (hi == 0.0) {
    throw Error(ErrorCode::NoUltimateGain,
                "proportional loop never crosses the stability boundary for k in (0, " +
                    std::to_string(k_search_max) + "]");
  }
  while (hi - lo > 1e-9 * hi) {
    const double mid = 0.5 * (lo + hi);
    (stable(mid) ? lo : hi) = mid;
  }

  const double ku = 0.5 * (lo + hi);
  const auto roots = polynomial_roots(proportional_characteristic(plant, ku));
  const auto boundary = std::max_element(roots.begin(), roots.end(),
                                         [](const auto& a, const auto& b) { return a.real() < b.real(); });
  const double omega = std::abs(boundary->imag());
  if (!(omega > 1e-8)) {
    throw Error(ErrorCode::NoUltimateGain, "stability boundary is crossed by a real root; no oscillation period");
  }
  return {ku, 2.0 * std::numbers::pi / omega};
}

PidGains zn_pid_gains(const UltimatePoint& up) {
  return {0.6 * up.ku, 1.2 * up.ku / up.tu, 0.075 * up.ku * up.tu};
}

void RandomStartConfig::validate() const {
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(std::isfinite(low[i]) && std::isfinite(high[i]) && low[i] < high[i])) {
      throw Error(ErrorCode::InvalidArgument, "random start bounds require finite low < high");
    }
  }
}

GainSampler::GainSampler(const RandomStartConfig& cfg) : cfg_(cfg), engine_(cfg.seed) { cfg_.validate(); }

double GainSampler::draw(std::size_t component) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  const double lo = cfg_.low[component];
  const double hi = cfg_.high[component];
  return std::min(hi, lo + (hi - lo) * unit);
}

PidGains GainSampler::next() {
  PidGains g;
  g.kp = draw(0);
  g.ki = draw(1);
  g.kd = draw(2);
  return g;
}

PidGains random_gains(const RandomStartConfig& cfg) { return GainSampler(cfg).next(); }

}  // namespace pidtune
