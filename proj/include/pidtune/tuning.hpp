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

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace pidtune {

// Roots of a real polynomial (highest degree first) as eigenvalues of its
// companion matrix. Leading zeros are ignored; constants have no roots.
std::vector<std::complex<double>> polynomial_roots(const Poly& p);

// Largest real part among the roots; -infinity for a root-free polynomial.
double max_real_part(const Poly& p);

// den + k * num, right-aligned.
Poly proportional_characteristic(const TransferFunction& plant, double k);

struct UltimatePoint {
  double ku = 0.0;  // gain placing the proportional loop on the stability boundary
  double tu = 0.0;  // period of the boundary oscillation, seconds
};

inline constexpr double kDefaultGainSearchMax = 1e6;

// Smallest proportional gain at which den + k num gains a root on the
// imaginary axis. The bracket is hunted on powers of two up to k_search_max
// and refined by bisection to 1e-9 relative.
// Throws Error(NoUltimateGain) when no stable-to-unstable transition exists
// in (0, k_search_max] or the crossing is not oscillatory.
UltimatePoint ultimate_point(const TransferFunction& plant, double k_search_max = kDefaultGainSearchMax);

// Classic closed-loop Ziegler-Nichols PID row: Kp = 0.6 Ku, Ti = Tu/2, Td = Tu/8.
PidGains zn_pid_gains(const UltimatePoint& up);

struct RandomStartConfig {
  std::uint64_t seed = 0;
  std::array<double, 3> low{-10.0, -10.0, -10.0};   // kp, ki, kd
  std::array<double, 3> high{10.0, 10.0, 10.0};

  void validate() const;
};

// Uniform gains from std::mt19937_64, whose output sequence is fixed by the
// C++ standard. Each draw maps the top 53 bits of one engine output to
// [0, 1) and scales it into [low, high]; no std::*_distribution is involved,
// so streams match across standard libraries.
class GainSampler {
 public:
  explicit GainSampler(const RandomStartConfig& cfg);

  PidGains next();

 private:
  double draw(std::size_t component);

  RandomStartConfig cfg_;
  std::mt19937_64 engine_;
};

// First triple of the stream for cfg.seed.
PidGains random_gains(const RandomStartConfig& cfg);

}  // namespace pidtune
