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

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace pidtune {

// Coefficients, highest degree first.
using Poly = std::vector<double>;

// Degree ignoring leading zeros; the zero polynomial reports -1.
int effective_degree(const Poly& p);
Poly trim_leading_zeros(const Poly& p);
Poly poly_mul(const Poly& a, const Poly& b);
// Right-aligned sum (constant terms line up).
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& p, double factor);

// Ratio of real polynomials in s. The ratio itself may be improper (an ideal
// PID controller is); properness is enforced where a realization is needed.
class TransferFunction {
 public:
  TransferFunction(Poly num, Poly den);

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }

  int num_degree() const { return effective_degree(num_); }
  int den_degree() const { return static_cast<int>(den_.size()) - 1; }
  bool is_proper() const { return num_degree() <= den_degree(); }
  // den degree minus num degree; a zero numerator gives den degree + 1.
  int relative_degree() const;

 private:
  Poly num_;
  Poly den_;
};

struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;

  bool operator==(const PidGains&) const = default;
};

struct StateSpace {
  Eigen::MatrixXd a;  // n x n
  Eigen::MatrixXd b;  // n x 1
  Eigen::MatrixXd c;  // 1 x n
  double d = 0.0;

  Eigen::Index order() const { return a.rows(); }
};

struct SimConfig {
  double t_max = 100.0;
  double dt = 0.01;
  double blow_up_limit = 1e6;

  // Throws Error(InvalidArgument) when the invariants do not hold.
  void validate() const;
  std::size_t sample_count() const;
};

struct StepResponse {
  double dt = 0.0;
  double t_max = 0.0;
  std::vector<double> values;
  bool diverged = false;
  // When diverged: time at which max(|x|, |z|) crossed blow_up_limit,
  // interpolated on a log scale between the bracketing samples.
  double divergence_time = 0.0;
  double blow_up_limit = 0.0;

  double time_at(std::size_t k) const { return static_cast<double>(k) * dt; }
};

// C(s) = (kd s^2 + kp s + ki) / s, never simplified.
TransferFunction pid_transfer_function(const PidGains& gains);

// C G / (1 + C G) without common-factor cancellation. Throws
// Error(ImproperLoop) when deg(num_C num_G) > deg(den_C den_G) or the loop
// is algebraically ill-posed (1 + C G vanishes identically at infinity).
TransferFunction close_unity_feedback(const TransferFunction& controller,
                                      const TransferFunction& plant);

// Controllable canonical realization. Throws Error(ImproperSystem).
StateSpace tf_to_state_space(const TransferFunction& tf);

// Transfer function of a single-input single-output realization, computed
// through the Faddeev-LeVerrier recursion (characteristic polynomial and
// adjugate). Returned with a monic denominator.
TransferFunction state_space_to_tf(const StateSpace& ss);

// Unit step from rest, classical RK4 at fixed step cfg.dt. For a linear
// system the four RK4 stages collapse into one fixed propagator
// x+ = Phi x + Gamma, which is what gets applied per step.
StepResponse simulate_step(const StateSpace& ss, const SimConfig& cfg);

}  // namespace pidtune
