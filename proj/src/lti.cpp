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

#include "pidtune/lti.hpp"

#include "pidtune/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pidtune {

namespace {

bool all_finite(const Poly& p) {
  return std::all_of(p.begin(), p.end(), [](double v) { return std::isfinite(v); });
}

// Guards against typos such as --dt 1e-12 allocating terabytes.
constexpr double kMaxSamples = 5e7;

}  // namespace

int effective_degree(const Poly& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != 0.0) return static_cast<int>(p.size() - 1 - i);
  }
  return -1;
}

Poly trim_leading_zeros(const Poly& p) {
  auto first = std::find_if(p.begin(), p.end(), [](double v) { return v != 0.0; });
  if (first == p.end()) return Poly{0.0};
  return Poly(first, p.end());
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return Poly{0.0};
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly poly_add(const Poly& a, const Poly& b) {
  const std::size_t n = std::max(a.size(), b.size());
  Poly out(n, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[n - a.size() + i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[n - b.size() + i] += b[i];
  return out;
}

Poly poly_scale(const Poly& p, double factor) {
  Poly out(p);
  for (double& v : out) v *= factor;
  return out;
}

TransferFunction::TransferFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.empty()) num_ = Poly{0.0};
  if (den_.empty()) throw Error(ErrorCode::InvalidArgument, "transfer function denominator is empty");
  if (den_.front() == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "transfer function denominator has a zero leading coefficient");
  }
  if (!all_finite(num_) || !all_finite(den_)) {
    throw Error(ErrorCode::InvalidArgument, "transfer function coefficients must be finite");
  }
}

int TransferFunction::relative_degree() const { return den_degree() - num_degree(); }

void SimConfig::validate() const {
  if (!(std::isfinite(t_max) && t_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_max must be positive");
  if (!(std::isfinite(dt) && dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  if (dt > t_max) throw Error(ErrorCode::InvalidArgument, "dt must not exceed t_max");
  if (!(std::isfinite(blow_up_limit) && blow_up_limit > 2.0)) {
    throw Error(ErrorCode::InvalidArgument, "blow_up_limit must exceed 2");
  }
  if (t_max / dt > kMaxSamples) throw Error(ErrorCode::InvalidArgument, "t_max/dt exceeds the sample budget");
}

std::size_t SimConfig::sample_count() const {
  return static_cast<std::size_t>(std::floor(t_max / dt)) + 1;
}

TransferFunction pid_transfer_function(const PidGains& gains) {
  return TransferFunction({gains.kd, gains.kp, gains.ki}, {1.0, 0.0});
}

TransferFunction close_unity_feedback(const TransferFunction& controller, const TransferFunction& plant) {
  const Poly open_num = poly_mul(controller.num(), plant.num());
  const Poly open_den = poly_mul(controller.den(), plant.den());
  const int num_deg = effective_degree(open_num);
  const int den_deg = effective_degree(open_den);
  if (num_deg > den_deg) {
    throw Error(ErrorCode::ImproperLoop,
                "closed loop is improper: open-loop numerator degree " + std::to_string(num_deg) +
                    " exceeds denominator degree " + std::to_string(den_deg) +
                    " (the plant needs a higher relative degree for this controller)");
  }
  const Poly closed_den = trim_leading_zeros(poly_add(open_den, open_num));
  if (effective_degree(closed_den) < std::max(num_deg, 0)) {
    throw Error(ErrorCode::ImproperLoop, "closed loop is ill-posed: 1 + C(s)G(s) loses its leading term");
  }
  return TransferFunction(trim_leading_zeros(open_num), closed_den);
}

StateSpace tf_to_state_space(const TransferFunction& tf) {
  if (!tf.is_proper()) {
    throw Error(ErrorCode::ImproperSystem, "cannot realize an improper transfer function (numerator degree " +
                                               std::to_string(tf.num_degree()) + " > denominator degree " +
                                               std::to_string(tf.den_degree()) + ")");
  }
  const int n = tf.den_degree();
  const double lead = tf.den().front();
  const Poly den = poly_scale(tf.den(), 1.0 / lead);
  // Numerator right-aligned to n+1 entries; it has no nonzero terms above s^n.
  Poly num(static_cast<std::size_t>(n) + 1, 0.0);
  const Poly trimmed = trim_leading_zeros(tf.num());
  std::copy(trimmed.begin(), trimmed.end(), num.end() - static_cast<std::ptrdiff_t>(trimmed.size()));
  for (double& v : num) v /= lead;

  StateSpace ss;
  ss.d = num[0];
  ss.a = Eigen::MatrixXd::Zero(n, n);
  ss.b = Eigen::MatrixXd::Zero(n, 1);
  ss.c = Eigen::MatrixXd::Zero(1, n);
  if (n == 0) return ss;
  for (int i = 0; i + 1 < n; ++i) ss.a(i, i + 1) = 1.0;
  for (int i = 0; i < n; ++i) {
    ss.a(n - 1, i) = -den[n - i];
    ss.c(0, i) = num[n - i] - ss.d * den[n - i];
  }
  ss.b(n - 1, 0) = 1.0;
  return ss;
}

TransferFunction state_space_to_tf(const StateSpace& ss) {
  const Eigen::Index n = ss.order();
  Poly den(static_cast<std::size_t>(n) + 1, 0.0);
  Poly num(static_cast<std::size_t>(n) + 1, 0.0);
  den[0] = 1.0;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = ss.a * m + den[static_cast<std::size_t>(k - 1)] * identity;
    den[static_cast<std::size_t>(k)] = -(ss.a * m).trace() / static_cast<double>(k);
    num[static_cast<std::size_t>(k)] = (ss.c * m * ss.b)(0, 0);
  }
  for (std::size_t k = 0; k < num.size(); ++k) num[k] += ss.d * den[k];
  return TransferFunction(std::move(num), std::move(den));
}

StepResponse simulate_step(const StateSpace& ss, const SimConfig& cfg) {
  cfg.validate();
  const std::size_t count = cfg.sample_count();
  const double limit = cfg.blow_up_limit;
  const Eigen::Index n = ss.order();

  StepResponse out;
  out.dt = cfg.dt;
  out.t_max = cfg.t_max;
  out.blow_up_limit = limit;
  out.values.assign(count, 0.0);

  // prev_mag and mag are max(|x|, |z|) at samples k-1 and k.
  auto diverge_from = [&](std::size_t k, double z, double prev_mag, double mag) {
    double fraction = 1.0;
    if (k > 0 && prev_mag > 0.0 && std::isfinite(mag) && mag > prev_mag) {
      fraction = std::clamp(std::log(limit / prev_mag) / std::log(mag / prev_mag), 0.0, 1.0);
    }
    out.divergence_time = k == 0 ? 0.0 : (static_cast<double>(k - 1) + fraction) * cfg.dt;
    const double sign = (std::isfinite(z) && z < 0.0) ? -1.0 : 1.0;
    out.values[k] = std::isfinite(z) ? std::clamp(z, -limit, limit) : sign * limit;
    std::fill(out.values.begin() + static_cast<std::ptrdiff_t>(k) + 1, out.values.end(), sign * limit);
    out.diverged = true;
  };

  if (std::abs(ss.d) > limit) {
    diverge_from(0, ss.d, 0.0, std::abs(ss.d));
    return out;
  }
  out.values[0] = ss.d;
  if (n == 0) {
    std::fill(out.values.begin(), out.values.end(), ss.d);
    return out;
  }

  // RK4 on x' = A x + b: Phi = sum_{j<=4} (hA)^j / j!, Gamma = h sum_{j<=3} (hA)^j / (j+1)! b.
  const double h = cfg.dt;
  const Eigen::MatrixXd ha = h * ss.a;
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd ha2 = ha * ha;
  const Eigen::MatrixXd ha3 = ha2 * ha;
  const Eigen::MatrixXd ha4 = ha3 * ha;
  const Eigen::MatrixXd phi = identity + ha + ha2 / 2.0 + ha3 / 6.0 + ha4 / 24.0;
  const Eigen::VectorXd gamma = h * (identity + ha / 2.0 + ha2 / 6.0 + ha3 / 24.0) * ss.b.col(0);

  // Flat row-major copies keep the inner loop free of Eigen's dynamic dispatch.
  const auto dim = static_cast<std::size_t>(n);
  std::vector<double> phi_rows(dim * dim);
  std::vector<double> gam(dim), c(dim), x(dim, 0.0), next(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    gam[i] = gamma(static_cast<Eigen::Index>(i));
    c[i] = ss.c(0, static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j < dim; ++j) {
      phi_rows[i * dim + j] = phi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }

  double prev_mag = std::abs(ss.d);
  for (std::size_t k = 1; k < count; ++k) {
    double mag = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < dim; ++i) {
      double acc = gam[i];
      const double* row = &phi_rows[i * dim];
      for (std::size_t j = 0; j < dim; ++j) acc += row[j] * x[j];
      next[i] = acc;
      finite = finite && std::isfinite(acc);
      mag = std::max(mag, std::abs(acc));
    }
    x.swap(next);
    double z = ss.d;
    for (std::size_t i = 0; i < dim; ++i) z += c[i] * x[i];
    finite = finite && std::isfinite(z);
    mag = finite ? std::max(mag, std::abs(z)) : std::numeric_limits<double>::infinity();
    if (mag > limit) {
      diverge_from(k, z, prev_mag, mag);
      break;
    }
    out.values[k] = z;
    prev_mag = mag;
  }
  return out;
}

}  // namespace pidtune
