// Copyright 2026 The qbattery Authors
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

#include "qbattery/semiclassical.hpp"

#include <algorithm>
#include <cmath>

namespace qbattery {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

double default_moment_dt(const BasicModelParams& p) {
  const double rate =
      std::max({std::abs(p.charger_frequency - p.drive_frequency),
                std::abs(p.battery_frequency - p.drive_frequency), p.coupling, p.drive_amplitude,
                p.decay_rate});
  return (rate > 0.0 ? 0.01 / rate : 0.01) / 10.0;
}

}  // namespace

std::pair<cd, cd> moment_rhs(const BasicModelParams& p, cd alpha, cd beta) {
  const double da = p.charger_frequency - p.drive_frequency;
  const double db = p.battery_frequency - p.drive_frequency;
  const cd dalpha = -kI * da * alpha - kI * p.coupling * beta - kI * p.drive_amplitude -
                    0.5 * p.decay_rate * alpha;
  const cd dbeta = -kI * db * beta - kI * p.coupling * alpha;
  return {dalpha, dbeta};
}

std::vector<MomentState> moment_evolve(const BasicModelParams& p, std::span<const double> t_grid,
                                       double dt) {
  validate(p);
  if (p.thermal_occupation != 0.0) {
    throw ModelError("moment oracle needs n_thermal = 0: thermal noise breaks the coherent-state "
                     "closure");
  }
  const double h_max = dt > 0.0 ? dt : default_moment_dt(p);

  std::vector<MomentState> out;
  out.reserve(t_grid.size());
  double t = 0.0;
  cd alpha{}, beta{};
  for (double target : t_grid) {
    if (!(target >= t)) throw std::invalid_argument("moment_evolve: time grid must be non-decreasing from 0");
    const double span = target - t;
    const long n = span > 0.0 ? static_cast<long>(std::ceil(span / h_max - 1e-12)) : 0;
    const double h = n > 0 ? span / static_cast<double>(n) : 0.0;
    for (long i = 0; i < n; ++i) {
      const auto [a1, b1] = moment_rhs(p, alpha, beta);
      const auto [a2, b2] = moment_rhs(p, alpha + 0.5 * h * a1, beta + 0.5 * h * b1);
      const auto [a3, b3] = moment_rhs(p, alpha + 0.5 * h * a2, beta + 0.5 * h * b2);
      const auto [a4, b4] = moment_rhs(p, alpha + h * a3, beta + h * b3);
      alpha += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
      beta += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
    }
    t = target;
    out.push_back({t, alpha, beta});
  }
  return out;
}

std::pair<cd, cd> closed_form_resonant(double g, double F, double t) {
  if (g == 0.0) return {-kI * F * t, cd{}};
  const double r = F / g;
  return {-kI * r * std::sin(g * t), cd(r * (std::cos(g * t) - 1.0), 0.0)};
}

}  // namespace qbattery
