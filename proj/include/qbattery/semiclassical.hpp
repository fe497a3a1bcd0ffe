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

// Coherent-amplitude oracle for the two-oscillator model at zero
// temperature. A linearly coupled, linearly driven oscillator pair with
// zero-temperature loss keeps a product coherent state coherent, so the
// vacuum start is fully described by the amplitudes (alpha, beta):
//
//   alpha' = -i (omega_a - omega_f) alpha - i g beta - i F - (gamma/2) alpha
//   beta'  = -i (omega_b - omega_f) beta  - i g alpha
//
// in the same drive-rotating frame as the Fock-space models.

#ifndef QBATTERY_SEMICLASSICAL_HPP
#define QBATTERY_SEMICLASSICAL_HPP

#include <complex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qbattery/models.hpp"

namespace qbattery {

struct MomentState {
  double t = 0.0;
  std::complex<double> alpha;  // charger
  std::complex<double> beta;   // battery

  double charger_energy() const { return std::norm(alpha); }
  double battery_energy() const { return std::norm(beta); }
};

/// Time derivative of (alpha, beta).
std::pair<std::complex<double>, std::complex<double>> moment_rhs(const BasicModelParams& p,
                                                                 std::complex<double> alpha,
                                                                 std::complex<double> beta);

/// RK4 on the amplitude equations from vacuum, sampled on `t_grid`
/// (non-decreasing, starting at t >= 0). Substeps never exceed `dt`; a
/// non-positive dt selects one tenth of the Fock integrator's default step.
/// Throws ModelError for n_thermal != 0.
std::vector<MomentState> moment_evolve(const BasicModelParams& p, std::span<const double> t_grid,
                                       double dt = 0.0);

/// Undamped resonant solution alpha = -i (F/g) sin(gt),
/// beta = (F/g)(cos(gt) - 1); at g = 0 the limit alpha = -iFt, beta = 0.
std::pair<std::complex<double>, std::complex<double>> closed_form_resonant(double g, double F,
                                                                           double t);

}  // namespace qbattery

#endif  // QBATTERY_SEMICLASSICAL_HPP
