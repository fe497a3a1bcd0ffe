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

#ifndef QBATTERY_SUPERMODES_HPP
#define QBATTERY_SUPERMODES_HPP

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qbattery/models.hpp"

namespace qbattery {

/// Global (normal) modes C_i = sum_l basis(i, l) a_l of a linear
/// oscillator network. Local mode 0 is always the driven charger.
struct SupermodeBasis {
  Eigen::MatrixXd basis;
  Eigen::VectorXd frequencies;
  /// Coupling of C_0 to the qubit; empty for the qubit-free model.
  std::optional<double> qubit_coupling;
  /// Weight of each super-mode in the drive, a_0 = sum_i chi_i C_i, so
  /// chi is the first column of `basis`.
  Eigen::VectorXd drive_weights;

  int modes() const { return static_cast<int>(basis.rows()); }
};

/// C_+- = (a +- b)/sqrt(2) at omega +- g. Row 0 is C_+.
SupermodeBasis basic_supermodes(double omega, double g);

/// Rotation by theta with sin(theta) = g_aq/|g|, cos(theta) = g_bq/|g|.
/// Row 0 is the qubit-coupled C_+ = sin a + cos b, row 1 the dark mode
/// C_- = cos a - sin b. Throws ModelError if both couplings vanish.
SupermodeBasis catalyst_supermodes(double omega, double g_aq, double g_bq);

/// Orthonormal completion of the normalized coupling vector (row 0) by
/// Gram-Schmidt against e_0, e_1, ..., skipping candidates whose residual
/// norm falls below 1e-10. Throws ModelError on a zero or too short vector.
SupermodeBasis bogoliubov_basis(double omega, std::span<const double> couplings);

struct ModeResonance {
  int mode;
  double detuning;  // omega_i - omega_f
  bool driven;      // |chi_i| > 1e-12
  bool qubit_coupled;
  bool resonant;    // driven at zero detuning
};

std::vector<ModeResonance> resonance_report(const SupermodeBasis& basis, double omega_f);

/// Rotating-frame Hamiltonian rebuilt from super-mode operators:
///   sum_i (omega_i - omega_f) C_i^dag C_i + (omega_q - omega_f) q^dag q
///   + |g| (C_0 q^dag + h.c.) + F sum_i chi_i (C_i + C_i^dag).
/// For the catalyst and k-cell generators this must reproduce h_static.
Operator supermode_hamiltonian(const Generator& gen, const SupermodeBasis& basis,
                               double qubit_frequency, double drive_frequency,
                               double drive_amplitude);

/// Local oscillator sites of `gen` in super-mode index order (charger first).
std::vector<int> mode_sites(const Generator& gen);

}  // namespace qbattery

#endif  // QBATTERY_SUPERMODES_HPP
