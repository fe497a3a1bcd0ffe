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

// Liouvillian generators for the charger-battery family of models.
//
// All builders work in the frame rotating at the drive frequency, so that a
// monochromatic drive becomes a static term F(a + a^dag) and every local
// mode picks up a diagonal shift (omega_i - omega_f) n_i. Energies stay
// defined through the lab-frame local Hamiltonians omega_i n_i, which
// commute with the frame change.
//
// Subsystem order is fixed per model:
//   basic     [charger, battery]
//   catalyst  [charger, qubit, battery]
//   k-cell    [charger, qubit, cell 1, ..., cell k]

#ifndef QBATTERY_MODELS_HPP
#define QBATTERY_MODELS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbattery/hilbert.hpp"

namespace qbattery {

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BasicModelParams {
  double charger_frequency = 1.0;
  double battery_frequency = 1.0;
  double coupling = 0.2;
  double drive_amplitude = 0.1;
  double drive_frequency = 1.0;
  double decay_rate = 0.1;
  double thermal_occupation = 0.0;
  int charger_cutoff = 30;
  int battery_cutoff = 30;

  /// Laser detuning from the charger, omega_f - omega_a.
  double drive_detuning() const { return drive_frequency - charger_frequency; }
};

struct CatalystModelParams {
  double oscillator_frequency = 1.0;
  double qubit_frequency = 1.0;
  double charger_qubit_coupling = 0.2;
  double battery_qubit_coupling = 0.2;
  double drive_amplitude = 0.1;
  double drive_frequency = 1.0;
  double decay_rate = 0.1;
  double thermal_occupation = 0.0;
  int charger_cutoff = 30;
  int battery_cutoff = 30;

  /// omega - omega_q
  double qubit_detuning() const { return oscillator_frequency - qubit_frequency; }
};

/// Charger (mode 0) plus k battery cells, each coupled to one qubit.
struct KCellModelParams {
  double oscillator_frequency = 1.0;
  double qubit_frequency = 1.0;
  std::vector<double> couplings;  // index 0 is the charger
  double drive_amplitude = 0.1;
  double drive_frequency = 1.0;
  double decay_rate = 0.1;
  double thermal_occupation = 0.0;
  std::vector<int> cutoffs;  // per mode, same indexing as couplings

  int cells() const { return static_cast<int>(couplings.size()) - 1; }
};

void validate(const BasicModelParams& p);
void validate(const CatalystModelParams& p);
void validate(const KCellModelParams& p);

enum class SubsystemKind { Oscillator, Qubit };

struct Subsystem {
  std::string name;
  SubsystemKind kind;
  double frequency;
  /// frequency * n on this factor alone (not embedded).
  Operator local_hamiltonian;
};

/// Phase-modulated drive, contributing e^{-i delta t} positive +
/// e^{+i delta t} negative to the Hamiltonian.
struct DriveTerm {
  Operator positive;
  Operator negative;
  double delta;
};

/// Dissipator channel rate * D[op].
struct CollapseOperator {
  double rate;
  Operator op;
};

struct Generator {
  SpaceDescriptor space;
  Operator h_static;
  std::optional<DriveTerm> drive;
  std::vector<CollapseOperator> collapse_ops;
  std::vector<Subsystem> subsystems;
  int charger_site = 0;
  std::vector<int> battery_sites;
  std::optional<int> qubit_site;
  /// Fastest rate in the rotating frame: max of |detunings|, couplings,
  /// drive amplitude and decay rate. Sets the default step size.
  double characteristic_rate = 0.0;

  bool time_dependent() const { return drive.has_value(); }
  Operator hamiltonian_at(double t) const;
  std::vector<int> oscillator_sites() const;
};

/// Throws ModelError if h_static is not Hermitian to 1e-12, the drive pair
/// is not adjoint, a rate is negative, or any operator is off-space.
void validate(const Generator& gen);

Generator build_basic(const BasicModelParams& p);
Generator build_catalyst(const CatalystModelParams& p);
Generator build_kcell(const KCellModelParams& p);

/// Basic model in the interaction picture of omega (a^dag a + b^dag b):
/// static coupling plus an explicitly phase-modulated drive with
/// delta = omega_f - omega. Requires equal charger and battery frequencies.
Generator build_basic_interaction_picture(const BasicModelParams& p);

}  // namespace qbattery

#endif  // QBATTERY_MODELS_HPP
