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

#ifndef QBATTERY_OBSERVABLES_HPP
#define QBATTERY_OBSERVABLES_HPP

#include <optional>
#include <span>
#include <vector>

#include "qbattery/models.hpp"
#include "qbattery/state.hpp"

namespace qbattery {

/// Reduced state on the subsystems in `keep`, in the original subsystem
/// order. Throws DimensionError on empty, repeated or out-of-range indices.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// Tr(rho h) / omega, in quanta of the local mode.
double energy(const DensityMatrix& rho, const Operator& h, double omega);

/// Tr(rho h) minus the energy of the passive state (eigenvalues of rho in
/// descending order paired with eigenvalues of h in ascending order), in
/// quanta of omega.
double ergotropy(const DensityMatrix& rho, const Operator& h, double omega);

double purity(const DensityMatrix& rho);

/// -sum lambda log2 lambda over eigenvalues above 1e-14, in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// Per-sample observables along a trajectory.
struct ObservableRecord {
  double t = 0.0;
  std::vector<double> energies;  // per subsystem, quanta
  double charger_energy = 0.0;
  double battery_energy = 0.0;
  std::optional<double> qubit_energy;
  double battery_ergotropy = 0.0;
  double battery_purity = 1.0;
  std::optional<double> qubit_entropy;
  std::optional<double> qubit_excitation;
  double trace_error = 0.0;
  double hermiticity_error = 0.0;
  std::optional<double> min_eigenvalue;
};

/// Battery Hamiltonian (sum of cell Hamiltonians) on the reduced space of
/// gen.battery_sites.
Operator battery_hamiltonian(const Generator& gen);

/// Evaluates every observable of `gen` on `rho`. The full-state spectrum is
/// only computed when `with_spectrum` is set.
ObservableRecord observe(const DensityMatrix& rho, const Generator& gen, double t,
                         bool with_spectrum);

}  // namespace qbattery

#endif  // QBATTERY_OBSERVABLES_HPP
