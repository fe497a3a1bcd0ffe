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

#include "qbattery/supermodes.hpp"

#include <cmath>

namespace qbattery {

namespace {

constexpr double kResidualFloor = 1e-10;
constexpr double kDriveFloor = 1e-12;
constexpr double kResonanceTolerance = 1e-12;

}  // namespace

SupermodeBasis basic_supermodes(double omega, double g) {
  if (!(g >= 0.0)) throw ModelError("basic_supermodes: g must be >= 0");
  const double s = 1.0 / std::sqrt(2.0);
  SupermodeBasis out;
  out.basis.resize(2, 2);
  out.basis << s, s, s, -s;
  out.frequencies.resize(2);
  out.frequencies << omega + g, omega - g;
  out.drive_weights = out.basis.col(0);
  return out;
}

SupermodeBasis catalyst_supermodes(double omega, double g_aq, double g_bq) {
  if (!(g_aq >= 0.0 && g_bq >= 0.0)) throw ModelError("couplings must be >= 0");
  const double g = std::hypot(g_aq, g_bq);
  if (g == 0.0) throw ModelError("catalyst_supermodes: g_aq and g_bq are both zero");
  const double sin_t = g_aq / g;
  const double cos_t = g_bq / g;
  SupermodeBasis out;
  out.basis.resize(2, 2);
  out.basis << sin_t, cos_t, cos_t, -sin_t;
  out.frequencies = Eigen::VectorXd::Constant(2, omega);
  out.qubit_coupling = g;
  out.drive_weights = out.basis.col(0);
  return out;
}

SupermodeBasis bogoliubov_basis(double omega, std::span<const double> couplings) {
  const auto n = static_cast<Eigen::Index>(couplings.size());
  if (n < 2) throw ModelError("bogoliubov_basis: need a charger and at least one cell");
  Eigen::VectorXd g(n);
  for (Eigen::Index i = 0; i < n; ++i) g(i) = couplings[static_cast<std::size_t>(i)];
  const double norm = g.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ModelError("bogoliubov_basis: coupling vector must be nonzero and finite");
  }

  Eigen::MatrixXd rows(n, n);
  rows.row(0) = g.transpose() / norm;
  Eigen::Index filled = 1;
  for (Eigen::Index j = 0; j < n && filled < n; ++j) {
    Eigen::VectorXd r = Eigen::VectorXd::Unit(n, j);
    // Two passes of modified Gram-Schmidt keep the rows orthonormal to ~1e-16.
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < filled; ++i) r -= rows.row(i).dot(r) * rows.row(i).transpose();
    const double rn = r.norm();
    if (rn < kResidualFloor) continue;
    rows.row(filled++) = r.transpose() / rn;
  }

  SupermodeBasis out;
  out.basis = std::move(rows);
  out.frequencies = Eigen::VectorXd::Constant(n, omega);
  out.qubit_coupling = norm;
  out.drive_weights = out.basis.col(0);
  return out;
}

std::vector<ModeResonance> resonance_report(const SupermodeBasis& basis, double omega_f) {
  std::vector<ModeResonance> out;
  for (int i = 0; i < basis.modes(); ++i) {
    ModeResonance r;
    r.mode = i;
    r.detuning = basis.frequencies(i) - omega_f;
    r.driven = std::abs(basis.drive_weights(i)) > kDriveFloor;
    r.qubit_coupled = basis.qubit_coupling.has_value() && i == 0;
    r.resonant = r.driven && std::abs(r.detuning) <= kResonanceTolerance;
    out.push_back(r);
  }
  return out;
}

std::vector<int> mode_sites(const Generator& gen) {
  std::vector<int> sites{gen.charger_site};
  sites.insert(sites.end(), gen.battery_sites.begin(), gen.battery_sites.end());
  return sites;
}

Operator supermode_hamiltonian(const Generator& gen, const SupermodeBasis& basis,
                               double qubit_frequency, double drive_frequency,
                               double drive_amplitude) {
  const std::vector<int> sites = mode_sites(gen);
  if (static_cast<int>(sites.size()) != basis.modes()) {
    throw DimensionError("super-mode basis size does not match the generator's oscillators");
  }
  const SpaceDescriptor& space = gen.space;
  std::vector<Operator> local;
  for (int s : sites) local.push_back(embed(annihilation(space.dim(s)), s, space));

  Operator h = zero_operator(space);
  for (int i = 0; i < basis.modes(); ++i) {
    Operator c = zero_operator(space);
    for (int l = 0; l < basis.modes(); ++l)
      c = add_scaled(c, basis.basis(i, l), local[static_cast<std::size_t>(l)]);
    const Operator cd = adjoint(c);
    h = add_scaled(h, basis.frequencies(i) - drive_frequency, multiply(cd, c));
    h = add_scaled(h, drive_amplitude * basis.drive_weights(i), c + cd);
    if (i == 0 && basis.qubit_coupling) {
      if (!gen.qubit_site) throw DimensionError("basis has a qubit coupling but the model has no qubit");
      const Operator q = embed(qubit_lowering(), *gen.qubit_site, space);
      const Operator qd = adjoint(q);
      h = add_scaled(h, *basis.qubit_coupling, multiply(c, qd) + multiply(cd, q));
      h = add_scaled(h, qubit_frequency - drive_frequency, multiply(qd, q));
    }
  }
  return h;
}

}  // namespace qbattery
