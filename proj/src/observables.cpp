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

#include "qbattery/observables.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include <Eigen/Eigenvalues>

namespace qbattery {

namespace {

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();  // ascending
}

void require_matching(const DensityMatrix& rho, const Operator& h) {
  if (rho.dim() != h.dim()) {
    throw DimensionError("state of dimension " + std::to_string(rho.dim()) +
                         " does not match operator of dimension " + std::to_string(h.dim()));
  }
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const SpaceDescriptor& space = rho.space();
  const int n = space.subsystems();
  if (keep.empty()) throw DimensionError("partial_trace: keep set is empty");
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int s : keep) {
    space.dim(s);  // range check
    if (kept[static_cast<std::size_t>(s)]) throw DimensionError("partial_trace: repeated index");
    kept[static_cast<std::size_t>(s)] = true;
  }

  std::vector<int> kept_sites, traced_sites;
  for (int s = 0; s < n; ++s) (kept[static_cast<std::size_t>(s)] ? kept_sites : traced_sites).push_back(s);

  // Stride of each site in the full (site 0 most significant) index.
  std::vector<Index> stride(static_cast<std::size_t>(n));
  Index acc = 1;
  for (int s = n - 1; s >= 0; --s) {
    stride[static_cast<std::size_t>(s)] = acc;
    acc *= space.dim(s);
  }
  const auto offsets = [&](const std::vector<int>& sites) {
    std::vector<Index> out{0};
    for (int s : sites) {
      std::vector<Index> next;
      next.reserve(out.size() * static_cast<std::size_t>(space.dim(s)));
      for (Index base : out)
        for (int l = 0; l < space.dim(s); ++l) next.push_back(base + l * stride[static_cast<std::size_t>(s)]);
      out = std::move(next);
    }
    return out;
  };
  const std::vector<Index> kept_off = offsets(kept_sites);
  const std::vector<Index> traced_off = offsets(traced_sites);

  const auto dk = static_cast<Index>(kept_off.size());
  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& m = rho.matrix();
  for (Index j = 0; j < dk; ++j) {
    for (Index i = 0; i < dk; ++i) {
      Complex sum{};
      for (Index t : traced_off) sum += m(kept_off[static_cast<std::size_t>(i)] + t,
                                          kept_off[static_cast<std::size_t>(j)] + t);
      out(i, j) = sum;
    }
  }
  return DensityMatrix(std::move(out), space.restricted(kept_sites));
}

double energy(const DensityMatrix& rho, const Operator& h, double omega) {
  require_matching(rho, h);
  const Complex e = (rho.matrix().transpose().cwiseProduct(h.matrix())).sum();
  if (std::abs(e.imag()) > 1e-10 * std::max(1.0, std::abs(e.real()))) {
    throw StateError("energy has imaginary residue " + std::to_string(e.imag()));
  }
  return e.real() / omega;
}

double ergotropy(const DensityMatrix& rho, const Operator& h, double omega) {
  require_matching(rho, h);
  const Eigen::VectorXd r = hermitian_eigenvalues(rho.matrix());  // ascending
  const Eigen::VectorXd eps = hermitian_eigenvalues(h.matrix());  // ascending
  const Index n = r.size();
  double passive = 0.0;
  for (Index k = 0; k < n; ++k) passive += r(n - 1 - k) * eps(k);
  const double e = energy(rho, h, 1.0);
  return std::max(0.0, e - passive) / omega;
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum_ij rho_ij rho_ji
  return (rho.matrix().cwiseProduct(rho.matrix().transpose())).sum().real();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Eigen::VectorXd lambda = hermitian_eigenvalues(rho.matrix());
  if (lambda.minCoeff() < -1e-8) {
    throw StateError("entropy of a state with eigenvalue " + std::to_string(lambda.minCoeff()));
  }
  double s = 0.0;
  for (double l : lambda)
    if (l > 1e-14) s -= l * std::log2(l);
  return s;
}

Operator battery_hamiltonian(const Generator& gen) {
  const SpaceDescriptor reduced = gen.space.restricted(gen.battery_sites);
  Operator h = zero_operator(reduced);
  for (int i = 0; i < static_cast<int>(gen.battery_sites.size()); ++i) {
    const auto& sub = gen.subsystems[static_cast<std::size_t>(gen.battery_sites[static_cast<std::size_t>(i)])];
    h = h + embed(sub.local_hamiltonian, i, reduced);
  }
  return h;
}

ObservableRecord observe(const DensityMatrix& rho, const Generator& gen, double t,
                         bool with_spectrum) {
  ObservableRecord rec;
  rec.t = t;
  for (int s = 0; s < gen.space.subsystems(); ++s) {
    const int keep[] = {s};
    const DensityMatrix local = partial_trace(rho, keep);
    const Subsystem& sub = gen.subsystems[static_cast<std::size_t>(s)];
    rec.energies.push_back(energy(local, sub.local_hamiltonian, sub.frequency));
    if (sub.kind == SubsystemKind::Qubit) {
      rec.qubit_energy = rec.energies.back();
      rec.qubit_entropy = von_neumann_entropy(local);
      rec.qubit_excitation = local.matrix()(1, 1).real();
    }
  }
  rec.charger_energy = rec.energies[static_cast<std::size_t>(gen.charger_site)];

  const DensityMatrix battery = partial_trace(rho, gen.battery_sites);
  const double omega_b = gen.subsystems[static_cast<std::size_t>(gen.battery_sites.front())].frequency;
  const Operator h_b = battery_hamiltonian(gen);
  rec.battery_energy = energy(battery, h_b, omega_b);
  rec.battery_ergotropy = ergotropy(battery, h_b, omega_b);
  rec.battery_purity = purity(battery);

  rec.trace_error = rho.trace_error();
  rec.hermiticity_error = rho.hermiticity_error();
  if (with_spectrum) rec.min_eigenvalue = rho.min_eigenvalue();
  return rec;
}

}  // namespace qbattery
