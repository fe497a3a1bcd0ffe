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

#include "qbattery/models.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qbattery {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ModelError(message);
}

void require_frequency(double w, const char* name) {
  require(std::isfinite(w) && w > 0.0, std::string(name) + " must be a positive frequency");
}

void require_nonnegative(double x, const char* name) {
  require(std::isfinite(x) && x >= 0.0, std::string(name) + " must be finite and >= 0");
}

void require_cutoff(int n, const char* name) {
  require(n >= 2, std::string(name) + " must be >= 2");
}

// Accumulates sum_k c_k * (product of single-site factors) on a fixed space.
class TermSum {
 public:
  explicit TermSum(SpaceDescriptor space)
      : space_(std::move(space)), acc_(Matrix::Zero(space_.total_dim(), space_.total_dim())) {}

  void add(Complex c, std::vector<std::pair<int, Operator>> factors) {
    if (c == Complex{}) return;
    acc_ += c * embed_product(factors, space_).matrix();
  }

  Operator finish() && { return Operator(std::move(acc_), space_); }

 private:
  SpaceDescriptor space_;
  Matrix acc_;
};

// Thermal charger channels gamma(N+1) D[a] and gamma N D[a^dag].
std::vector<CollapseOperator> charger_channels(const SpaceDescriptor& space, int site, int cutoff,
                                               double gamma, double n_thermal) {
  std::vector<CollapseOperator> out;
  out.push_back({gamma * (n_thermal + 1.0), embed(annihilation(cutoff), site, space)});
  out.push_back({gamma * n_thermal, embed(creation(cutoff), site, space)});
  return out;
}

Subsystem oscillator(std::string name, double w, int cutoff) {
  return {std::move(name), SubsystemKind::Oscillator, w, Complex(w) * number(cutoff)};
}

Subsystem qubit(double w) {
  const Operator q = qubit_lowering();
  return {"qubit", SubsystemKind::Qubit, w, Complex(w) * multiply(adjoint(q), q)};
}

}  // namespace

void validate(const BasicModelParams& p) {
  require_frequency(p.charger_frequency, "omega_a");
  require_frequency(p.battery_frequency, "omega_b");
  require_frequency(p.drive_frequency, "omega_f");
  require_nonnegative(p.coupling, "g");
  require_nonnegative(p.drive_amplitude, "F");
  require_nonnegative(p.decay_rate, "gamma");
  require_nonnegative(p.thermal_occupation, "n_thermal");
  require_cutoff(p.charger_cutoff, "cutoff_a");
  require_cutoff(p.battery_cutoff, "cutoff_b");
}

void validate(const CatalystModelParams& p) {
  require_frequency(p.oscillator_frequency, "omega");
  require_frequency(p.qubit_frequency, "omega_q");
  require_frequency(p.drive_frequency, "omega_f");
  require_nonnegative(p.charger_qubit_coupling, "g_aq");
  require_nonnegative(p.battery_qubit_coupling, "g_bq");
  require(p.charger_qubit_coupling > 0.0 || p.battery_qubit_coupling > 0.0,
          "g_aq and g_bq must not both be zero");
  require_nonnegative(p.drive_amplitude, "F");
  require_nonnegative(p.decay_rate, "gamma");
  require_nonnegative(p.thermal_occupation, "n_thermal");
  require_cutoff(p.charger_cutoff, "cutoff_a");
  require_cutoff(p.battery_cutoff, "cutoff_b");
}

void validate(const KCellModelParams& p) {
  require_frequency(p.oscillator_frequency, "omega");
  require_frequency(p.qubit_frequency, "omega_q");
  require_frequency(p.drive_frequency, "omega_f");
  require(p.couplings.size() >= 2, "k-cell model needs a charger and at least one cell");
  require(p.cutoffs.size() == p.couplings.size(), "need one cutoff per mode");
  for (double g : p.couplings) require_nonnegative(g, "coupling g_i");
  for (int n : p.cutoffs) require_cutoff(n, "cutoff_i");
  require_nonnegative(p.drive_amplitude, "F");
  require_nonnegative(p.decay_rate, "gamma");
  require_nonnegative(p.thermal_occupation, "n_thermal");
}

Operator Generator::hamiltonian_at(double t) const {
  if (!drive) return h_static;
  const Complex phase = std::exp(Complex(0.0, -drive->delta * t));
  return Operator(h_static.matrix() + phase * drive->positive.matrix() +
                      std::conj(phase) * drive->negative.matrix(),
                  space);
}

std::vector<int> Generator::oscillator_sites() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(subsystems.size()); ++i)
    if (subsystems[static_cast<std::size_t>(i)].kind == SubsystemKind::Oscillator) out.push_back(i);
  return out;
}

void validate(const Generator& gen) {
  require(gen.h_static.space() == gen.space, "h_static is not on the generator space");
  require(hermiticity_error(gen.h_static) <= 1e-12, "h_static is not Hermitian to 1e-12");
  if (gen.drive) {
    require(gen.drive->positive.space() == gen.space && gen.drive->negative.space() == gen.space,
            "drive terms are not on the generator space");
    const double mismatch =
        (gen.drive->negative.matrix() - gen.drive->positive.matrix().adjoint()).cwiseAbs().maxCoeff();
    require(mismatch <= 1e-12, "drive terms are not mutually adjoint");
  }
  for (const auto& c : gen.collapse_ops) {
    require(c.op.space() == gen.space, "collapse operator is not on the generator space");
    require(std::isfinite(c.rate) && c.rate >= 0.0, "collapse rate must be >= 0");
  }
  require(static_cast<int>(gen.subsystems.size()) == gen.space.subsystems(),
          "one subsystem record per tensor factor");
  for (int i = 0; i < gen.space.subsystems(); ++i) {
    require(gen.subsystems[static_cast<std::size_t>(i)].local_hamiltonian.dim() == gen.space.dim(i),
            "local Hamiltonian dimension mismatch");
  }
}

Generator build_basic(const BasicModelParams& p) {
  validate(p);
  const SpaceDescriptor space({p.charger_cutoff, p.battery_cutoff});
  const Operator a = annihilation(p.charger_cutoff);
  const Operator b = annihilation(p.battery_cutoff);
  const double wf = p.drive_frequency;

  TermSum h(space);
  h.add(p.charger_frequency - wf, {{0, number(p.charger_cutoff)}});
  h.add(p.battery_frequency - wf, {{1, number(p.battery_cutoff)}});
  h.add(p.coupling, {{0, a}, {1, adjoint(b)}});
  h.add(p.coupling, {{0, adjoint(a)}, {1, b}});
  h.add(p.drive_amplitude, {{0, a}});
  h.add(p.drive_amplitude, {{0, adjoint(a)}});

  Generator gen{
      .space = space,
      .h_static = std::move(h).finish(),
      .drive = std::nullopt,
      .collapse_ops =
          charger_channels(space, 0, p.charger_cutoff, p.decay_rate, p.thermal_occupation),
      .subsystems = {oscillator("charger", p.charger_frequency, p.charger_cutoff),
                     oscillator("battery", p.battery_frequency, p.battery_cutoff)},
      .charger_site = 0,
      .battery_sites = {1},
      .qubit_site = std::nullopt,
      .characteristic_rate =
          std::max({std::abs(p.charger_frequency - wf), std::abs(p.battery_frequency - wf),
                    p.coupling, p.drive_amplitude, p.decay_rate}),
  };
  validate(gen);
  return gen;
}

Generator build_basic_interaction_picture(const BasicModelParams& p) {
  validate(p);
  if (p.charger_frequency != p.battery_frequency) {
    throw ModelError("interaction-picture form needs omega_a == omega_b");
  }
  const SpaceDescriptor space({p.charger_cutoff, p.battery_cutoff});
  const Operator a = annihilation(p.charger_cutoff);
  const Operator b = annihilation(p.battery_cutoff);

  TermSum h(space);
  h.add(p.coupling, {{0, a}, {1, adjoint(b)}});
  h.add(p.coupling, {{0, adjoint(a)}, {1, b}});

  // Frame change from omega_f to omega maps a -> a e^{i delta t}, so the
  // creation part of the drive carries e^{-i delta t}.
  const Operator drive_pos = Complex(p.drive_amplitude) * embed(adjoint(a), 0, space);
  Generator gen{
      .space = space,
      .h_static = std::move(h).finish(),
      .drive = DriveTerm{drive_pos, adjoint(drive_pos), p.drive_detuning()},
      .collapse_ops =
          charger_channels(space, 0, p.charger_cutoff, p.decay_rate, p.thermal_occupation),
      .subsystems = {oscillator("charger", p.charger_frequency, p.charger_cutoff),
                     oscillator("battery", p.battery_frequency, p.battery_cutoff)},
      .charger_site = 0,
      .battery_sites = {1},
      .qubit_site = std::nullopt,
      .characteristic_rate = std::max({std::abs(p.drive_detuning()), p.coupling,
                                       p.drive_amplitude, p.decay_rate}),
  };
  validate(gen);
  return gen;
}

Generator build_catalyst(const CatalystModelParams& p) {
  validate(p);
  const SpaceDescriptor space({p.charger_cutoff, 2, p.battery_cutoff});
  const Operator a = annihilation(p.charger_cutoff);
  const Operator b = annihilation(p.battery_cutoff);
  const Operator q = qubit_lowering();
  const double w = p.oscillator_frequency;
  const double wf = p.drive_frequency;

  TermSum h(space);
  h.add(w - wf, {{0, number(p.charger_cutoff)}});
  h.add(p.qubit_frequency - wf, {{1, multiply(adjoint(q), q)}});
  h.add(w - wf, {{2, number(p.battery_cutoff)}});
  h.add(p.charger_qubit_coupling, {{0, a}, {1, adjoint(q)}});
  h.add(p.charger_qubit_coupling, {{0, adjoint(a)}, {1, q}});
  h.add(p.battery_qubit_coupling, {{2, b}, {1, adjoint(q)}});
  h.add(p.battery_qubit_coupling, {{2, adjoint(b)}, {1, q}});
  h.add(p.drive_amplitude, {{0, a}});
  h.add(p.drive_amplitude, {{0, adjoint(a)}});

  Generator gen{
      .space = space,
      .h_static = std::move(h).finish(),
      .drive = std::nullopt,
      .collapse_ops =
          charger_channels(space, 0, p.charger_cutoff, p.decay_rate, p.thermal_occupation),
      .subsystems = {oscillator("charger", w, p.charger_cutoff), qubit(p.qubit_frequency),
                     oscillator("battery", w, p.battery_cutoff)},
      .charger_site = 0,
      .battery_sites = {2},
      .qubit_site = 1,
      .characteristic_rate =
          std::max({std::abs(w - wf), std::abs(p.qubit_frequency - wf), p.charger_qubit_coupling,
                    p.battery_qubit_coupling, p.drive_amplitude, p.decay_rate}),
  };
  validate(gen);
  return gen;
}

Generator build_kcell(const KCellModelParams& p) {
  validate(p);
  const int k = p.cells();
  std::vector<int> dims;
  dims.push_back(p.cutoffs[0]);
  dims.push_back(2);
  for (int i = 1; i <= k; ++i) dims.push_back(p.cutoffs[static_cast<std::size_t>(i)]);
  const SpaceDescriptor space(dims);
  const auto site_of = [](int mode) { return mode == 0 ? 0 : mode + 1; };

  const Operator q = qubit_lowering();
  const double w = p.oscillator_frequency;
  const double wf = p.drive_frequency;

  // Same term order as build_catalyst so that k = 1 reproduces it bit for bit.
  TermSum h(space);
  h.add(w - wf, {{0, number(p.cutoffs[0])}});
  h.add(p.qubit_frequency - wf, {{1, multiply(adjoint(q), q)}});
  for (int mode = 1; mode <= k; ++mode)
    h.add(w - wf, {{site_of(mode), number(p.cutoffs[static_cast<std::size_t>(mode)])}});
  std::vector<int> cells;
  for (int mode = 0; mode <= k; ++mode) {
    const double g = p.couplings[static_cast<std::size_t>(mode)];
    const int site = site_of(mode);
    const Operator a = annihilation(p.cutoffs[static_cast<std::size_t>(mode)]);
    h.add(g, {{site, a}, {1, adjoint(q)}});
    h.add(g, {{site, adjoint(a)}, {1, q}});
    if (mode > 0) cells.push_back(site);
  }
  const Operator a0 = annihilation(p.cutoffs[0]);
  h.add(p.drive_amplitude, {{0, a0}});
  h.add(p.drive_amplitude, {{0, adjoint(a0)}});

  std::vector<Subsystem> subsystems;
  subsystems.push_back(oscillator("charger", w, p.cutoffs[0]));
  subsystems.push_back(qubit(p.qubit_frequency));
  for (int mode = 1; mode <= k; ++mode)
    subsystems.push_back(
        oscillator("cell" + std::to_string(mode), w, p.cutoffs[static_cast<std::size_t>(mode)]));

  Generator gen{
      .space = space,
      .h_static = std::move(h).finish(),
      .drive = std::nullopt,
      .collapse_ops =
          charger_channels(space, 0, p.cutoffs[0], p.decay_rate, p.thermal_occupation),
      .subsystems = std::move(subsystems),
      .charger_site = 0,
      .battery_sites = std::move(cells),
      .qubit_site = 1,
      .characteristic_rate =
          std::max({std::abs(w - wf), std::abs(p.qubit_frequency - wf),
                    *std::max_element(p.couplings.begin(), p.couplings.end()), p.drive_amplitude,
                    p.decay_rate}),
  };
  validate(gen);
  return gen;
}

}  // namespace qbattery
