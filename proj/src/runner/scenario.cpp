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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <ostream>
#include <thread>

#include "qbattery/runner.hpp"

namespace qbattery::runner {

namespace {

/// Sample times evolve() produces for `cfg`, reproduced step for step.
std::vector<double> sample_grid(double t_end, const IntegratorConfig& ic) {
  const long n_steps = static_cast<long>(std::ceil(t_end / ic.dt - 1e-9));
  const double h = t_end / static_cast<double>(n_steps);
  std::vector<double> grid{0.0};
  for (long step = 1; step <= n_steps; ++step) {
    if (step % ic.sample_every == 0 || step == n_steps) grid.push_back(static_cast<double>(step) * h);
  }
  return grid;
}

double oscillator_frequency(const ScenarioConfig& cfg) {
  switch (cfg.model) {
    case ModelKind::Basic: return cfg.basic.charger_frequency;
    case ModelKind::Catalyst: return cfg.catalyst.oscillator_frequency;
    case ModelKind::KCell: return cfg.kcell.oscillator_frequency;
  }
  return 0.0;
}

double drive_frequency(const ScenarioConfig& cfg) {
  switch (cfg.model) {
    case ModelKind::Basic: return cfg.basic.drive_frequency;
    case ModelKind::Catalyst: return cfg.catalyst.drive_frequency;
    case ModelKind::KCell: return cfg.kcell.drive_frequency;
  }
  return 0.0;
}

std::string yes_no(bool v) { return v ? "yes" : "no"; }

OracleCheck moment_check(const ScenarioConfig& cfg) {
  OracleCheck check{"moment", false, "", 0.0, kMomentTolerance};
  if (cfg.model != ModelKind::Basic) {
    check.reason = "the qubit is nonlinear, so coherent amplitudes do not close";
    return check;
  }
  if (cfg.basic.thermal_occupation != 0.0) {
    check.reason = "n_thermal != 0: thermal noise breaks the coherent-state closure";
    return check;
  }
  const std::vector<MomentState> moments = moment_trajectory(cfg);
  double peak = 0.0;
  for (const auto& m : moments) peak = std::max({peak, m.charger_energy(), m.battery_energy()});
  const int cutoff = std::min(cfg.basic.charger_cutoff, cfg.basic.battery_cutoff);
  if (peak >= cutoff / 4.0) {
    check.reason = "peak amplitude^2 " + format_double(peak) + " is not below cutoff/4 = " +
                   format_double(cutoff / 4.0);
    return check;
  }
  const Trajectory traj = simulate(cfg);
  check.applicable = true;
  for (std::size_t i = 0; i < traj.records.size() && i < moments.size(); ++i) {
    check.deviation = std::max(check.deviation,
                               std::abs(traj.records[i].battery_energy - moments[i].battery_energy()));
  }
  if (traj.truncation) {
    check.deviation = std::numeric_limits<double>::infinity();
    check.reason = "Fock run hit the truncation limit at t = " + format_double(traj.truncation->time);
  }
  return check;
}

OracleCheck exponential_check(const ScenarioConfig& cfg) {
  OracleCheck check{"exponential", false, "", 0.0, kExponentialTolerance};
  const Generator gen = build_generator(cfg);
  if (gen.space.total_dim() > kExactPropagateMaxDim) {
    check.reason = "dimension " + std::to_string(gen.space.total_dim()) + " exceeds " +
                   std::to_string(kExactPropagateMaxDim);
    return check;
  }
  check.applicable = true;
  IntegratorConfig ic = integrator_config(cfg, gen);
  ic.spectrum_every = 0;
  ic.sample_every = std::numeric_limits<int>::max();
  // Both sides propagate the same truncated generator, so tail population
  // is not an error here.
  ic.tail_tolerance = std::numeric_limits<double>::infinity();
  const DensityMatrix rho0 = DensityMatrix::vacuum(gen.space);
  for (double t : cfg.compare_times) {
    const Trajectory traj = evolve(rho0, gen, t, ic);
    const DensityMatrix exact = exact_propagate(rho0, gen, t);
    const double dev = (traj.final_state->matrix() - exact.matrix()).cwiseAbs().maxCoeff();
    check.deviation = std::max(check.deviation, dev);
  }
  return check;
}

}  // namespace

Generator build_generator(const ScenarioConfig& cfg) {
  switch (cfg.model) {
    case ModelKind::Basic: return build_basic(cfg.basic);
    case ModelKind::Catalyst: return build_catalyst(cfg.catalyst);
    case ModelKind::KCell: return build_kcell(cfg.kcell);
  }
  throw ConfigError("unknown model");
}

IntegratorConfig integrator_config(const ScenarioConfig& cfg, const Generator& gen) {
  IntegratorConfig ic;
  ic.dt = cfg.dt.value_or(default_dt(gen));
  ic.sample_every = cfg.sample_every.value_or(
      std::max(1, static_cast<int>(std::lround(0.5 / ic.dt))));
  ic.spectrum_every = cfg.spectrum_every;
  ic.tail_tolerance = cfg.tail_tolerance;
  ic.renormalize = cfg.renormalize;
  return ic;
}

Trajectory simulate(const ScenarioConfig& cfg) {
  const Generator gen = build_generator(cfg);
  return evolve(DensityMatrix::vacuum(gen.space), gen, cfg.t_end, integrator_config(cfg, gen));
}

TrajectorySummary summarize(const Trajectory& traj) {
  TrajectorySummary s;
  for (const auto& rec : traj.records) {
    s.max_battery_energy = std::max(s.max_battery_energy, rec.battery_energy);
    if (rec.qubit_energy) s.max_qubit_energy = std::max(s.max_qubit_energy.value_or(0.0), *rec.qubit_energy);
  }
  if (!traj.records.empty()) s.final_battery_energy = traj.records.back().battery_energy;
  s.last_valid_time = traj.last_valid_time;
  s.truncation = traj.truncation;
  return s;
}

void print_summary(std::ostream& out, const TrajectorySummary& s) {
  out << "max E_B = " << format_double(s.max_battery_energy) << '\n'
      << "final E_B = " << format_double(s.final_battery_energy) << '\n';
  if (s.max_qubit_energy) out << "max E_Q = " << format_double(*s.max_qubit_energy) << '\n';
  out << "last valid t = " << format_double(s.last_valid_time) << '\n';
  if (s.truncation) {
    out << "truncation overflow at t = " << format_double(s.truncation->time) << ": site "
        << s.truncation->site << " holds " << format_double(s.truncation->population)
        << " in its top two levels\n";
  }
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, unsigned threads) {
  if (!cfg.sweep) throw ConfigError(cfg.source + ": sweep needs one parameter with a list of values");
  const std::vector<double>& values = cfg.sweep->values;
  const std::size_t n = values.size();
  std::vector<SweepRow> rows(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        ScenarioConfig point = cfg;
        point.sweep.reset();
        set_parameter(point, cfg.sweep->key, values[i]);
        rows[i] = SweepRow{values[i], summarize(simulate(point))};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return rows;
}

SupermodeBasis scenario_supermodes(const ScenarioConfig& cfg) {
  switch (cfg.model) {
    case ModelKind::Basic:
      if (cfg.basic.charger_frequency != cfg.basic.battery_frequency) {
        throw ConfigError(cfg.source + ": super-modes need omega_a == omega_b");
      }
      return basic_supermodes(cfg.basic.charger_frequency, cfg.basic.coupling);
    case ModelKind::Catalyst:
      return catalyst_supermodes(cfg.catalyst.oscillator_frequency,
                                 cfg.catalyst.charger_qubit_coupling,
                                 cfg.catalyst.battery_qubit_coupling);
    case ModelKind::KCell:
      return bogoliubov_basis(cfg.kcell.oscillator_frequency, cfg.kcell.couplings);
  }
  throw ConfigError("unknown model");
}

void print_supermode_report(std::ostream& out, const ScenarioConfig& cfg) {
  const SupermodeBasis basis = scenario_supermodes(cfg);
  const double omega_f = drive_frequency(cfg);
  out << "model " << to_string(cfg.model) << ", omega = " << format_double(oscillator_frequency(cfg))
      << ", omega_f = " << format_double(omega_f) << '\n';
  out << "U (row i: C_i = sum_l U(i,l) a_l, local mode 0 is the charger):\n";
  const Eigen::IOFormat fmt(12, 0, "  ", "\n", "  [", "]");
  out << basis.basis.format(fmt) << '\n';
  out << "frequencies: " << basis.frequencies.transpose().format(Eigen::IOFormat(12, 0, "  ")) << '\n';
  out << "drive weights chi: " << basis.drive_weights.transpose().format(Eigen::IOFormat(12, 0, "  "))
      << '\n';
  if (basis.qubit_coupling) out << "qubit coupling: " << format_double(*basis.qubit_coupling) << '\n';
  out << "mode  detuning  driven  qubit_coupled  resonant\n";
  for (const auto& r : resonance_report(basis, omega_f)) {
    out << std::setw(4) << r.mode << "  " << std::setw(8) << format_double(r.detuning) << "  "
        << std::setw(6) << yes_no(r.driven) << "  " << std::setw(13) << yes_no(r.qubit_coupled)
        << "  " << std::setw(8) << yes_no(r.resonant) << '\n';
  }
}

void write_supermode_csv(std::ostream& out, const ScenarioConfig& cfg) {
  const SupermodeBasis basis = scenario_supermodes(cfg);
  write_header_block(out, cfg, "supermodes");
  out << "mode,frequency,detuning,chi,driven,qubit_coupled,resonant";
  for (int l = 0; l < basis.modes(); ++l) out << ",u_" << l;
  out << '\n';
  const auto report = resonance_report(basis, drive_frequency(cfg));
  for (const auto& r : report) {
    out << r.mode << ',' << format_double(basis.frequencies(r.mode)) << ',' << format_double(r.detuning)
        << ',' << format_double(basis.drive_weights(r.mode)) << ',' << int(r.driven) << ','
        << int(r.qubit_coupled) << ',' << int(r.resonant);
    for (int l = 0; l < basis.modes(); ++l) out << ',' << format_double(basis.basis(r.mode, l));
    out << '\n';
  }
}

std::vector<MomentState> moment_trajectory(const ScenarioConfig& cfg) {
  if (cfg.model != ModelKind::Basic) {
    throw OracleError("moment oracle covers only the basic model: the qubit is nonlinear");
  }
  if (cfg.basic.thermal_occupation != 0.0) {
    throw OracleError("moment oracle needs n_thermal = 0: thermal noise breaks the coherent-state closure");
  }
  const Generator gen = build_generator(cfg);
  const IntegratorConfig ic = integrator_config(cfg, gen);
  const std::vector<double> grid = sample_grid(cfg.t_end, ic);
  const double h = cfg.t_end / std::ceil(cfg.t_end / ic.dt - 1e-9);
  return moment_evolve(cfg.basic, grid, h / 10.0);
}

bool CompareReport::any_applicable() const {
  return std::any_of(checks.begin(), checks.end(), [](const OracleCheck& c) { return c.applicable; });
}

bool CompareReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const OracleCheck& c) { return !c.applicable || c.passed(); });
}

CompareReport run_compare(const ScenarioConfig& cfg) {
  CompareReport report;
  report.checks.push_back(moment_check(cfg));
  report.checks.push_back(exponential_check(cfg));
  return report;
}

void print_compare_report(std::ostream& out, const CompareReport& report) {
  for (const auto& c : report.checks) {
    out << c.name << " oracle: ";
    if (!c.applicable) {
      out << "not applicable (" << c.reason << ")\n";
      continue;
    }
    out << (c.name == "moment" ? "max |dE_B| = " : "max elementwise |d rho| = ")
        << format_double(c.deviation) << " (tolerance " << format_double(c.tolerance) << ") "
        << (c.passed() ? "PASS" : "FAIL");
    if (!c.reason.empty()) out << " [" << c.reason << "]";
    out << '\n';
  }
}

}  // namespace qbattery::runner
