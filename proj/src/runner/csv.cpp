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
#include <array>
#include <charconv>
#include <ostream>

#include "qbattery/runner.hpp"

namespace qbattery::runner {

namespace {

using Row = std::array<std::string, 9>;

std::string opt(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

/// Indices into kTrajectoryColumns selected by cfg.columns.
std::vector<std::size_t> selected_columns(const ScenarioConfig& cfg) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < kTrajectoryColumns.size(); ++i) {
    if (cfg.columns.empty() ||
        std::find(cfg.columns.begin(), cfg.columns.end(), kTrajectoryColumns[i]) !=
            cfg.columns.end()) {
      out.push_back(i);
    }
  }
  return out;
}

void write_column_names(std::ostream& out, const std::vector<std::size_t>& cols) {
  out << 't';
  for (std::size_t i : cols) out << ',' << kTrajectoryColumns[i];
  out << '\n';
}

void write_row(std::ostream& out, double t, const Row& row, const std::vector<std::size_t>& cols) {
  out << format_double(t);
  for (std::size_t i : cols) out << ',' << row[i];
  out << '\n';
}

}  // namespace

const std::vector<std::string> kTrajectoryColumns{
    "E_A", "E_B", "E_Q", "W_B", "purity_B", "entropy_Q", "qubit_excitation", "trace_error",
    "min_eigenvalue"};

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::vector<std::pair<std::string, std::string>> resolved_parameters(
    const ScenarioConfig& cfg, const std::optional<IntegratorConfig>& integrator) {
  std::vector<std::pair<std::string, std::string>> out;
  const auto add = [&](std::string key, double v) { out.emplace_back(std::move(key), format_double(v)); };
  out.emplace_back("model", std::string(to_string(cfg.model)));
  switch (cfg.model) {
    case ModelKind::Basic: {
      const auto& p = cfg.basic;
      add("omega_a", p.charger_frequency);
      add("omega_b", p.battery_frequency);
      add("g", p.coupling);
      add("F", p.drive_amplitude);
      add("omega_f", p.drive_frequency);
      add("delta_af", p.drive_detuning());
      add("gamma", p.decay_rate);
      add("n_thermal", p.thermal_occupation);
      add("cutoff_a", p.charger_cutoff);
      add("cutoff_b", p.battery_cutoff);
      break;
    }
    case ModelKind::Catalyst: {
      const auto& p = cfg.catalyst;
      add("omega", p.oscillator_frequency);
      add("omega_q", p.qubit_frequency);
      add("delta_aq", p.qubit_detuning());
      add("g_aq", p.charger_qubit_coupling);
      add("g_bq", p.battery_qubit_coupling);
      add("F", p.drive_amplitude);
      add("omega_f", p.drive_frequency);
      add("delta_af", p.drive_frequency - p.oscillator_frequency);
      add("gamma", p.decay_rate);
      add("n_thermal", p.thermal_occupation);
      add("cutoff_a", p.charger_cutoff);
      add("cutoff_b", p.battery_cutoff);
      break;
    }
    case ModelKind::KCell: {
      const auto& p = cfg.kcell;
      add("omega", p.oscillator_frequency);
      add("omega_q", p.qubit_frequency);
      add("delta_aq", p.oscillator_frequency - p.qubit_frequency);
      for (std::size_t i = 0; i < p.couplings.size(); ++i) add("g_" + std::to_string(i), p.couplings[i]);
      add("F", p.drive_amplitude);
      add("omega_f", p.drive_frequency);
      add("delta_af", p.drive_frequency - p.oscillator_frequency);
      add("gamma", p.decay_rate);
      add("n_thermal", p.thermal_occupation);
      for (std::size_t i = 0; i < p.cutoffs.size(); ++i) add("cutoff_" + std::to_string(i), p.cutoffs[i]);
      break;
    }
  }
  if (cfg.sweep) {
    std::string list;
    for (double v : cfg.sweep->values) list += (list.empty() ? "" : ",") + format_double(v);
    out.emplace_back("sweep", cfg.sweep->key + " = [" + list + "]");
  }
  add("t_end", cfg.t_end);
  if (integrator) {
    add("dt", integrator->dt);
    out.emplace_back("sample_every", std::to_string(integrator->sample_every));
    out.emplace_back("spectrum_every", std::to_string(integrator->spectrum_every));
  } else {
    out.emplace_back("dt", cfg.dt ? format_double(*cfg.dt) : "default");
    out.emplace_back("sample_every", cfg.sample_every ? std::to_string(*cfg.sample_every) : "default");
    out.emplace_back("spectrum_every", std::to_string(cfg.spectrum_every));
  }
  add("tail_tolerance", cfg.tail_tolerance);
  out.emplace_back("renormalize", cfg.renormalize ? "true" : "false");
  return out;
}

void write_header_block(std::ostream& out, const ScenarioConfig& cfg, std::string_view kind,
                        const std::optional<IntegratorConfig>& integrator,
                        std::span<const std::pair<std::string, std::string>> extra) {
  out << "# qbattery " << kind << '\n';
  out << "# source = " << cfg.source << '\n';
  for (const auto& [key, value] : resolved_parameters(cfg, integrator)) {
    out << "# " << key << " = " << value << '\n';
  }
  for (const auto& [key, value] : extra) out << "# " << key << " = " << value << '\n';
}

void write_trajectory_csv(std::ostream& out, const ScenarioConfig& cfg, const Trajectory& traj) {
  const Generator gen = build_generator(cfg);
  IntegratorConfig integrator = integrator_config(cfg, gen);
  const std::vector<std::pair<std::string, std::string>> extra{
      {"step", format_double(traj.dt)},
      {"steps", std::to_string(traj.diagnostics.steps)},
      {"max_trace_drift", format_double(traj.diagnostics.max_trace_drift)},
      {"max_hermiticity_drift", format_double(traj.diagnostics.max_hermiticity_drift)},
      {"last_valid_time", format_double(traj.last_valid_time)},
      {"truncation", traj.truncation ? "site " + std::to_string(traj.truncation->site) +
                                           " population " +
                                           format_double(traj.truncation->population) + " at t " +
                                           format_double(traj.truncation->time)
                                     : "none"},
  };
  write_header_block(out, cfg, "trajectory", integrator, extra);
  const std::vector<std::size_t> cols = selected_columns(cfg);
  write_column_names(out, cols);
  for (const auto& rec : traj.records) {
    const Row row{format_double(rec.charger_energy),
                  format_double(rec.battery_energy),
                  opt(rec.qubit_energy),
                  format_double(rec.battery_ergotropy),
                  format_double(rec.battery_purity),
                  opt(rec.qubit_entropy),
                  opt(rec.qubit_excitation),
                  format_double(rec.trace_error),
                  opt(rec.min_eigenvalue)};
    write_row(out, rec.t, row, cols);
  }
}

void write_moment_csv(std::ostream& out, const ScenarioConfig& cfg,
                      std::span<const MomentState> states) {
  const std::vector<std::pair<std::string, std::string>> extra{
      {"oracle", "coherent amplitudes; W_B = E_B and purity_B = 1 for a coherent state"}};
  write_header_block(out, cfg, "moment-oracle", std::nullopt, extra);
  const std::vector<std::size_t> cols = selected_columns(cfg);
  write_column_names(out, cols);
  for (const auto& s : states) {
    const std::string e_b = format_double(s.battery_energy());
    const Row row{format_double(s.charger_energy()), e_b, "", e_b, format_double(1.0), "", "", "", ""};
    write_row(out, s.t, row, cols);
  }
}

void write_sweep_csv(std::ostream& out, const ScenarioConfig& cfg, std::span<const SweepRow> rows) {
  write_header_block(out, cfg, "sweep");
  out << cfg.sweep->key << ",max_E_B,E_B_t_end,max_E_Q,t_last\n";
  for (const auto& row : rows) {
    out << format_double(row.value) << ',' << format_double(row.summary.max_battery_energy) << ','
        << format_double(row.summary.final_battery_energy) << ','
        << opt(row.summary.max_qubit_energy) << ',' << format_double(row.summary.last_valid_time)
        << '\n';
  }
}

}  // namespace qbattery::runner
