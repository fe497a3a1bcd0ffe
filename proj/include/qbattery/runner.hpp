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

// Scenario runner: YAML scenario files, CSV trajectories, parameter
// sweeps, super-mode reports and oracle comparisons.
//
// A scenario file is a flat key-value document with one section per model:
//
//   model: catalyst
//   catalyst: {omega: 1, delta_aq: 0, g_aq: 0.2, g_bq: 0.2, F: 0.1}
//   run: {t_end: 200, output: fig3.csv}
//   integrator: {sample_every: 10}
//
// Giving one model parameter a list of values turns the file into a sweep.

#ifndef QBATTERY_RUNNER_HPP
#define QBATTERY_RUNNER_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qbattery/dynamics.hpp"
#include "qbattery/models.hpp"
#include "qbattery/semiclassical.hpp"
#include "qbattery/supermodes.hpp"

namespace qbattery::runner {

/// Malformed or inconsistent scenario; the message starts with
/// "<source>:<line>: " whenever the offending line is known.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ModelKind { Basic, Catalyst, KCell };

std::string_view to_string(ModelKind kind);

struct SweepSpec {
  std::string key;
  std::vector<double> values;
};

struct ScenarioConfig {
  ModelKind model = ModelKind::Basic;
  BasicModelParams basic;
  CatalystModelParams catalyst;
  KCellModelParams kcell;

  double t_end = 200.0;
  /// Empty selects default_dt() of the built generator.
  std::optional<double> dt;
  /// Empty selects a sample roughly every 0.5 time units.
  std::optional<int> sample_every;
  /// Full-state spectrum on every n-th sample; 0 disables it.
  int spectrum_every = 20;
  double tail_tolerance = 1e-6;
  bool renormalize = true;

  /// Empty writes to stdout.
  std::string output;
  /// CSV columns to write after t; empty keeps the full schema.
  std::vector<std::string> columns;
  /// Sample times for the exponential oracle in run_compare.
  std::vector<double> compare_times{1.0, 5.0, 10.0};

  std::optional<SweepSpec> sweep;
  std::string source = "<string>";
};

ScenarioConfig parse_config(std::string_view text, std::string source = "<string>");
ScenarioConfig load_config(const std::filesystem::path& path);

/// Model parameter keys accepted in the section of `kind`.
std::vector<std::string> parameter_keys(ModelKind kind);

/// Assigns a model parameter by key, resolving derived keys (delta_af,
/// delta_aq) against the current frequencies. Throws ConfigError.
void set_parameter(ScenarioConfig& cfg, std::string_view key, double value);

/// Resolved parameters in a fixed order, formatted for the CSV header.
/// Integrator settings show as "default" unless `integrator` is given.
std::vector<std::pair<std::string, std::string>> resolved_parameters(
    const ScenarioConfig& cfg, const std::optional<IntegratorConfig>& integrator = std::nullopt);

Generator build_generator(const ScenarioConfig& cfg);
IntegratorConfig integrator_config(const ScenarioConfig& cfg, const Generator& gen);

/// Vacuum start, production integrator.
Trajectory simulate(const ScenarioConfig& cfg);

struct TrajectorySummary {
  double max_battery_energy = 0.0;
  double final_battery_energy = 0.0;
  std::optional<double> max_qubit_energy;
  double last_valid_time = 0.0;
  std::optional<TruncationEvent> truncation;
};

TrajectorySummary summarize(const Trajectory& traj);
void print_summary(std::ostream& out, const TrajectorySummary& summary);

// CSV output.

/// Round-trip text: general notation, 17 significant digits.
std::string format_double(double value);

extern const std::vector<std::string> kTrajectoryColumns;

/// "# key = value" lines: output kind, every resolved parameter, then
/// `extra` (run diagnostics).
void write_header_block(std::ostream& out, const ScenarioConfig& cfg, std::string_view kind,
                        const std::optional<IntegratorConfig>& integrator = std::nullopt,
                        std::span<const std::pair<std::string, std::string>> extra = {});
void write_trajectory_csv(std::ostream& out, const ScenarioConfig& cfg, const Trajectory& traj);
/// Moment-oracle trajectory in the trajectory schema; columns the oracle
/// cannot supply are left empty.
void write_moment_csv(std::ostream& out, const ScenarioConfig& cfg,
                      std::span<const MomentState> states);

// Sweeps.

struct SweepRow {
  double value;
  TrajectorySummary summary;
};

/// Runs every sweep point, concurrently on up to `threads` workers (0 picks
/// the hardware concurrency). Rows come back in input order.
std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, unsigned threads = 0);
void write_sweep_csv(std::ostream& out, const ScenarioConfig& cfg, std::span<const SweepRow> rows);

// Super-mode report.

SupermodeBasis scenario_supermodes(const ScenarioConfig& cfg);
void print_supermode_report(std::ostream& out, const ScenarioConfig& cfg);
void write_supermode_csv(std::ostream& out, const ScenarioConfig& cfg);

// Oracles.

constexpr double kMomentTolerance = 1e-4;
constexpr double kExponentialTolerance = 1e-8;

/// Moment trajectory of a zero-temperature basic scenario on the sample
/// grid evolve() would produce. Throws OracleError for other scenarios.
std::vector<MomentState> moment_trajectory(const ScenarioConfig& cfg);

struct OracleCheck {
  std::string name;
  bool applicable = false;
  std::string reason;  // why the oracle was skipped
  double deviation = 0.0;
  double tolerance = 0.0;

  bool passed() const { return applicable && deviation <= tolerance; }
};

struct CompareReport {
  std::vector<OracleCheck> checks;

  bool any_applicable() const;
  bool all_passed() const;
};

CompareReport run_compare(const ScenarioConfig& cfg);
void print_compare_report(std::ostream& out, const CompareReport& report);

}  // namespace qbattery::runner

#endif  // QBATTERY_RUNNER_HPP
