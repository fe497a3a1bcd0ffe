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

// qbattery command-line tool.
//
//   qbattery simulate   --config fig1a.yaml [--out traj.csv] [--quiet]
//   qbattery sweep      --config detuning.yaml
//   qbattery supermodes --config fig3.yaml
//   qbattery oracle     --config fig1a.yaml
//   qbattery compare    --config small.yaml
//
// Exit codes: 0 success, 2 config error, 3 numerical failure or truncation
// overflow, 4 oracle mismatch.

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "qbattery/runner.hpp"

namespace {

namespace qr = qbattery::runner;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitMismatch = 4;

struct Options {
  std::string config;
  std::string out;
  bool quiet = false;
};

/// CSV destination: --out, else the scenario's output key, else stdout.
class Sink {
 public:
  Sink(const Options& opts, const qr::ScenarioConfig& cfg) {
    const std::string path = !opts.out.empty() ? opts.out : cfg.output;
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw qr::ConfigError(path + ": cannot open output file");
    path_ = path;
  }

  std::ostream& csv() { return file_ ? *file_ : std::cout; }
  /// Human-readable text goes to stderr when the CSV occupies stdout.
  std::ostream& text() { return file_ ? std::cout : std::cerr; }
  bool to_stdout() const { return !file_; }

  void close() {
    if (!file_) return;
    file_->close();
    if (!*file_) throw qr::ConfigError(path_ + ": write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::string path_;
};

int cmd_simulate(const Options& opts) {
  const qr::ScenarioConfig cfg = qr::load_config(opts.config);
  if (cfg.sweep) {
    throw qr::ConfigError(cfg.source + ": '" + cfg.sweep->key +
                          "' carries a list of values; use the sweep subcommand");
  }
  Sink sink(opts, cfg);
  const qbattery::Trajectory traj = qr::simulate(cfg);
  qr::write_trajectory_csv(sink.csv(), cfg, traj);
  sink.close();
  const qr::TrajectorySummary summary = qr::summarize(traj);
  if (!opts.quiet || summary.truncation) qr::print_summary(sink.text(), summary);
  return summary.truncation ? kExitNumerical : 0;
}

int cmd_sweep(const Options& opts) {
  const qr::ScenarioConfig cfg = qr::load_config(opts.config);
  Sink sink(opts, cfg);
  const std::vector<qr::SweepRow> rows = qr::run_sweep(cfg);
  qr::write_sweep_csv(sink.csv(), cfg, rows);
  sink.close();
  bool truncated = false;
  for (const auto& row : rows) {
    if (!row.summary.truncation) continue;
    truncated = true;
    sink.text() << cfg.sweep->key << " = " << qr::format_double(row.value)
                << ": truncation overflow at t = " << qr::format_double(row.summary.truncation->time)
                << '\n';
  }
  return truncated ? kExitNumerical : 0;
}

int cmd_supermodes(const Options& opts) {
  const qr::ScenarioConfig cfg = qr::load_config(opts.config);
  const std::string path = !opts.out.empty() ? opts.out : cfg.output;
  if (!opts.quiet || path.empty()) qr::print_supermode_report(std::cout, cfg);
  if (!path.empty()) {
    Sink sink(opts, cfg);
    qr::write_supermode_csv(sink.csv(), cfg);
    sink.close();
  }
  return 0;
}

int cmd_oracle(const Options& opts) {
  const qr::ScenarioConfig cfg = qr::load_config(opts.config);
  Sink sink(opts, cfg);
  const std::vector<qbattery::MomentState> states = qr::moment_trajectory(cfg);
  qr::write_moment_csv(sink.csv(), cfg, states);
  sink.close();
  if (!opts.quiet) {
    double peak = 0.0;
    for (const auto& s : states) peak = std::max(peak, s.battery_energy());
    sink.text() << "max E_B = " << qr::format_double(peak) << '\n'
                << "final E_B = " << qr::format_double(states.back().battery_energy()) << '\n';
  }
  return 0;
}

int cmd_compare(const Options& opts) {
  const qr::ScenarioConfig cfg = qr::load_config(opts.config);
  const qr::CompareReport report = qr::run_compare(cfg);
  if (!opts.quiet || !report.all_passed() || !report.any_applicable()) {
    qr::print_compare_report(std::cout, report);
  }
  if (!report.any_applicable()) {
    std::cerr << "error: no oracle applies to this scenario\n";
    return kExitConfig;
  }
  return report.all_passed() ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Charger-battery quantum battery simulator"};
  app.require_subcommand(1);
  Options opts;

  std::function<int(const Options&)> action;
  const auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opts.config, "Scenario file (YAML)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out, "Output path (overrides run.output; '-' for stdout)");
    sub->add_flag("--quiet", opts.quiet, "Suppress the summary text");
    sub->callback([&action, fn] { action = fn; });
  };
  add("simulate", "Integrate one scenario and write its trajectory CSV", cmd_simulate);
  add("sweep", "Run one simulation per value of the swept parameter", cmd_sweep);
  add("supermodes", "Print the super-mode basis and resonance report", cmd_supermodes);
  add("oracle", "Write the coherent-amplitude oracle trajectory", cmd_oracle);
  add("compare", "Check the integrator against the applicable oracles", cmd_compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    return action(opts);
  } catch (const qbattery::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
