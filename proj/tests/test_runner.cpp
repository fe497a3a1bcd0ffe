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

#include <cmath>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "qbattery/runner.hpp"

using namespace qbattery;
using namespace qbattery::runner;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;
using Catch::Matchers::WithinAbs;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "s.yaml");
  } catch (const ConfigError& err) {
    return err.what();
  }
  return "";
}

std::string trajectory_csv(const ScenarioConfig& cfg) {
  std::ostringstream out;
  write_trajectory_csv(out, cfg, simulate(cfg));
  return out.str();
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

}  // namespace

TEST_CASE("defaults of an almost empty scenario", "[runner]") {
  const ScenarioConfig cfg = parse_config("model: basic\n");
  CHECK(cfg.model == ModelKind::Basic);
  CHECK(cfg.basic.charger_frequency == 1.0);
  CHECK(cfg.basic.drive_frequency == 1.0);
  CHECK(cfg.basic.charger_cutoff == 30);
  CHECK(cfg.t_end == 200.0);
  CHECK_FALSE(cfg.dt);
  CHECK_FALSE(cfg.sweep);
}

TEST_CASE("parameters, derived keys and sections", "[runner]") {
  const ScenarioConfig cfg = parse_config(
      "model: catalyst\n"
      "catalyst: {omega: 2, delta_aq: 0.5, delta_af: -0.1, g_bq: 0, cutoff: 6}\n"
      "run: {t_end: 12.5, columns: [E_B, E_Q]}\n"
      "integrator: {dt: 0.02, sample_every: 3, renormalize: false}\n"
      "compare: {times: [2, 4]}\n");
  CHECK(cfg.model == ModelKind::Catalyst);
  CHECK(cfg.catalyst.qubit_frequency == 1.5);
  CHECK_THAT(cfg.catalyst.drive_frequency, WithinAbs(1.9, 1e-15));
  CHECK(cfg.catalyst.battery_qubit_coupling == 0.0);
  CHECK(cfg.catalyst.charger_cutoff == 6);
  CHECK(cfg.catalyst.battery_cutoff == 6);
  CHECK(cfg.t_end == 12.5);
  CHECK(cfg.columns == std::vector<std::string>{"E_B", "E_Q"});
  CHECK(*cfg.dt == 0.02);
  CHECK(*cfg.sample_every == 3);
  CHECK_FALSE(cfg.renormalize);
  CHECK(cfg.compare_times == std::vector<double>{2.0, 4.0});
}

TEST_CASE("kcell scenario", "[runner]") {
  const ScenarioConfig cfg =
      parse_config("model: kcell\nkcell: {g_0: 0.2, g_1: 0.1, g_2: 0.1, cutoff: 4, cutoff_1: 3}\n");
  CHECK(cfg.kcell.couplings == std::vector<double>{0.2, 0.1, 0.1});
  CHECK(cfg.kcell.cutoffs == std::vector<int>{4, 3, 4});
  CHECK(build_generator(cfg).space.total_dim() == 4 * 2 * 3 * 4);
}

TEST_CASE("malformed scenarios name the offending line", "[runner]") {
  CHECK_THAT(error_of("model: basic\nbasic:\n  g: 0.2\n  bogus: 1\n"),
             StartsWith("s.yaml:4: ") && ContainsSubstring("bogus"));
  CHECK_THAT(error_of("model: basic\nbasic: {g: abc}\n"), StartsWith("s.yaml:2: "));
  CHECK_THAT(error_of("model: nope\n"), StartsWith("s.yaml:1: "));
  CHECK_THAT(error_of("model: basic\ncatalyst: {g_aq: 1}\n"), ContainsSubstring("does not apply"));
  CHECK_THAT(error_of("model: basic\nbasic: {g: -1}\n"), StartsWith("s.yaml:2: "));
  CHECK_THAT(error_of("model: basic\nbasic: {cutoff_a: 2.5}\n"), ContainsSubstring("integer"));
  CHECK_THAT(error_of("model: basic\nbasic: {omega_f: 1, delta_af: 0.1}\n"),
             ContainsSubstring("not both"));
  CHECK_THAT(error_of("model: basic\nrun: {t_end: 0}\n"), StartsWith("s.yaml:2: "));
  CHECK_THAT(error_of("model: basic\nrun: {columns: [E_Z]}\n"), ContainsSubstring("E_Z"));
  CHECK_THAT(error_of("model: basic\nintegrator: {dt: -1}\n"), ContainsSubstring("dt"));
  CHECK_THAT(error_of("model: basic\nextra: 1\n"), ContainsSubstring("extra"));
  CHECK_THAT(error_of("model: [basic\n"), ContainsSubstring("syntax error"));
  CHECK_THAT(error_of(""), ContainsSubstring("empty"));
  CHECK_THAT(error_of("model: kcell\nkcell: {g_0: 0.2, g_2: 0.1}\n"), ContainsSubstring("g_1"));
  CHECK_THROWS_AS(load_config("/nonexistent/scenario.yaml"), ConfigError);
}

TEST_CASE("a list value turns the scenario into a sweep", "[runner]") {
  const ScenarioConfig cfg = parse_config("model: basic\nbasic: {F: [0.05, 0.1, 0.2]}\n");
  REQUIRE(cfg.sweep);
  CHECK(cfg.sweep->key == "F");
  CHECK(cfg.sweep->values == std::vector<double>{0.05, 0.1, 0.2});
  CHECK(cfg.basic.drive_amplitude == 0.05);

  CHECK_THAT(error_of("model: basic\nbasic: {F: [0.1, 0.2], g: [0.1, 0.2]}\n"),
             ContainsSubstring("only one parameter"));
  CHECK_THAT(error_of("model: basic\nbasic: {F: []}\n"), ContainsSubstring("empty"));
  CHECK_THAT(error_of("model: basic\nbasic: {g: [0.1, -0.2]}\n"), StartsWith("s.yaml:2: "));
}

TEST_CASE("set_parameter resolves derived keys", "[runner]") {
  ScenarioConfig cfg = parse_config("model: basic\n");
  set_parameter(cfg, "delta_af", 0.25);
  CHECK(cfg.basic.drive_frequency == 1.25);
  set_parameter(cfg, "cutoff_b", 7);
  CHECK(cfg.basic.battery_cutoff == 7);
  CHECK_THROWS_AS(set_parameter(cfg, "omega_q", 1.0), ConfigError);
}

TEST_CASE("trajectory CSV is deterministic and self-describing", "[runner]") {
  ScenarioConfig cfg = parse_config(
      "model: basic\nbasic: {cutoff: 6, F: 0.05}\nrun: {t_end: 4}\nintegrator: {dt: 0.05}\n");
  const std::string a = trajectory_csv(cfg);
  const std::string b = trajectory_csv(cfg);
  CHECK(a == b);
  CHECK_THAT(a, StartsWith("# qbattery trajectory\n"));
  CHECK_THAT(a, ContainsSubstring("# model = basic\n"));
  CHECK_THAT(a, ContainsSubstring("# F = 0.050000000000000003"));
  CHECK_THAT(a, ContainsSubstring("# dt = 0.050000000000000003"));
  CHECK_THAT(a, ContainsSubstring("# steps = 80"));
  const auto lines = data_lines(a);
  REQUIRE(lines.size() >= 2);
  CHECK_THAT(lines[0], StartsWith("t,E_A,E_B,E_Q,W_B,"));
  // sample every lround(0.5 / 0.05) = 10 steps of 0.05 over 4 time units.
  CHECK(lines.size() == 1 + 9);
}

TEST_CASE("undriven scenario writes zero energies", "[runner]") {
  ScenarioConfig cfg = parse_config(
      "model: basic\nbasic: {cutoff: 4, F: 0}\nrun: {t_end: 2, columns: [E_A, E_B]}\n");
  const auto lines = data_lines(trajectory_csv(cfg));
  CHECK(lines[0] == "t,E_A,E_B");
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK_THAT(lines[i], ContainsSubstring(",0,0"));
}

TEST_CASE("sweeps run every point in order", "[runner]") {
  ScenarioConfig cfg = parse_config(
      "model: basic\nbasic: {cutoff: 6, F: [0.0, 0.05]}\nrun: {t_end: 5}\n");
  const auto rows = run_sweep(cfg, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].value == 0.0);
  CHECK(rows[0].summary.max_battery_energy == 0.0);
  CHECK(rows[1].summary.max_battery_energy > 0.0);
  CHECK(rows[1].summary.last_valid_time == Catch::Approx(5.0));

  ScenarioConfig single = parse_config("model: basic\nbasic: {cutoff: 6, F: [0.05]}\nrun: {t_end: 5}\n");
  const auto one = run_sweep(single, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].summary.max_battery_energy == rows[1].summary.max_battery_energy);

  std::ostringstream out;
  write_sweep_csv(out, cfg, rows);
  CHECK_THAT(out.str(), ContainsSubstring("F,max_E_B,E_B_t_end,max_E_Q,t_last\n0,0,0,,5\n"));
}

TEST_CASE("compare runs the exponential oracle on small scenarios", "[runner]") {
  SECTION("basic") {
    ScenarioConfig cfg = parse_config("model: basic\nbasic: {cutoff: 3}\nrun: {t_end: 10}\n");
    const CompareReport r = run_compare(cfg);
    REQUIRE(r.checks.size() == 2);
    CHECK(r.checks[1].name == "exponential");
    CHECK(r.checks[1].passed());
    CHECK(r.any_applicable());
  }
  SECTION("catalyst refuses the moment oracle") {
    ScenarioConfig cfg = parse_config("model: catalyst\ncatalyst: {cutoff: 4}\nrun: {t_end: 10}\n");
    const CompareReport r = run_compare(cfg);
    CHECK_FALSE(r.checks[0].applicable);
    CHECK(r.checks[1].passed());
    CHECK(r.all_passed());
  }
  SECTION("thermal basic refuses the moment oracle") {
    ScenarioConfig cfg =
        parse_config("model: basic\nbasic: {cutoff: 3, n_thermal: 1}\nrun: {t_end: 10}\n");
    CHECK_FALSE(run_compare(cfg).checks[0].applicable);
    CHECK_THROWS_AS(moment_trajectory(cfg), OracleError);
  }
  SECTION("large scenario refuses the exponential oracle") {
    ScenarioConfig cfg = parse_config("model: basic\nbasic: {cutoff: 12}\nrun: {t_end: 10}\n");
    const CompareReport r = run_compare(cfg);
    CHECK(r.checks[0].passed());
    CHECK_FALSE(r.checks[1].applicable);
  }
}

TEST_CASE("super-mode report for the scenario", "[runner]") {
  ScenarioConfig cfg = parse_config("model: catalyst\ncatalyst: {g_aq: 0.3, g_bq: 0.4, cutoff: 3}\n");
  CHECK_THAT(*scenario_supermodes(cfg).qubit_coupling, WithinAbs(0.5, 1e-15));
  std::ostringstream csv;
  write_supermode_csv(csv, cfg);
  CHECK_THAT(csv.str(), ContainsSubstring("mode,frequency,detuning,chi,driven,qubit_coupled,resonant"));
  ScenarioConfig detuned = parse_config("model: basic\nbasic: {omega_b: 1.1}\n");
  CHECK_THROWS_AS(scenario_supermodes(detuned), ConfigError);
}
