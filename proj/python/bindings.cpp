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

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qbattery/dynamics.hpp"
#include "qbattery/observables.hpp"
#include "qbattery/runner.hpp"
#include "qbattery/semiclassical.hpp"
#include "qbattery/supermodes.hpp"

namespace py = pybind11;
using namespace qbattery;

namespace {

// Column view of a trajectory, one list entry per sample.
struct TrajectoryColumns {
  std::vector<double> time;
  std::vector<double> charger_energy;
  std::vector<double> battery_energy;
  std::vector<std::optional<double>> qubit_energy;
  std::vector<double> battery_ergotropy;
  std::vector<double> battery_purity;
  std::vector<std::optional<double>> qubit_entropy;
  double dt = 0.0;
  long steps = 0;
  double max_trace_drift = 0.0;
  double max_hermiticity_drift = 0.0;
  std::optional<double> min_eigenvalue;
  double last_valid_time = 0.0;
  bool completed = true;
  Matrix final_state;
};

TrajectoryColumns to_columns(const Trajectory& traj) {
  TrajectoryColumns c;
  for (const auto& r : traj.records) {
    c.time.push_back(r.t);
    c.charger_energy.push_back(r.charger_energy);
    c.battery_energy.push_back(r.battery_energy);
    c.qubit_energy.push_back(r.qubit_energy);
    c.battery_ergotropy.push_back(r.battery_ergotropy);
    c.battery_purity.push_back(r.battery_purity);
    c.qubit_entropy.push_back(r.qubit_entropy);
  }
  c.dt = traj.dt;
  c.steps = traj.diagnostics.steps;
  c.max_trace_drift = traj.diagnostics.max_trace_drift;
  c.max_hermiticity_drift = traj.diagnostics.max_hermiticity_drift;
  c.min_eigenvalue = traj.diagnostics.min_eigenvalue;
  c.last_valid_time = traj.last_valid_time;
  c.completed = traj.completed();
  if (traj.final_state) c.final_state = traj.final_state->matrix();
  return c;
}

DensityMatrix state_on(const Generator& gen, const std::optional<Matrix>& rho0) {
  if (!rho0) return DensityMatrix::vacuum(gen.space);
  return DensityMatrix(*rho0, gen.space);
}

}  // namespace

PYBIND11_MODULE(_qbattery, m) {
  m.doc() = "Open-system simulator for driven oscillator quantum batteries.";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<BasicModelParams>(m, "BasicModelParams")
      .def(py::init<>())
      .def_readwrite("charger_frequency", &BasicModelParams::charger_frequency)
      .def_readwrite("battery_frequency", &BasicModelParams::battery_frequency)
      .def_readwrite("coupling", &BasicModelParams::coupling)
      .def_readwrite("drive_amplitude", &BasicModelParams::drive_amplitude)
      .def_readwrite("drive_frequency", &BasicModelParams::drive_frequency)
      .def_readwrite("decay_rate", &BasicModelParams::decay_rate)
      .def_readwrite("thermal_occupation", &BasicModelParams::thermal_occupation)
      .def_readwrite("charger_cutoff", &BasicModelParams::charger_cutoff)
      .def_readwrite("battery_cutoff", &BasicModelParams::battery_cutoff);

  py::class_<CatalystModelParams>(m, "CatalystModelParams")
      .def(py::init<>())
      .def_readwrite("oscillator_frequency", &CatalystModelParams::oscillator_frequency)
      .def_readwrite("qubit_frequency", &CatalystModelParams::qubit_frequency)
      .def_readwrite("charger_qubit_coupling", &CatalystModelParams::charger_qubit_coupling)
      .def_readwrite("battery_qubit_coupling", &CatalystModelParams::battery_qubit_coupling)
      .def_readwrite("drive_amplitude", &CatalystModelParams::drive_amplitude)
      .def_readwrite("drive_frequency", &CatalystModelParams::drive_frequency)
      .def_readwrite("decay_rate", &CatalystModelParams::decay_rate)
      .def_readwrite("thermal_occupation", &CatalystModelParams::thermal_occupation)
      .def_readwrite("charger_cutoff", &CatalystModelParams::charger_cutoff)
      .def_readwrite("battery_cutoff", &CatalystModelParams::battery_cutoff);

  py::class_<KCellModelParams>(m, "KCellModelParams")
      .def(py::init<>())
      .def_readwrite("oscillator_frequency", &KCellModelParams::oscillator_frequency)
      .def_readwrite("qubit_frequency", &KCellModelParams::qubit_frequency)
      .def_readwrite("couplings", &KCellModelParams::couplings)
      .def_readwrite("drive_amplitude", &KCellModelParams::drive_amplitude)
      .def_readwrite("drive_frequency", &KCellModelParams::drive_frequency)
      .def_readwrite("decay_rate", &KCellModelParams::decay_rate)
      .def_readwrite("thermal_occupation", &KCellModelParams::thermal_occupation)
      .def_readwrite("cutoffs", &KCellModelParams::cutoffs);

  py::class_<Generator>(m, "Generator")
      .def_property_readonly("dims", [](const Generator& g) { return g.space.dims(); })
      .def_property_readonly("dim", [](const Generator& g) { return g.space.total_dim(); })
      .def_property_readonly("hamiltonian", [](const Generator& g) { return g.h_static.matrix(); })
      .def_property_readonly("characteristic_rate", [](const Generator& g) { return g.characteristic_rate; })
      .def_property_readonly("qubit_site", [](const Generator& g) { return g.qubit_site; })
      .def_property_readonly("battery_sites", [](const Generator& g) { return g.battery_sites; });

  m.def("build_basic", &build_basic, py::arg("params"));
  m.def("build_catalyst", &build_catalyst, py::arg("params"));
  m.def("build_kcell", &build_kcell, py::arg("params"));
  m.def("default_dt", &default_dt, py::arg("generator"));

  py::class_<IntegratorConfig>(m, "IntegratorConfig")
      .def(py::init<>())
      .def_readwrite("dt", &IntegratorConfig::dt)
      .def_readwrite("sample_every", &IntegratorConfig::sample_every)
      .def_readwrite("tail_tolerance", &IntegratorConfig::tail_tolerance)
      .def_readwrite("renormalize", &IntegratorConfig::renormalize)
      .def_readwrite("spectrum_every", &IntegratorConfig::spectrum_every);

  py::class_<TrajectoryColumns>(m, "Trajectory")
      .def_readonly("time", &TrajectoryColumns::time)
      .def_readonly("charger_energy", &TrajectoryColumns::charger_energy)
      .def_readonly("battery_energy", &TrajectoryColumns::battery_energy)
      .def_readonly("qubit_energy", &TrajectoryColumns::qubit_energy)
      .def_readonly("battery_ergotropy", &TrajectoryColumns::battery_ergotropy)
      .def_readonly("battery_purity", &TrajectoryColumns::battery_purity)
      .def_readonly("qubit_entropy", &TrajectoryColumns::qubit_entropy)
      .def_readonly("dt", &TrajectoryColumns::dt)
      .def_readonly("steps", &TrajectoryColumns::steps)
      .def_readonly("max_trace_drift", &TrajectoryColumns::max_trace_drift)
      .def_readonly("max_hermiticity_drift", &TrajectoryColumns::max_hermiticity_drift)
      .def_readonly("min_eigenvalue", &TrajectoryColumns::min_eigenvalue)
      .def_readonly("last_valid_time", &TrajectoryColumns::last_valid_time)
      .def_readonly("completed", &TrajectoryColumns::completed)
      .def_readonly("final_state", &TrajectoryColumns::final_state);

  m.def(
      "evolve",
      [](const Generator& gen, double t_end, const IntegratorConfig& cfg,
         const std::optional<Matrix>& rho0) {
        const DensityMatrix start = state_on(gen, rho0);
        py::gil_scoped_release release;
        return to_columns(evolve(start, gen, t_end, cfg));
      },
      py::arg("generator"), py::arg("t_end"), py::arg("config") = IntegratorConfig{},
      py::arg("rho0") = std::nullopt,
      "Integrates from rho0 (vacuum by default) to t_end.");

  m.def(
      "exact_propagate",
      [](const Generator& gen, double t, const std::optional<Matrix>& rho0) {
        return exact_propagate(state_on(gen, rho0), gen, t).matrix();
      },
      py::arg("generator"), py::arg("t"), py::arg("rho0") = std::nullopt,
      "Superoperator exponential; small time-independent generators only.");

  m.def(
      "lindblad_rhs",
      [](const Generator& gen, const Matrix& rho, double t) {
        return lindblad_rhs(DensityMatrix(rho, gen.space), gen, t);
      },
      py::arg("generator"), py::arg("rho"), py::arg("t") = 0.0);

  m.def(
      "partial_trace",
      [](const Matrix& rho, const std::vector<int>& dims, const std::vector<int>& keep) {
        return partial_trace(DensityMatrix(rho, SpaceDescriptor(dims)), keep).matrix();
      },
      py::arg("rho"), py::arg("dims"), py::arg("keep"));
  m.def(
      "oscillator_ergotropy",
      [](const Matrix& rho, double omega) {
        const int n = static_cast<int>(rho.rows());
        const DensityMatrix state(rho, SpaceDescriptor({n}));
        return ergotropy(state, Complex(omega) * number(n), omega);
      },
      py::arg("rho"), py::arg("omega") = 1.0,
      "Ergotropy in quanta of a single oscillator state with H = omega n.");
  m.def(
      "purity",
      [](const Matrix& rho) {
        return purity(DensityMatrix(rho, SpaceDescriptor({static_cast<int>(rho.rows())})));
      },
      py::arg("rho"));
  m.def(
      "entropy_bits",
      [](const Matrix& rho) {
        return von_neumann_entropy(
            DensityMatrix(rho, SpaceDescriptor({static_cast<int>(rho.rows())})));
      },
      py::arg("rho"));

  py::class_<MomentState>(m, "MomentState")
      .def_readonly("t", &MomentState::t)
      .def_readonly("alpha", &MomentState::alpha)
      .def_readonly("beta", &MomentState::beta)
      .def_property_readonly("charger_energy", &MomentState::charger_energy)
      .def_property_readonly("battery_energy", &MomentState::battery_energy);
  m.def(
      "moment_evolve",
      [](const BasicModelParams& p, const std::vector<double>& times, double dt) {
        return moment_evolve(p, times, dt);
      },
      py::arg("params"), py::arg("times"), py::arg("dt") = 0.0);
  m.def("closed_form_resonant", &closed_form_resonant, py::arg("g"), py::arg("F"), py::arg("t"));

  py::class_<SupermodeBasis>(m, "SupermodeBasis")
      .def_readonly("basis", &SupermodeBasis::basis)
      .def_readonly("frequencies", &SupermodeBasis::frequencies)
      .def_readonly("qubit_coupling", &SupermodeBasis::qubit_coupling)
      .def_readonly("drive_weights", &SupermodeBasis::drive_weights);
  m.def("basic_supermodes", &basic_supermodes, py::arg("omega"), py::arg("g"));
  m.def("catalyst_supermodes", &catalyst_supermodes, py::arg("omega"), py::arg("g_aq"),
        py::arg("g_bq"));
  m.def(
      "bogoliubov_basis",
      [](double omega, const std::vector<double>& couplings) {
        return bogoliubov_basis(omega, couplings);
      },
      py::arg("omega"), py::arg("couplings"));

  m.def(
      "run_scenario",
      [](const std::string& text) {
        const runner::ScenarioConfig cfg = runner::parse_config(text, "<python>");
        if (cfg.sweep) throw runner::ConfigError("run_scenario: use run_sweep for sweep scenarios");
        std::ostringstream out;
        {
          py::gil_scoped_release release;
          runner::write_trajectory_csv(out, cfg, runner::simulate(cfg));
        }
        return out.str();
      },
      py::arg("yaml_text"), "Runs a scenario document and returns its trajectory CSV.");
  m.def(
      "run_sweep",
      [](const std::string& text, unsigned threads) {
        const runner::ScenarioConfig cfg = runner::parse_config(text, "<python>");
        if (!cfg.sweep) throw runner::ConfigError("run_sweep: the scenario sweeps no parameter");
        std::ostringstream out;
        {
          py::gil_scoped_release release;
          const auto rows = runner::run_sweep(cfg, threads);
          runner::write_sweep_csv(out, cfg, rows);
        }
        return out.str();
      },
      py::arg("yaml_text"), py::arg("threads") = 0u, "Runs a sweep document and returns its CSV.");
}
