# Copyright 2026 The qbattery Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Driven oscillator quantum batteries under Lindblad dynamics."""

from ._qbattery import (
    BasicModelParams,
    CatalystModelParams,
    Generator,
    IntegratorConfig,
    KCellModelParams,
    MomentState,
    NumericalError,
    SupermodeBasis,
    Trajectory,
    basic_supermodes,
    bogoliubov_basis,
    build_basic,
    build_catalyst,
    build_kcell,
    catalyst_supermodes,
    closed_form_resonant,
    default_dt,
    entropy_bits,
    evolve,
    exact_propagate,
    lindblad_rhs,
    moment_evolve,
    oscillator_ergotropy,
    partial_trace,
    purity,
    run_scenario,
    run_sweep,
)

__all__ = [
    "BasicModelParams",
    "CatalystModelParams",
    "Generator",
    "IntegratorConfig",
    "KCellModelParams",
    "MomentState",
    "NumericalError",
    "SupermodeBasis",
    "Trajectory",
    "basic_supermodes",
    "bogoliubov_basis",
    "build_basic",
    "build_catalyst",
    "build_kcell",
    "catalyst_supermodes",
    "closed_form_resonant",
    "default_dt",
    "entropy_bits",
    "evolve",
    "exact_propagate",
    "lindblad_rhs",
    "moment_evolve",
    "oscillator_ergotropy",
    "partial_trace",
    "purity",
    "run_scenario",
    "run_sweep",
]
