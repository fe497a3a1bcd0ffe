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

// Density-matrix propagation under a Lindblad generator.
//
//   d rho/dt = -i[H(t), rho] + sum_j r_j (L_j rho L_j^dag - 1/2 {L_j^dag L_j, rho})
//
// evolve() is the production path: fixed-step classical RK4 on the dense
// state, with the generator's operators compiled to sparse form. After each
// step the state is re-Hermitized and (optionally) renormalized; the
// deviations removed by those corrections are recorded, never hidden.
//
// exact_propagate() is an independent oracle for small systems: it builds
// the d^2 x d^2 Liouvillian superoperator and exponentiates it.

#ifndef QBATTERY_DYNAMICS_HPP
#define QBATTERY_DYNAMICS_HPP

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qbattery/models.hpp"
#include "qbattery/observables.hpp"
#include "qbattery/state.hpp"

namespace qbattery {

/// Non-finite state, typically a step size beyond RK4 stability.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request outside the oracle's domain (too large, time-dependent).
class OracleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct IntegratorConfig {
  double dt = 0.05;
  int sample_every = 1;
  /// Abort when any oscillator holds more than this population in its top
  /// two retained Fock levels.
  double tail_tolerance = 1e-6;
  bool renormalize = true;
  /// Full-state minimum eigenvalue on every n-th sample (and the last one);
  /// 0 disables it.
  int spectrum_every = 1;
};

/// 0.01 / (fastest rate of the generator in its frame); 0.01 for a
/// generator with no dynamics at all.
double default_dt(const Generator& gen);

/// Throws std::invalid_argument unless dt > 0, sample_every >= 1,
/// tail_tolerance > 0 and spectrum_every >= 0.
void validate(const IntegratorConfig& cfg);

struct StepDiagnostics {
  long steps = 0;
  /// Largest |Tr rho - 1| after a step, before renormalization.
  double max_trace_drift = 0.0;
  /// Largest max|rho - rho^dag| after a step, before re-Hermitization.
  double max_hermiticity_drift = 0.0;
  long renormalizations = 0;
  /// Smallest full-state eigenvalue over the samples where it was computed.
  std::optional<double> min_eigenvalue;
};

struct TruncationEvent {
  double time;
  int site;
  double population;
};

/// Sampled trajectory. In records produced by evolve(), trace_error and
/// hermiticity_error hold the largest per-step pre-correction drift since
/// the previous sample.
struct Trajectory {
  double dt = 0.0;
  std::vector<ObservableRecord> records;
  StepDiagnostics diagnostics;
  std::optional<TruncationEvent> truncation;
  double last_valid_time = 0.0;
  std::optional<DensityMatrix> final_state;

  bool completed() const { return !truncation.has_value(); }
};

using Observer = std::function<void(double t, const DensityMatrix& rho)>;

/// Right-hand side of the master equation at time t, evaluated directly
/// from the dense operators (valid for non-Hermitian input as well).
Matrix lindblad_rhs(const DensityMatrix& rho, const Generator& gen, double t);

/// Production right-hand side: sparse operators, effective non-Hermitian
/// Hamiltonian H - i/2 sum r L^dag L, and K + K^dag symmetrization. Only
/// valid for Hermitian rho, which is what the integrator feeds it.
class LindbladKernel {
 public:
  explicit LindbladKernel(const Generator& gen);
  LindbladKernel(const LindbladKernel&) = delete;
  LindbladKernel& operator=(const LindbladKernel&) = delete;
  ~LindbladKernel();

  void apply(const Matrix& rho, double t, Matrix& out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Population in the top two retained levels of oscillator `site`.
double tail_population(const DensityMatrix& rho, int site);

/// Integrates from t = 0 to t_end. The step is shrunk so that an integer
/// number of steps lands exactly on t_end. A truncation overflow stops the
/// run and is reported in the trajectory; non-finite states throw
/// NumericalError.
Trajectory evolve(const DensityMatrix& rho0, const Generator& gen, double t_end,
                  const IntegratorConfig& cfg, std::span<const Observer> observers = {});

/// Dense Liouvillian superoperator acting on column-stacked vec(rho).
Matrix liouvillian_superoperator(const Generator& gen);

constexpr Index kExactPropagateMaxDim = 64;

/// exp(L t) vec(rho0) for time-independent generators of dimension <= 64.
DensityMatrix exact_propagate(const DensityMatrix& rho0, const Generator& gen, double t);

}  // namespace qbattery

#endif  // QBATTERY_DYNAMICS_HPP
