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

#include "qbattery/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SparseCore>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace qbattery {

namespace {

using Sparse = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;
using RowSparse = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

constexpr Complex kI{0.0, 1.0};

Sparse to_sparse(const Matrix& m) {
  Sparse s = m.sparseView();
  s.makeCompressed();
  return s;
}

// out += a * m. Eigen walks a row-major left factor row by row across the
// column-major dense operand; gathering within one column at a time keeps
// every access inside that column.
void add_left_product(const RowSparse& a, const Matrix& m, Matrix& out) {
  const Complex* values = a.valuePtr();
  const int* inner = a.innerIndexPtr();
  const int* outer = a.outerIndexPtr();
  for (Index c = 0; c < m.cols(); ++c) {
    const Complex* src = m.col(c).data();
    Complex* dst = out.col(c).data();
    for (Index i = 0; i < a.rows(); ++i) {
      Complex sum{};
      for (int p = outer[i]; p < outer[i + 1]; ++p) sum += values[p] * src[inner[p]];
      dst[i] += sum;
    }
  }
}

// out = m * a for column-major sparse a: one vectorized axpy per nonzero,
// each reading a contiguous column of m.
void right_product(const Matrix& m, const Sparse& a, Matrix& out) {
  for (Index j = 0; j < a.outerSize(); ++j) {
    auto col = out.col(j);
    col.setZero();
    for (Sparse::InnerIterator it(a, j); it; ++it) col += it.value() * m.col(it.index());
  }
}

void require_space(const DensityMatrix& rho, const Generator& gen) {
  if (rho.space() != gen.space) {
    throw DimensionError("state space " + rho.space().to_string() +
                         " does not match generator space " + gen.space.to_string());
  }
}

double tail_of(const Matrix& rho, const SpaceDescriptor& space, int site) {
  const Index d = space.dim(site);
  const Index stride = space.right_dim(site);
  double pop = 0.0;
  for (Index i = 0; i < rho.rows(); ++i) {
    if ((i / stride) % d >= d - 2) pop += rho(i, i).real();
  }
  return pop;
}

}  // namespace

// All products are dense * sparse (column axpys on the column-major state),
// which vectorize far better than sparse * dense. For Hermitian rho:
//   W = rho H_eff(t)^dag      so  -i H_eff rho = -i W^dag
//   J rho J^dag = J (rho J^dag), with the left product done column by column
struct LindbladKernel::Impl {
  Sparse h_eff_adj;
  std::optional<Sparse> drive_pos;
  std::optional<Sparse> drive_neg;
  double delta = 0.0;
  std::vector<RowSparse> jumps;
  std::vector<Sparse> jumps_adj;
  Matrix work;
};

LindbladKernel::LindbladKernel(const Generator& gen) : impl_(std::make_unique<Impl>()) {
  Matrix h_eff = gen.h_static.matrix();
  for (const auto& c : gen.collapse_ops) {
    if (c.rate == 0.0) continue;
    const Matrix& l = c.op.matrix();
    h_eff -= Complex(0.0, 0.5 * c.rate) * (l.adjoint() * l);
    impl_->jumps.push_back(RowSparse(to_sparse(std::sqrt(c.rate) * l)));
    impl_->jumps_adj.push_back(to_sparse(std::sqrt(c.rate) * l.adjoint()));
  }
  impl_->h_eff_adj = to_sparse(h_eff.adjoint());
  if (gen.drive) {
    impl_->drive_pos = to_sparse(gen.drive->positive.matrix());
    impl_->drive_neg = to_sparse(gen.drive->negative.matrix());
    impl_->delta = gen.drive->delta;
  }
  const Index d = gen.space.total_dim();
  impl_->work.resize(d, d);
}

LindbladKernel::~LindbladKernel() = default;

void LindbladKernel::apply(const Matrix& rho, double t, Matrix& out) {
  Impl& k = *impl_;
  right_product(rho, k.h_eff_adj, k.work);
  if (k.drive_pos) {
    // H(t)^dag = ... + conj(phase) P^dag + phase P, with phase = e^{-i delta t}
    const Complex phase = std::exp(Complex(0.0, -k.delta * t));
    k.work.noalias() += std::conj(phase) * (rho * *k.drive_neg);
    k.work.noalias() += phase * (rho * *k.drive_pos);
  }
  out.noalias() = kI * k.work;
  out.noalias() -= kI * k.work.adjoint();
  for (std::size_t j = 0; j < k.jumps.size(); ++j) {
    right_product(rho, k.jumps_adj[j], k.work);
    add_left_product(k.jumps[j], k.work, out);
  }
}

double default_dt(const Generator& gen) {
  const double rate = gen.characteristic_rate;
  return rate > 0.0 ? 0.01 / rate : 0.01;
}

void validate(const IntegratorConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw std::invalid_argument("dt must be > 0");
  if (cfg.sample_every < 1) throw std::invalid_argument("sample_every must be >= 1");
  if (!(cfg.tail_tolerance > 0.0)) throw std::invalid_argument("tail_tolerance must be > 0");
  if (cfg.spectrum_every < 0) throw std::invalid_argument("spectrum_every must be >= 0");
}

Matrix lindblad_rhs(const DensityMatrix& rho, const Generator& gen, double t) {
  require_space(rho, gen);
  const Matrix& r = rho.matrix();
  const Matrix h = gen.hamiltonian_at(t).matrix();
  Matrix out = -kI * (h * r - r * h);
  for (const auto& c : gen.collapse_ops) {
    if (c.rate == 0.0) continue;
    const Matrix& l = c.op.matrix();
    const Matrix ldl = l.adjoint() * l;
    out += c.rate * (l * r * l.adjoint() - 0.5 * (ldl * r + r * ldl));
  }
  return out;
}

double tail_population(const DensityMatrix& rho, int site) {
  return tail_of(rho.matrix(), rho.space(), site);
}

Trajectory evolve(const DensityMatrix& rho0, const Generator& gen, double t_end,
                  const IntegratorConfig& cfg, std::span<const Observer> observers) {
  validate(cfg);
  require_space(rho0, gen);
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be >= 0");

  const long n_steps = t_end == 0.0 ? 0 : static_cast<long>(std::ceil(t_end / cfg.dt - 1e-9));
  const double h = n_steps > 0 ? t_end / static_cast<double>(n_steps) : cfg.dt;
  const std::vector<int> oscillators = gen.oscillator_sites();
  const SpaceDescriptor& space = gen.space;

  Trajectory traj;
  traj.dt = h;
  LindbladKernel kernel(gen);

  Matrix rho = rho0.matrix();
  const Index d = rho.rows();
  Matrix next(d, d), stage(d, d), k1(d, d), k2(d, d), k3(d, d), k4(d, d);

  double window_trace = 0.0;
  double window_herm = 0.0;
  long record_index = 0;

  const auto sample = [&](double t, bool last) {
    const bool spectrum = cfg.spectrum_every > 0 &&
                          (record_index % cfg.spectrum_every == 0 || last);
    const DensityMatrix state(rho, space);
    ObservableRecord rec = observe(state, gen, t, spectrum);
    if (record_index > 0) {
      rec.trace_error = window_trace;
      rec.hermiticity_error = window_herm;
    }
    if (rec.min_eigenvalue) {
      auto& m = traj.diagnostics.min_eigenvalue;
      m = m ? std::min(*m, *rec.min_eigenvalue) : *rec.min_eigenvalue;
    }
    traj.records.push_back(std::move(rec));
    for (const Observer& obs : observers) obs(t, state);
    window_trace = 0.0;
    window_herm = 0.0;
    ++record_index;
  };

  for (int s : oscillators) {
    const double pop = tail_of(rho, space, s);
    if (pop > cfg.tail_tolerance) {
      traj.truncation = TruncationEvent{0.0, s, pop};
      traj.final_state = DensityMatrix(rho, space);
      return traj;
    }
  }
  sample(0.0, n_steps == 0);

  long last_recorded = 0;
  for (long step = 1; step <= n_steps; ++step) {
    const double t = static_cast<double>(step - 1) * h;
    kernel.apply(rho, t, k1);
    stage = rho + (0.5 * h) * k1;
    kernel.apply(stage, t + 0.5 * h, k2);
    stage = rho + (0.5 * h) * k2;
    kernel.apply(stage, t + 0.5 * h, k3);
    stage = rho + h * k3;
    kernel.apply(stage, t + h, k4);
    next = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    if (!next.allFinite()) {
      throw NumericalError("non-finite state at t = " + std::to_string(t + h) +
                           " (dt = " + std::to_string(h) + " too large?)");
    }
    stage = next.adjoint();
    const double herm = std::sqrt((next - stage).cwiseAbs2().maxCoeff());
    const Complex tr = next.trace();
    const double drift = std::abs(tr - Complex(1.0));
    window_herm = std::max(window_herm, herm);
    window_trace = std::max(window_trace, drift);
    traj.diagnostics.max_hermiticity_drift = std::max(traj.diagnostics.max_hermiticity_drift, herm);
    traj.diagnostics.max_trace_drift = std::max(traj.diagnostics.max_trace_drift, drift);

    next = 0.5 * (next + stage);
    if (cfg.renormalize) {
      next /= next.trace().real();
      ++traj.diagnostics.renormalizations;
    }

    const double t_now = static_cast<double>(step) * h;
    for (int s : oscillators) {
      const double pop = tail_of(next, space, s);
      if (pop > cfg.tail_tolerance) {
        traj.truncation = TruncationEvent{t_now, s, pop};
        break;
      }
    }
    if (traj.truncation) break;

    rho.swap(next);
    traj.diagnostics.steps = step;
    traj.last_valid_time = t_now;
    if (step % cfg.sample_every == 0 || step == n_steps) {
      sample(t_now, step == n_steps);
      last_recorded = step;
    }
  }
  if (traj.truncation && last_recorded != traj.diagnostics.steps) {
    sample(traj.last_valid_time, true);
  }
  traj.final_state = DensityMatrix(std::move(rho), space);
  return traj;
}

Matrix liouvillian_superoperator(const Generator& gen) {
  const Index d = gen.space.total_dim();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix& h = gen.h_static.matrix();
  // vec(A X B) = (B^T kron A) vec(X) for column stacking.
  Matrix sup = -kI * (Matrix(Eigen::kroneckerProduct(id, h)) -
                      Matrix(Eigen::kroneckerProduct(h.transpose(), id)));
  for (const auto& c : gen.collapse_ops) {
    if (c.rate == 0.0) continue;
    const Matrix& l = c.op.matrix();
    const Matrix ldl = l.adjoint() * l;
    sup += c.rate * (Matrix(Eigen::kroneckerProduct(l.conjugate(), l)) -
                     0.5 * Matrix(Eigen::kroneckerProduct(id, ldl)) -
                     0.5 * Matrix(Eigen::kroneckerProduct(ldl.transpose(), id)));
  }
  return sup;
}

DensityMatrix exact_propagate(const DensityMatrix& rho0, const Generator& gen, double t) {
  require_space(rho0, gen);
  if (gen.time_dependent()) {
    throw OracleError("exact_propagate needs a time-independent generator");
  }
  const Index d = gen.space.total_dim();
  if (d > kExactPropagateMaxDim) {
    throw OracleError("exact_propagate limited to dimension " +
                      std::to_string(kExactPropagateMaxDim) + ", got " + std::to_string(d));
  }
  if (t == 0.0) return rho0;
  const Matrix propagator = (liouvillian_superoperator(gen) * Complex(t)).exp();
  const Eigen::Map<const Eigen::VectorXcd> v0(rho0.matrix().data(), d * d);
  Eigen::VectorXcd v = propagator * v0;
  return DensityMatrix(Eigen::Map<Matrix>(v.data(), d, d), gen.space);
}

}  // namespace qbattery
