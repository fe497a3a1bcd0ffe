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

#include "qbattery/state.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace qbattery {

DensityMatrix::DensityMatrix(Matrix matrix, SpaceDescriptor space)
    : matrix_(std::move(matrix)), space_(std::move(space)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != space_.total_dim()) {
    throw DimensionError("density matrix shape does not match space " + space_.to_string());
  }
}

DensityMatrix DensityMatrix::vacuum(const SpaceDescriptor& space) {
  Matrix m = Matrix::Zero(space.total_dim(), space.total_dim());
  m(0, 0) = 1.0;
  return DensityMatrix(std::move(m), space);
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi, const SpaceDescriptor& space) {
  const double n = psi.norm();
  if (!(n > 0.0)) throw StateError("cannot build a pure state from a zero vector");
  const Eigen::VectorXcd v = psi / n;
  return DensityMatrix(v * v.adjoint(), space);
}

double DensityMatrix::trace_error() const { return std::abs(matrix_.trace() - Complex(1.0)); }

double DensityMatrix::hermiticity_error() const { return qbattery::hermiticity_error(matrix_); }

double DensityMatrix::min_eigenvalue() const {
  const Matrix h = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void DensityMatrix::validate(const StateTolerance& tol) const {
  if (!matrix_.allFinite()) throw StateError("density matrix has non-finite entries");
  if (const double h = hermiticity_error(); h > tol.hermiticity) {
    throw StateError("density matrix not Hermitian (deviation " + std::to_string(h) + ")");
  }
  if (const double t = trace_error(); t > tol.trace) {
    throw StateError("density matrix trace deviates from 1 by " + std::to_string(t));
  }
  if (const double e = min_eigenvalue(); e < tol.min_eigenvalue) {
    throw StateError("density matrix has negative eigenvalue " + std::to_string(e));
  }
}

}  // namespace qbattery
