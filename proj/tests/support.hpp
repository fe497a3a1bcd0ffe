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

// Seeded random operators and states shared by the unit tests.

#ifndef QBATTERY_TESTS_SUPPORT_HPP
#define QBATTERY_TESTS_SUPPORT_HPP

#include <random>

#include "qbattery/hilbert.hpp"
#include "qbattery/state.hpp"

namespace qbattery::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20260415);
  return engine;
}

inline Matrix random_matrix(Index rows, Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(n(rng()), n(rng()));
  }
  return m;
}

inline Matrix random_hermitian(Index d) {
  const Matrix m = random_matrix(d, d);
  return 0.5 * (m + m.adjoint());
}

/// Full-rank mixed state from a Ginibre matrix.
inline DensityMatrix random_state(const SpaceDescriptor& space) {
  const Matrix g = random_matrix(space.total_dim(), space.total_dim());
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(rho, space);
}

inline DensityMatrix random_pure_state(const SpaceDescriptor& space) {
  Eigen::VectorXcd psi = random_matrix(space.total_dim(), 1);
  psi.normalize();
  return DensityMatrix::pure(psi, space);
}

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace qbattery::testing

#endif  // QBATTERY_TESTS_SUPPORT_HPP
