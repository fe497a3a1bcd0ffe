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

#ifndef QBATTERY_STATE_HPP
#define QBATTERY_STATE_HPP

#include <stdexcept>

#include "qbattery/hilbert.hpp"

namespace qbattery {

class StateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct StateTolerance {
  double hermiticity = 1e-10;
  double trace = 1e-9;
  double min_eigenvalue = -1e-8;
};

/// Density matrix on a tagged composite space. Construction only checks
/// shape; physical validity is checked on demand with validate().
class DensityMatrix {
 public:
  DensityMatrix(Matrix matrix, SpaceDescriptor space);

  /// |0,0,...,0><0,0,...,0|
  static DensityMatrix vacuum(const SpaceDescriptor& space);
  static DensityMatrix pure(const Eigen::VectorXcd& psi, const SpaceDescriptor& space);

  const Matrix& matrix() const { return matrix_; }
  Matrix& matrix() { return matrix_; }
  const SpaceDescriptor& space() const { return space_; }
  Index dim() const { return matrix_.rows(); }

  double trace_error() const;
  double hermiticity_error() const;
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;

  /// Throws StateError when any tolerance is violated.
  void validate(const StateTolerance& tol = {}) const;

 private:
  Matrix matrix_;
  SpaceDescriptor space_;
};

}  // namespace qbattery

#endif  // QBATTERY_STATE_HPP
