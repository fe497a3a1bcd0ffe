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

#ifndef QBATTERY_HILBERT_HPP
#define QBATTERY_HILBERT_HPP

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qbattery {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Raised when operators or states live on incompatible spaces, or a
/// subsystem index is out of range.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered tensor-factor dimensions of a composite Hilbert space.
///
/// A qubit has dimension 2; an oscillator with Fock cutoff n keeps the
/// levels |0> ... |n-1> and has dimension n.
class SpaceDescriptor {
 public:
  explicit SpaceDescriptor(std::vector<int> dims);

  const std::vector<int>& dims() const { return dims_; }
  int subsystems() const { return static_cast<int>(dims_.size()); }
  int dim(int site) const;
  Index total_dim() const { return total_; }

  /// Product of the dimensions of the factors strictly left/right of `site`.
  Index left_dim(int site) const;
  Index right_dim(int site) const;

  /// Descriptor of the subsystems listed in `sites` (kept in given order).
  SpaceDescriptor restricted(std::span<const int> sites) const;

  std::string to_string() const;

  friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;

 private:
  std::vector<int> dims_;
  Index total_ = 1;
};

/// Dense complex matrix tagged with the space it acts on.
class Operator {
 public:
  Operator(Matrix matrix, SpaceDescriptor space);

  const Matrix& matrix() const { return matrix_; }
  const SpaceDescriptor& space() const { return space_; }
  Index dim() const { return matrix_.rows(); }

 private:
  Matrix matrix_;
  SpaceDescriptor space_;
};

Operator identity(const SpaceDescriptor& space);
Operator zero_operator(const SpaceDescriptor& space);

/// Truncated bosonic lowering operator, <n-1|a|n> = sqrt(n) for n < cutoff.
Operator annihilation(int cutoff);
/// Exact adjoint of the truncated annihilation operator; annihilates the
/// top retained level.
Operator creation(int cutoff);
Operator number(int cutoff);
/// Two-level lowering operator |0><1| (ground = index 0).
Operator qubit_lowering();

/// Places a single-subsystem operator at `site`, identity elsewhere.
Operator embed(const Operator& op, int site, const SpaceDescriptor& space);

/// Kronecker product of single-subsystem factors at distinct sites,
/// identity on every other site. Builds product terms such as a (x) q^dag
/// without a dense matrix multiplication.
Operator embed_product(std::span<const std::pair<int, Operator>> factors,
                       const SpaceDescriptor& space);

/// Kronecker product of operators, in order; spaces are concatenated.
Operator kron(const Operator& lhs, const Operator& rhs);

Operator adjoint(const Operator& op);
Operator multiply(const Operator& lhs, const Operator& rhs);
/// Returns accumulator + coefficient * op.
Operator add_scaled(const Operator& accumulator, Complex coefficient, const Operator& op);

Operator operator+(const Operator& lhs, const Operator& rhs);
Operator operator-(const Operator& lhs, const Operator& rhs);
Operator operator*(const Operator& lhs, const Operator& rhs);
Operator operator*(Complex coefficient, const Operator& op);

/// max_ij |A_ij - conj(A_ji)|
double hermiticity_error(const Matrix& m);
double hermiticity_error(const Operator& op);

}  // namespace qbattery

#endif  // QBATTERY_HILBERT_HPP
