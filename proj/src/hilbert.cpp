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

#include "qbattery/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qbattery {

SpaceDescriptor::SpaceDescriptor(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw DimensionError("space descriptor needs at least one subsystem");
  }
  for (int d : dims_) {
    if (d < 2) {
      throw DimensionError("subsystem dimension must be >= 2, got " + std::to_string(d));
    }
    total_ *= d;
  }
}

int SpaceDescriptor::dim(int site) const {
  if (site < 0 || site >= subsystems()) {
    throw DimensionError("site " + std::to_string(site) + " out of range for space " +
                         to_string());
  }
  return dims_[static_cast<std::size_t>(site)];
}

Index SpaceDescriptor::left_dim(int site) const {
  dim(site);
  Index n = 1;
  for (int i = 0; i < site; ++i) n *= dims_[static_cast<std::size_t>(i)];
  return n;
}

Index SpaceDescriptor::right_dim(int site) const {
  dim(site);
  Index n = 1;
  for (int i = site + 1; i < subsystems(); ++i) n *= dims_[static_cast<std::size_t>(i)];
  return n;
}

SpaceDescriptor SpaceDescriptor::restricted(std::span<const int> sites) const {
  std::vector<int> out;
  out.reserve(sites.size());
  for (int s : sites) out.push_back(dim(s));
  return SpaceDescriptor(std::move(out));
}

std::string SpaceDescriptor::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) os << ',';
    os << dims_[i];
  }
  os << ']';
  return os.str();
}

Operator::Operator(Matrix matrix, SpaceDescriptor space)
    : matrix_(std::move(matrix)), space_(std::move(space)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != space_.total_dim()) {
    throw DimensionError("operator matrix " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + " does not match space " +
                         space_.to_string());
  }
}

Operator identity(const SpaceDescriptor& space) {
  return Operator(Matrix::Identity(space.total_dim(), space.total_dim()), space);
}

Operator zero_operator(const SpaceDescriptor& space) {
  return Operator(Matrix::Zero(space.total_dim(), space.total_dim()), space);
}

Operator annihilation(int cutoff) {
  if (cutoff < 2) {
    throw DimensionError("Fock cutoff must be >= 2, got " + std::to_string(cutoff));
  }
  Matrix m = Matrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator(std::move(m), SpaceDescriptor({cutoff}));
}

Operator creation(int cutoff) { return adjoint(annihilation(cutoff)); }

Operator number(int cutoff) {
  if (cutoff < 2) {
    throw DimensionError("Fock cutoff must be >= 2, got " + std::to_string(cutoff));
  }
  Matrix m = Matrix::Zero(cutoff, cutoff);
  for (int n = 0; n < cutoff; ++n) m(n, n) = static_cast<double>(n);
  return Operator(std::move(m), SpaceDescriptor({cutoff}));
}

Operator qubit_lowering() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return Operator(std::move(m), SpaceDescriptor({2}));
}

namespace {

void require_single_site(const Operator& op, int site, const SpaceDescriptor& space) {
  if (op.space().subsystems() != 1) {
    throw DimensionError("embed expects a single-subsystem operator, got space " +
                         op.space().to_string());
  }
  if (op.dim() != space.dim(site)) {
    throw DimensionError("operator of dimension " + std::to_string(op.dim()) +
                         " cannot act on site " + std::to_string(site) + " of " +
                         space.to_string());
  }
}

}  // namespace

Operator embed(const Operator& op, int site, const SpaceDescriptor& space) {
  const std::pair<int, Operator> factor{site, op};
  return embed_product(std::span(&factor, 1), space);
}

Operator embed_product(std::span<const std::pair<int, Operator>> factors,
                       const SpaceDescriptor& space) {
  std::vector<const Matrix*> per_site(static_cast<std::size_t>(space.subsystems()), nullptr);
  for (const auto& [site, op] : factors) {
    require_single_site(op, site, space);
    auto& slot = per_site[static_cast<std::size_t>(site)];
    if (slot) throw DimensionError("embed_product: site " + std::to_string(site) + " repeated");
    slot = &op.matrix();
  }
  // Left-to-right Kronecker product; zero entries of the partial product are skipped.
  Matrix acc = Matrix::Ones(1, 1);
  for (int s = 0; s < space.subsystems(); ++s) {
    const Index d = space.dim(s);
    const Index n = acc.rows();
    Matrix next = Matrix::Zero(n * d, n * d);
    const Matrix* f = per_site[static_cast<std::size_t>(s)];
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        const Complex v = acc(i, j);
        if (v == Complex{}) continue;
        if (f) {
          next.block(i * d, j * d, d, d) = v * *f;
        } else {
          for (Index k = 0; k < d; ++k) next(i * d + k, j * d + k) = v;
        }
      }
    }
    acc = std::move(next);
  }
  return Operator(std::move(acc), space);
}

Operator kron(const Operator& lhs, const Operator& rhs) {
  const Matrix& a = lhs.matrix();
  const Matrix& b = rhs.matrix();
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  std::vector<int> dims = lhs.space().dims();
  dims.insert(dims.end(), rhs.space().dims().begin(), rhs.space().dims().end());
  return Operator(std::move(out), SpaceDescriptor(std::move(dims)));
}

namespace {

void require_same_space(const Operator& a, const Operator& b, const char* what) {
  if (a.space() != b.space()) {
    throw DimensionError(std::string(what) + ": space mismatch " + a.space().to_string() +
                         " vs " + b.space().to_string());
  }
}

}  // namespace

Operator adjoint(const Operator& op) { return Operator(op.matrix().adjoint(), op.space()); }

Operator multiply(const Operator& lhs, const Operator& rhs) {
  require_same_space(lhs, rhs, "multiply");
  return Operator(lhs.matrix() * rhs.matrix(), lhs.space());
}

Operator add_scaled(const Operator& accumulator, Complex coefficient, const Operator& op) {
  require_same_space(accumulator, op, "add_scaled");
  return Operator(accumulator.matrix() + coefficient * op.matrix(), op.space());
}

Operator operator+(const Operator& lhs, const Operator& rhs) { return add_scaled(lhs, 1.0, rhs); }
Operator operator-(const Operator& lhs, const Operator& rhs) { return add_scaled(lhs, -1.0, rhs); }
Operator operator*(const Operator& lhs, const Operator& rhs) { return multiply(lhs, rhs); }
Operator operator*(Complex coefficient, const Operator& op) {
  return Operator(coefficient * op.matrix(), op.space());
}

double hermiticity_error(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double hermiticity_error(const Operator& op) { return hermiticity_error(op.matrix()); }

}  // namespace qbattery
