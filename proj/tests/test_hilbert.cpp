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

#include <algorithm>
#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "qbattery/hilbert.hpp"
#include "support.hpp"

using namespace qbattery;
using qbattery::testing::max_abs;
using qbattery::testing::random_matrix;
using Catch::Matchers::WithinAbs;

TEST_CASE("space descriptor validates and reports dimensions", "[hilbert]") {
  const SpaceDescriptor s({3, 2, 4});
  CHECK(s.total_dim() == 24);
  CHECK(s.left_dim(1) == 3);
  CHECK(s.right_dim(1) == 4);
  CHECK(s.to_string() == "[3,2,4]");
  const std::vector<int> keep{2, 0};
  CHECK(s.restricted(keep).dims() == std::vector<int>{4, 3});
  CHECK_THROWS_AS(SpaceDescriptor({3, 1}), DimensionError);
  CHECK_THROWS_AS(SpaceDescriptor({}), DimensionError);
  CHECK_THROWS_AS(s.dim(3), DimensionError);
}

TEST_CASE("operator rejects a matrix of the wrong shape", "[hilbert]") {
  CHECK_THROWS_AS(Operator(Matrix::Zero(5, 5), SpaceDescriptor({2, 2})), DimensionError);
  CHECK_THROWS_AS(Operator(Matrix::Zero(4, 3), SpaceDescriptor({2, 2})), DimensionError);
}

TEST_CASE("annihilation operator matrix elements", "[hilbert]") {
  const Matrix a2 = annihilation(2).matrix();
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 1) = 1.0;
  CHECK(max_abs(a2 - expected) == 0.0);

  CHECK_THAT(annihilation(3).matrix()(1, 2).real(), WithinAbs(1.41421356, 1e-8));
  CHECK_THROWS_AS(annihilation(1), DimensionError);
}

TEST_CASE("truncated commutator carries the top-level artifact", "[hilbert]") {
  // Oracle: a = [[0,1,0],[0,0,r2],[0,0,0]] by hand, so a a^dag = diag(1,2,0)
  // and a^dag a = diag(0,1,2).
  const Matrix a = annihilation(3).matrix();
  const Matrix comm = a * a.adjoint() - a.adjoint() * a;
  Matrix expected = Matrix::Zero(3, 3);
  expected.diagonal() << 1.0, 1.0, -2.0;
  CHECK(max_abs(comm - expected) < 1e-14);
}

TEST_CASE("number operator is diagonal 0..n-1 for every cutoff", "[hilbert][property]") {
  for (int n = 2; n <= 40; ++n) {
    const Matrix a = annihilation(n).matrix();
    const Matrix nn = a.adjoint() * a;
    Matrix expected = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) expected(k, k) = k;
    INFO("cutoff " << n);
    CHECK(max_abs(nn - expected) < 1e-12);
    CHECK(max_abs(number(n).matrix() - expected) < 1e-12);
    CHECK(max_abs(creation(n).matrix() - a.adjoint()) == 0.0);
  }
}

TEST_CASE("qubit lowering operator", "[hilbert]") {
  const Matrix q = qubit_lowering().matrix();
  Eigen::VectorXcd excited(2);
  excited << 0.0, 1.0;
  const Eigen::VectorXcd lowered = q * excited;
  CHECK(lowered(0) == Complex(1.0));
  CHECK(lowered(1) == Complex(0.0));
  CHECK(max_abs(q * q) == 0.0);
  Matrix n = Matrix::Zero(2, 2);
  n(1, 1) = 1.0;
  CHECK(max_abs(q.adjoint() * q - n) == 0.0);
}

TEST_CASE("embedding places the factor in Kronecker order", "[hilbert]") {
  const SpaceDescriptor s33({3, 3});
  const Matrix a0 = embed(annihilation(3), 0, s33).matrix();
  // |i,j> has index 3 i + j with site 0 most significant: <0,1|a_0|1,1> = sqrt(1).
  CHECK(a0(0 * 3 + 1, 1 * 3 + 1) == Complex(1.0));
  CHECK(a0(1, 4) == Complex(1.0));
  CHECK(a0(0, 4) == Complex(0.0));

  const SpaceDescriptor s323({3, 2, 3});
  for (int site = 0; site < 3; ++site) {
    const Matrix id = embed(identity(SpaceDescriptor({s323.dim(site)})), site, s323).matrix();
    CHECK(max_abs(id - Matrix::Identity(18, 18)) == 0.0);
  }

  const SpaceDescriptor s32({3, 2});
  const Operator a = embed(annihilation(3), 0, s32);
  const Operator q = embed(qubit_lowering(), 1, s32);
  CHECK(a.dim() == 6);
  CHECK(max_abs((a * q).matrix() - (q * a).matrix()) == 0.0);

  CHECK_THROWS_AS(embed(annihilation(3), 1, s32), DimensionError);
  CHECK_THROWS_AS(embed(annihilation(3), 2, s32), DimensionError);
}

TEST_CASE("embedded operators on distinct sites commute", "[hilbert][property]") {
  const SpaceDescriptor s({3, 2, 4});
  for (int trial = 0; trial < 10; ++trial) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        const Operator x = embed(Operator(random_matrix(s.dim(i), s.dim(i)), SpaceDescriptor({s.dim(i)})), i, s);
        const Operator y = embed(Operator(random_matrix(s.dim(j), s.dim(j)), SpaceDescriptor({s.dim(j)})), j, s);
        CHECK(max_abs((x * y).matrix() - (y * x).matrix()) < 1e-12);
      }
    }
  }
}

TEST_CASE("embedding preserves spectra with multiplicity", "[hilbert][property]") {
  const SpaceDescriptor s({3, 2, 2});
  const Matrix h = qbattery::testing::random_hermitian(3);
  const Eigen::VectorXd local = Eigen::SelfAdjointEigenSolver<Matrix>(h).eigenvalues();
  const Matrix big = embed(Operator(h, SpaceDescriptor({3})), 0, s).matrix();
  const Eigen::VectorXd global = Eigen::SelfAdjointEigenSolver<Matrix>(big).eigenvalues();
  std::vector<double> expected;
  for (int k = 0; k < 3; ++k) {
    for (int m = 0; m < 4; ++m) expected.push_back(local(k));
  }
  std::sort(expected.begin(), expected.end());
  for (int k = 0; k < 12; ++k) CHECK_THAT(global(k), WithinAbs(expected[static_cast<std::size_t>(k)], 1e-12));
}

TEST_CASE("embedding commutes with the adjoint", "[hilbert][property]") {
  const SpaceDescriptor s({2, 3});
  const Operator x(random_matrix(3, 3), SpaceDescriptor({3}));
  CHECK(max_abs(embed(adjoint(x), 1, s).matrix() - adjoint(embed(x, 1, s)).matrix()) == 0.0);
}

TEST_CASE("embed_product matches the product of embeddings", "[hilbert]") {
  const SpaceDescriptor s({3, 2, 3});
  const std::vector<std::pair<int, Operator>> factors{{0, annihilation(3)}, {1, adjoint(qubit_lowering())}};
  const Matrix direct = (embed(annihilation(3), 0, s) * embed(adjoint(qubit_lowering()), 1, s)).matrix();
  CHECK(max_abs(embed_product(factors, s).matrix() - direct) == 0.0);
  const std::vector<std::pair<int, Operator>> repeated{{0, annihilation(3)}, {0, annihilation(3)}};
  CHECK_THROWS_AS(embed_product(repeated, s), DimensionError);
}

TEST_CASE("algebra helpers", "[hilbert]") {
  const SpaceDescriptor s({2, 2});
  const Operator x(random_matrix(4, 4), s);
  const Operator y(random_matrix(4, 4), s);
  CHECK(max_abs(adjoint(adjoint(x)).matrix() - x.matrix()) == 0.0);
  CHECK(max_abs(adjoint(x * y).matrix() - (adjoint(y) * adjoint(x)).matrix()) < 1e-12);
  CHECK(max_abs(multiply(identity(s), x).matrix() - x.matrix()) == 0.0);

  // Elementwise oracle for c X with c = 2 + 3i.
  const Complex c(2.0, 3.0);
  const Operator scaled = add_scaled(zero_operator(s), c, x);
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) {
      const Complex v = x.matrix()(i, j);
      const Complex expected(2.0 * v.real() - 3.0 * v.imag(), 3.0 * v.real() + 2.0 * v.imag());
      CHECK(std::abs(scaled.matrix()(i, j) - expected) < 1e-14);
    }
  }

  const Operator other(random_matrix(3, 3), SpaceDescriptor({3}));
  CHECK_THROWS_AS(x + other, DimensionError);
  CHECK_THROWS_AS(multiply(x, other), DimensionError);
  CHECK_THROWS_AS(Operator(random_matrix(4, 4), SpaceDescriptor({4})) + x, DimensionError);
}

TEST_CASE("kron concatenates spaces", "[hilbert]") {
  const Operator k = kron(annihilation(3), qubit_lowering());
  CHECK(k.space().dims() == std::vector<int>{3, 2});
  const SpaceDescriptor s({3, 2});
  const Matrix expected = (embed(annihilation(3), 0, s) * embed(qubit_lowering(), 1, s)).matrix();
  CHECK(max_abs(k.matrix() - expected) == 0.0);
}
