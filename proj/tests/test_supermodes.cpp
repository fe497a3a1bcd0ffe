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

#include <cmath>
#include <numbers>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "qbattery/supermodes.hpp"
#include "support.hpp"

using namespace qbattery;
using qbattery::testing::max_abs;
using Catch::Matchers::WithinAbs;

namespace {

double orthogonality_error(const Eigen::MatrixXd& u) {
  return (u * u.transpose() - Eigen::MatrixXd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("basic super-modes", "[supermodes]") {
  const SupermodeBasis b = basic_supermodes(1.0, 0.2);
  CHECK_THAT(b.frequencies(0), WithinAbs(1.2, 1e-15));
  CHECK_THAT(b.frequencies(1), WithinAbs(0.8, 1e-15));
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2d expected;
  expected << s, s, s, -s;
  CHECK((b.basis - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(orthogonality_error(b.basis) < 1e-12);
  CHECK_THAT(b.drive_weights(0), WithinAbs(s, 1e-15));
  CHECK_THAT(b.drive_weights(1), WithinAbs(s, 1e-15));
  CHECK_FALSE(b.qubit_coupling);

  const SupermodeBasis d = basic_supermodes(1.0, 0.0);
  CHECK(d.frequencies(0) == 1.0);
  CHECK(d.frequencies(1) == 1.0);
}

TEST_CASE("catalyst super-modes", "[supermodes]") {
  const SupermodeBasis eq = catalyst_supermodes(1.0, 0.2, 0.2);
  const double s = 1.0 / std::sqrt(2.0);
  REQUIRE(eq.qubit_coupling);
  CHECK_THAT(*eq.qubit_coupling, WithinAbs(0.2 * std::sqrt(2.0), 1e-15));
  CHECK_THAT(eq.drive_weights(0), WithinAbs(s, 1e-15));
  CHECK_THAT(eq.drive_weights(1), WithinAbs(s, 1e-15));
  CHECK(eq.frequencies(0) == 1.0);
  CHECK(eq.frequencies(1) == 1.0);

  // 3-4-5 triangle: sin = 0.6, cos = 0.8, |g| = 0.5.
  const SupermodeBasis t = catalyst_supermodes(1.0, 0.3, 0.4);
  CHECK_THAT(*t.qubit_coupling, WithinAbs(0.5, 1e-15));
  CHECK_THAT(t.basis(0, 0), WithinAbs(0.6, 1e-15));
  CHECK_THAT(t.basis(0, 1), WithinAbs(0.8, 1e-15));
  CHECK_THAT(t.basis(1, 0), WithinAbs(0.8, 1e-15));
  CHECK_THAT(t.basis(1, 1), WithinAbs(-0.6, 1e-15));

  const SupermodeBasis nb = catalyst_supermodes(1.0, 0.2, 0.0);
  CHECK(nb.basis(0, 0) == 1.0);
  CHECK(nb.basis(0, 1) == 0.0);
  CHECK(std::abs(nb.basis(1, 1)) == 1.0);
  CHECK(nb.basis(1, 0) == 0.0);

  CHECK_THROWS_AS(catalyst_supermodes(1.0, 0.0, 0.0), ModelError);
}

TEST_CASE("Bogoliubov basis examples", "[supermodes]") {
  const std::vector<double> unit{1.0, 0.0, 0.0, 0.0};
  const SupermodeBasis id = bogoliubov_basis(1.0, unit);
  CHECK((id.basis - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(id.drive_weights(0) == 1.0);
  CHECK(id.drive_weights.tail(3).cwiseAbs().maxCoeff() == 0.0);

  const std::vector<double> ones{1.0, 1.0, 1.0};
  const SupermodeBasis b = bogoliubov_basis(1.0, ones);
  CHECK_THAT(b.drive_weights(0), WithinAbs(1.0 / std::sqrt(3.0), 1e-15));
  CHECK_THAT(b.drive_weights.squaredNorm(), WithinAbs(1.0, 1e-12));
  CHECK(orthogonality_error(b.basis) < 1e-12);
  CHECK_THAT(*b.qubit_coupling, WithinAbs(std::sqrt(3.0), 1e-15));
  // Hand Gram-Schmidt: e_0 minus its projection on (1,1,1)/r3 is (2,-1,-1)/3,
  // normalized to (2,-1,-1)/r6.
  CHECK_THAT(b.basis(1, 0), WithinAbs(2.0 / std::sqrt(6.0), 1e-15));
  CHECK_THAT(b.basis(1, 1), WithinAbs(-1.0 / std::sqrt(6.0), 1e-15));

  const std::vector<double> zero{0.0, 0.0};
  CHECK_THROWS_AS(bogoliubov_basis(1.0, zero), ModelError);
  const std::vector<double> single{1.0};
  CHECK_THROWS_AS(bogoliubov_basis(1.0, single), ModelError);
}

TEST_CASE("Bogoliubov basis agrees with the catalyst rotation at k = 1", "[supermodes][property]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double ga = u(rng);
    const double gb = u(rng) + 1e-3;
    const std::vector<double> g{ga, gb};
    const SupermodeBasis bog = bogoliubov_basis(1.0, g);
    const SupermodeBasis cat = catalyst_supermodes(1.0, ga, gb);
    CHECK((bog.basis.cwiseAbs() - cat.basis.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK_THAT(*bog.qubit_coupling, WithinAbs(*cat.qubit_coupling, 1e-15));
    CHECK((bog.drive_weights.cwiseAbs() - cat.drive_weights.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("random Bogoliubov bases are orthogonal with chi as the first column",
          "[supermodes][property]") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> kdist(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> g(static_cast<std::size_t>(kdist(rng) + 1));
    for (double& x : g) x = std::abs(u(rng));
    const SupermodeBasis b = bogoliubov_basis(1.0, g);
    CHECK(orthogonality_error(b.basis) < 1e-12);
    CHECK((b.drive_weights - b.basis.col(0)).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THAT(b.drive_weights.squaredNorm(), WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("Gram-Schmidt skips dependent candidates", "[supermodes]") {
  // Row 0 is e_1, so candidate e_1 leaves a zero residual and is skipped.
  const std::vector<double> g{0.0, 1.0, 0.0};
  const SupermodeBasis b = bogoliubov_basis(1.0, g);
  Eigen::Matrix3d expected;
  expected << 0, 1, 0, 1, 0, 0, 0, 0, 1;
  CHECK((b.basis - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("resonance report", "[supermodes]") {
  const SupermodeBasis b = basic_supermodes(1.0, 0.2);
  const auto plus = resonance_report(b, 1.2);
  CHECK(plus[0].resonant);
  CHECK_FALSE(plus[1].resonant);
  CHECK_THAT(plus[1].detuning, WithinAbs(-0.4, 1e-15));

  const auto none = resonance_report(b, 1.0);
  CHECK_FALSE(none[0].resonant);
  CHECK_FALSE(none[1].resonant);
  CHECK_THAT(none[0].detuning, WithinAbs(0.2, 1e-15));
  CHECK_THAT(none[1].detuning, WithinAbs(-0.2, 1e-15));
  CHECK(none[0].driven);

  const auto cat = resonance_report(catalyst_supermodes(1.0, 0.2, 0.2), 1.0);
  CHECK(cat[1].resonant);
  CHECK_FALSE(cat[1].qubit_coupled);
  CHECK(cat[0].qubit_coupled);

  const std::vector<double> unit{1.0, 0.0};
  const auto dark = resonance_report(bogoliubov_basis(1.0, unit), 1.0);
  CHECK_FALSE(dark[1].driven);
  CHECK_FALSE(dark[1].resonant);
}

TEST_CASE("super-mode Hamiltonian reproduces the generator", "[supermodes][property]") {
  SECTION("catalyst") {
    CatalystModelParams p;
    p.charger_cutoff = 4;
    p.battery_cutoff = 4;
    p.decay_rate = 0.0;
    p.charger_qubit_coupling = 0.3;
    p.battery_qubit_coupling = 0.4;
    p.qubit_frequency = 0.9;
    p.drive_frequency = 1.05;
    const Generator gen = build_catalyst(p);
    const SupermodeBasis b = catalyst_supermodes(p.oscillator_frequency, 0.3, 0.4);
    const Operator h = supermode_hamiltonian(gen, b, p.qubit_frequency, p.drive_frequency,
                                             p.drive_amplitude);
    CHECK(max_abs(h.matrix() - gen.h_static.matrix()) < 1e-10);
  }
  SECTION("k-cell") {
    KCellModelParams p;
    p.couplings = {0.2, 0.1, 0.15};
    p.cutoffs = {3, 3, 3};
    p.qubit_frequency = 1.1;
    const Generator gen = build_kcell(p);
    const SupermodeBasis b = bogoliubov_basis(p.oscillator_frequency, p.couplings);
    const Operator h = supermode_hamiltonian(gen, b, p.qubit_frequency, p.drive_frequency,
                                             p.drive_amplitude);
    CHECK(max_abs(h.matrix() - gen.h_static.matrix()) < 1e-10);
  }
}
