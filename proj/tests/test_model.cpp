// Copyright 2026 The frqme-transport Authors
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

#include "frqme/frqme.hpp"
#include "frqme/model.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

using namespace frqme;

namespace {

ChainSpec fig2_chain() {
  ChainSpec c;
  c.larmor = {2 * PI * 1e7, 2 * PI * 1e6, 2 * PI * 5e5};
  c.couplings = {{0, 1, 1.5e5}, {1, 2, 1.5e5}, {0, 2, 1.5e5}};
  return c;
}

Operator reconstruct(const std::vector<HarmonicComponent>& comps, Eigen::Index d) {
  Operator h = Operator::Zero(d, d);
  for (const auto& c : comps) h += c.op + c.op.adjoint();
  return h;
}

}  // namespace

TEST(Chain, ValidateRejectsBadPairs) {
  ChainSpec c;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.larmor = {1.0, 2.0};
  c.couplings = {{0, 0, 1.0}};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.couplings = {{0, 2, 1.0}};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.couplings = {{0, 1, -1.0}};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.couplings = {{1, 0, 3.0}};
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.coupling_hz(0, 1), 3.0);
}

TEST(Bath, KappaConsistency) {
  const auto b = BathSpec::from_kappa(1.0, 2.0);
  EXPECT_DOUBLE_EQ(b.tau_c, 0.5);
  EXPECT_NO_THROW(b.validate());
  BathSpec bad = b;
  bad.tau_c = 0.6;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  BathSpec zero;
  zero.tau_c = 0.0;
  EXPECT_THROW(zero.validate(), std::invalid_argument);
}

TEST(Bath, TimescaleWarnings) {
  BathSpec b;
  b.omega_se = 2 * PI * 1e5;
  b.tau_c = 1.0 / (2 * PI * 1e6);
  EXPECT_TRUE(timescale_warnings(b, 2 * PI * 1e5).empty());
  EXPECT_EQ(timescale_warnings(b, 2 * PI * 1e7).size(), 1u);
  b.tau_c = 1e-4;
  EXPECT_EQ(timescale_warnings(b, 2 * PI * 1e7).size(), 2u);
}

TEST(Zeeman, SingleSpin) {
  ChainSpec c;
  c.larmor = {2 * PI * 1e7};
  const Operator h = zeeman_hamiltonian(c);
  EXPECT_NEAR(h(0, 0).real(), PI * 1e7, 1e-6);
  EXPECT_NEAR(h(1, 1).real(), -PI * 1e7, 1e-6);
}

TEST(Zeeman, EqualLarmorDegenerate) {
  ChainSpec c;
  c.larmor = {5.0, 5.0};
  const Operator h = zeeman_hamiltonian(c);
  EXPECT_DOUBLE_EQ(h(1, 1).real(), h(2, 2).real());
}

TEST(Zeeman, Fig2LargestEntryOnAllUp) {
  const ChainSpec c = fig2_chain();
  const Operator h = zeeman_hamiltonian(c);
  const double expect = 0.5 * (c.larmor[0] + c.larmor[1] + c.larmor[2]);
  EXPECT_NEAR(h(0, 0).real(), expect, 1e-6);
  for (int i = 1; i < 8; ++i) EXPECT_LT(h(i, i).real(), h(0, 0).real());
  EXPECT_TRUE(is_hermitian(h));
}

TEST(Dipolar, IsingEigenvalues) {
  const double J = 1.5e5;
  const Operator h = dipolar_hamiltonian(0, 1, J, SecularKind::IsingOnly, 2);
  const double q = PI * J / 2;
  EXPECT_NEAR(h(0, 0).real(), q, 1e-9);
  EXPECT_NEAR(h(1, 1).real(), -q, 1e-9);
  EXPECT_NEAR(h(2, 2).real(), -q, 1e-9);
  EXPECT_NEAR(h(3, 3).real(), q, 1e-9);
  const Operator off = h - Operator(h.diagonal().asDiagonal());
  EXPECT_EQ(max_norm(off), 0.0);
}

TEST(Dipolar, ZeroQuantumSingletEigenstate) {
  const Operator h = dipolar_hamiltonian(0, 1, 2.0e3, SecularKind::ZeroQuantum, 2);
  const Vector psi = (basis_ket({1, 0}) - basis_ket({0, 1})) / std::sqrt(2.0);
  const Vector hp = h * psi;
  const cplx ev = psi.dot(hp);
  EXPECT_LT((hp - ev * psi).norm(), 1e-9);
  EXPECT_EQ(max_norm(dipolar_hamiltonian(0, 1, 0.0, SecularKind::ZeroQuantum, 2)), 0.0);
}

TEST(Dipolar, ZeroQuantumConservesMagnetization) {
  const auto s = spin_half_ops();
  Operator iz = Operator::Zero(8, 8);
  for (std::size_t k = 0; k < 3; ++k) iz += embed(s.Iz, k, 3);
  for (auto [a, b] : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 2}, {0, 2}}) {
    const Operator h = dipolar_hamiltonian(a, b, 1.3e4, SecularKind::ZeroQuantum, 3);
    EXPECT_LT(max_norm(commutator(h, iz)), 1e-9);
    EXPECT_TRUE(is_hermitian(h));
  }
}

TEST(Dipolar, RejectsInvalid) {
  EXPECT_THROW(dipolar_hamiltonian(0, 0, 1.0, SecularKind::IsingOnly, 2), std::invalid_argument);
  EXPECT_THROW(dipolar_hamiltonian(0, 1, 1.0, SecularKind::Auto, 2), std::invalid_argument);
  EXPECT_THROW(dipolar_hamiltonian(0, 1, -1.0, SecularKind::IsingOnly, 2), std::invalid_argument);
}

TEST(Drive, ResonantPhaseZeroGivesIx) {
  ChainSpec c;
  c.larmor = {1e6};
  const double w1 = 2 * PI * 1.5e5;
  const auto comps = drive_hamiltonian(DriveSpec{w1, std::nullopt, 0.0, {0}}, c);
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_EQ(comps[0].freq, 0.0);
  EXPECT_LT(max_norm(reconstruct(comps, 2) - w1 * spin_half_ops().Ix), 1e-9);
}

TEST(Drive, PhaseQuarterTurnGivesIy) {
  ChainSpec c;
  c.larmor = {1e6};
  const auto comps = drive_hamiltonian(DriveSpec{3.0, std::nullopt, PI / 2, {0}}, c);
  EXPECT_LT(max_norm(reconstruct(comps, 2) - 3.0 * spin_half_ops().Iy), 1e-14);
}

TEST(Drive, ZeroAmplitudeIsEmpty) {
  ChainSpec c;
  c.larmor = {1e6, 2e6};
  EXPECT_TRUE(drive_hamiltonian(DriveSpec{0.0, 1.5e6, 0.0, {0, 1}}, c).empty());
}

TEST(Drive, DetuningSetsComponentFrequency) {
  ChainSpec c;
  c.larmor = {1e6, 3e6};
  const auto comps = drive_hamiltonian(DriveSpec{1.0, 1e6, 0.0, {0, 1}}, c);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0].freq, 0.0);
  EXPECT_EQ(comps[1].freq, 2e6);
  EXPECT_THROW(drive_hamiltonian(DriveSpec{1.0, 1e6, 0.0, {2}}, c), std::out_of_range);
}

TEST(SystemEnv, ZeroStrengthIsEmpty) {
  const ChainSpec c = fig2_chain();
  BathSpec b;
  EXPECT_TRUE(system_env_coupling(c, b).empty());
}

TEST(SystemEnv, NoFirstOrderContribution) {
  ChainSpec c;
  c.larmor = {1e6};
  BathSpec b;
  b.omega_se = 2 * PI * 1e5;
  b.tau_c = 1e-7;
  GeneratorSpec g;
  g.components = system_env_coupling(c, b);
  g.static_h = Operator::Zero(2, 2);
  g.bath = b;
  EXPECT_EQ(max_norm(secular_hamiltonian(g)), 0.0);
}

TEST(SystemEnv, ContractionMatchesExplicitEnvironment) {
  ChainSpec c;
  c.larmor = {1e6};
  BathSpec b;
  b.omega_se = 2 * PI * 1e5;
  b.tau_c = 1e-7;
  GeneratorSpec g;
  g.components = system_env_coupling(c, b);
  g.static_h = Operator::Zero(2, 2);
  g.bath = b;
  g.secular_cutoff = 1e6;
  const auto s = spin_half_ops();
  const oracle::Mat sminus = s.Iminus;
  const auto ref = oracle::brute_force_second_order({{0.5 * b.omega_se * s.Iplus, 0.0, sminus}}, b.tau_c, 1e6);
  const Superoperator got = second_order_dissipator(g);
  EXPECT_LT(max_norm(got - ref) / max_norm(ref), 1e-4);
  // equal-weight raising and lowering: the fixed point is the maximally mixed state
  EXPECT_LT(max_norm(frqme::apply(got, 0.5 * identity(2))), 1e-9 * max_norm(ref));
  const Operator up = projector(basis_ket({0}));
  const Operator down = projector(basis_ket({1}));
  EXPECT_NEAR(frqme::apply(got, up)(0, 0).real(), frqme::apply(got, down)(1, 1).real(), 1e-9 * max_norm(ref));
}

TEST(SystemEnv, ComponentsReconstructHermitianCoupling) {
  const ChainSpec c = fig2_chain();
  BathSpec b;
  b.omega_se = 7.0;
  const auto comps = system_env_coupling(c, b);
  ASSERT_EQ(comps.size(), 3u);
  for (const auto& comp : comps) {
    EXPECT_EQ(comp.env.kind, EnvFactor::Kind::SMinus);
    EXPECT_EQ(env_contraction(comp.env, comp.env.adjoint()), 0.5);
    EXPECT_EQ(env_contraction(comp.env, comp.env), 0.0);
  }
  EXPECT_EQ(env_contraction(comps[0].env, comps[1].env.adjoint()), 0.0);
}

TEST(Secular, EqualLarmorIsZeroQuantum) {
  ChainSpec c;
  c.larmor = {3.0, 3.0};
  for (double dt : {1e-9, 1.0, 1e9})
    EXPECT_EQ(resolve_secular_mode({SecularKind::Auto, dt}, 0, 1, c), SecularKind::ZeroQuantum);
}

TEST(Secular, Fig2PairIsIsing) {
  EXPECT_EQ(resolve_secular_mode({SecularKind::Auto, 1e-5}, 0, 1, fig2_chain()), SecularKind::IsingOnly);
}

TEST(Secular, BoundaryGoesToIsing) {
  ChainSpec c;
  c.larmor = {0.0, 4.0};
  EXPECT_EQ(resolve_secular_mode({SecularKind::Auto, 0.25}, 0, 1, c), SecularKind::IsingOnly);
  EXPECT_EQ(resolve_secular_mode({SecularKind::Auto, 0.2499}, 0, 1, c), SecularKind::ZeroQuantum);
}

TEST(Secular, ExplicitModesPassThrough) {
  ChainSpec c;
  c.larmor = {3.0, 3.0};
  EXPECT_EQ(resolve_secular_mode({SecularKind::IsingOnly, 1.0}, 0, 1, c), SecularKind::IsingOnly);
  EXPECT_EQ(secular_kind_from_string("ZeroQuantum"), SecularKind::ZeroQuantum);
  EXPECT_THROW(secular_kind_from_string("bogus"), std::invalid_argument);
}

TEST(Secular, DefaultDtIsGeometricMean) {
  const double tc = 1e-8, w1 = 2e6, wse = 1e6;
  EXPECT_DOUBLE_EQ(default_coarse_grain_dt(tc, w1, wse), std::sqrt(tc * (1.0 / w1)));
  const double dt = default_coarse_grain_dt(tc, w1, wse);
  EXPECT_GT(dt, tc);
  EXPECT_LT(dt, 1.0 / w1);
}

TEST(Coupling, ChainHamiltonianIsHermitianAndSumsPairs) {
  const ChainSpec c = fig2_chain();
  const auto modes = resolve_all({SecularKind::Auto, 1e-5}, c);
  const Operator h = coupling_hamiltonian(c, modes);
  EXPECT_TRUE(is_hermitian(h));
  Operator sum = Operator::Zero(8, 8);
  for (const auto& cp : c.couplings) sum += dipolar_hamiltonian(cp.a, cp.b, cp.J_hz, SecularKind::IsingOnly, 3);
  EXPECT_LT(max_norm(h - sum), 1e-9);
}
