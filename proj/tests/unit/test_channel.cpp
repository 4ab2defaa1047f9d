// Copyright 2026 The relqi Authors
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

#include <gtest/gtest.h>

#include "relqi/channel.hpp"
#include "relqi/errors.hpp"
#include "relqi/random.hpp"
#include "support.hpp"

namespace relqi {
namespace {

Vector ket2(cplx a, cplx b) {
  Vector v(2);
  v << a, b;
  return v;
}

Matrix proj(const Vector& v) { return v * v.adjoint(); }

// Random channel from the first columns of a Haar unitary on d * k.
KrausSet random_channel(int d, int k, std::uint64_t seed) {
  auto eng = rng::engine_for(seed, 0);
  const Matrix u = rng::haar_unitary(d * k, eng);
  std::vector<Matrix> kraus;
  for (int m = 0; m < k; ++m) {
    Matrix a(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) = u(i * k + m, j * k);
    kraus.push_back(a);
  }
  return KrausSet::channel(kraus, 1e-10);
}

// Random local two-outcome instrument on a qubit: U then Z-basis projection.
KrausSet random_instrument(std::uint64_t seed) {
  auto eng = rng::engine_for(seed, 1);
  const Matrix u = rng::haar_unitary(2, eng);
  return KrausSet(2, 2, {{proj(ket2(1, 0)) * u}, {proj(ket2(0, 1)) * u}});
}

TEST(KrausSet, ValidatesShapeAndCompleteness) {
  EXPECT_THROW(KrausSet(2, 2, {{Matrix::Identity(3, 3)}}), StructuralError);
  EXPECT_THROW(KrausSet(2, 2, {{0.5 * pauli::identity()}}), ValidationError);
  EXPECT_NO_THROW(KrausSet(2, 2, {{0.5 * pauli::identity()}}, true));
  EXPECT_THROW(KrausSet(2, 2, {{2.0 * pauli::identity()}}, true), ValidationError);
  EXPECT_THROW(KrausSet(2, 2, {}), StructuralError);
}

TEST(Apply, ProbabilitiesAndPostStates) {
  const auto k = KrausSet::projective({proj(ket2(1, 0)), proj(ket2(0, 1))});
  const double r = 1 / std::sqrt(2.0);
  const auto plus = DensityMatrix::from_pure(PureState(ket2(r, r)));
  const auto out = apply(k, plus);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_NEAR(out[0].probability, 0.5, 1e-15);
  EXPECT_NEAR(out[1].probability, 0.5, 1e-15);
  EXPECT_LT(testing::max_abs_diff(out[0].state->matrix(), proj(ket2(1, 0))), 1e-15);

  const auto zero = DensityMatrix::from_pure(PureState::basis(2, 0));
  const auto out0 = apply(k, zero);
  EXPECT_TRUE(out0[1].numerically_empty);
  EXPECT_FALSE(out0[1].state.has_value());
  EXPECT_THROW(apply(k, DensityMatrix::maximally_mixed(3)), StructuralError);
}

TEST(Povm, FromKrausAndValidation) {
  const auto p = povm_of(depolarizing_channel(0.3));
  ASSERT_EQ(p.elements().size(), 1u);
  EXPECT_LT(testing::max_abs_diff(p.elements()[0], Matrix::Identity(2, 2)), 1e-14);
  EXPECT_THROW(Povm(2, {0.5 * pauli::identity()}), ValidationError);
  EXPECT_THROW(Povm(2, {pauli::z(), pauli::identity() - pauli::z()}), ValidationError);
}

TEST(KrausFromUnitary, CnotCouplingGivesVonNeumannMeasurement) {
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  const auto k = kraus_from_unitary(cnot, PureState::basis(2, 0), {{ket2(1, 0)}, {ket2(0, 1)}});
  ASSERT_EQ(k.outcome_count(), 2u);
  EXPECT_LT(testing::max_abs_diff(k.outcome(0)[0], proj(ket2(1, 0))), 1e-15);
  EXPECT_LT(testing::max_abs_diff(k.outcome(1)[0], proj(ket2(0, 1))), 1e-15);
}

TEST(KrausFromUnitary, RejectsBadInputs) {
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  const auto init = PureState::basis(2, 0);
  EXPECT_THROW(kraus_from_unitary(2.0 * cnot, init, {{ket2(1, 0)}, {ket2(0, 1)}}), ValidationError);
  EXPECT_THROW(kraus_from_unitary(cnot, init, {{ket2(1, 0)}}), ValidationError);
  const double r = 1 / std::sqrt(2.0);
  EXPECT_THROW(kraus_from_unitary(cnot, init, {{ket2(1, 0)}, {ket2(r, r)}}), ValidationError);
  EXPECT_THROW(kraus_from_unitary(Matrix::Identity(3, 3), init, {{ket2(1, 0)}, {ket2(0, 1)}}), StructuralError);
}

TEST(Choi, TransposeMapIsNotCompletelyPositive) {
  const auto c = choi_and_cp_check(transpose_map(2));
  EXPECT_FALSE(c.is_cp);
  EXPECT_NEAR(c.min_eig, -0.5, 1e-10);
  // For d = 3 the normalized swap has smallest eigenvalue -1/3.
  EXPECT_NEAR(choi_and_cp_check(transpose_map(3)).min_eig, -1.0 / 3.0, 1e-10);
}

TEST(Choi, KrausChannelsCertifyCompletelyPositive) {
  EXPECT_TRUE(choi_and_cp_check(depolarizing_channel(0.7)).is_cp);
  for (int trial = 0; trial < 30; ++trial) {
    const auto k = random_channel(2 + trial % 3, 1 + trial % 4, 100 + trial);
    const auto c = choi_and_cp_check(k);
    EXPECT_TRUE(c.is_cp);
    EXPECT_GE(c.min_eig, -1e-12);
  }
}

TEST(Choi, IdentityChannelIsMaximallyEntangledProjector) {
  const auto c = choi_and_cp_check(KrausSet::channel({pauli::identity()}));
  EXPECT_LT(testing::max_abs_diff(c.choi, 2.0 * proj(bell::phi_plus())), 1e-15);
}

TEST(Choi, RejectsNonlinearMaps) {
  const LinearMap square{2, 2, [](const Matrix& m) -> Matrix { return m * m; }};
  EXPECT_THROW(choi_and_cp_check(square), ValidationError);
  const LinearMap wrong{2, 3, [](const Matrix& m) -> Matrix { return m; }};
  EXPECT_THROW(choi_and_cp_check(wrong), StructuralError);
}

TEST(Depolarizing, RejectsOutOfRange) {
  EXPECT_THROW(depolarizing_channel(-0.1), ValidationError);
  EXPECT_THROW(depolarizing_channel(1.1), ValidationError);
}

TEST(NoSignalling, LocalInstrumentsNeverShiftRemoteMarginals) {
  for (int trial = 0; trial < 20; ++trial) {
    auto eng = rng::engine_for(200, trial);
    const auto rho = rng::random_density(4, eng);
    const auto report = verify_no_signalling(random_instrument(300 + trial), random_instrument(400 + trial), rho, 10,
                                             500 + trial);
    EXPECT_LT(report.max_marginal_shift, 1e-12);
    EXPECT_EQ(report.states_tested, 11);
  }
}

TEST(FrameOrder, CommutingLocalKrausSetsGiveSameFinalStates) {
  for (int trial = 0; trial < 20; ++trial) {
    auto eng = rng::engine_for(600, trial);
    const auto rho = rng::random_density(4, eng);
    const auto a = random_instrument(700 + trial).embed(2, 0);
    const auto b = random_instrument(800 + trial).embed(2, 1);
    const auto ab = sequential_outcomes(a, b, rho.matrix());
    const auto ba = sequential_outcomes(b, a, rho.matrix());
    for (const auto& [key, state] : ab)
      EXPECT_LT(testing::max_abs_diff(state, ba.at({key.second, key.first})), 1e-12);
  }
}

TEST(Semicausal, IncompleteBellMeasurementLetsBobSignal) {
  const auto t = incomplete_bell_measurement();
  const auto s00 = DensityMatrix::from_pure(PureState::basis(4, 0));
  const auto s01 = DensityMatrix::from_pure(PureState::basis(4, 1));
  // Alice's marginals are |0><0| and I/2, so 1 - P_E = 1/2 + tr|diag(1/2,-1/2)|/4.
  const auto m01 = receiver_marginal(t, s01.matrix(), Direction::b_to_a);
  const auto m00 = receiver_marginal(t, s00.matrix(), Direction::b_to_a);
  EXPECT_LT(testing::max_abs_diff(m01.matrix(), proj(ket2(1, 0))), 1e-15);
  EXPECT_LT(testing::max_abs_diff(m00.matrix(), 0.5 * pauli::identity()), 1e-15);
  EXPECT_NEAR(marginal_distinguishability(t, s01, s00, Direction::b_to_a), 0.75, 1e-9);

  const auto probes = default_probe_states(2, 2, 5, 1);
  const auto v = is_semicausal(t, Direction::b_to_a, probes);
  EXPECT_FALSE(v.semicausal);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_GE(v.witness->advantage, 0.75 - 1e-9);
}

TEST(Semicausal, CompleteBellMeasurementIsCausalBothWays) {
  const auto t = complete_bell_measurement();
  const auto probes = default_probe_states(2, 2, 20, 2);
  for (Direction d : {Direction::b_to_a, Direction::a_to_b}) {
    const auto v = is_semicausal(t, d, probes);
    EXPECT_TRUE(v.semicausal);
    EXPECT_LT(v.max_shift, 1e-12);
    EXPECT_GT(v.trials, 1000);
  }
}

TEST(Semicausal, ProductBasisMeasurementIsOneWay) {
  const auto t = product_basis_pvm();
  const auto probes = default_probe_states(2, 2, 10, 3);
  EXPECT_TRUE(is_semicausal(t, Direction::b_to_a, probes).semicausal);
  EXPECT_FALSE(is_semicausal(t, Direction::a_to_b, probes).semicausal);
}

TEST(Semicausal, RejectsMismatchedProbes) {
  const auto probes = std::vector<DensityMatrix>{DensityMatrix::maximally_mixed(3)};
  EXPECT_THROW(is_semicausal(complete_bell_measurement(), Direction::b_to_a, probes), StructuralError);
}

TEST(Locc, ProtocolReproducesProductBasisPvm) {
  const auto pvm = product_basis_pvm();
  const auto povm = povm_of(pvm.op);
  const auto protocol = product_basis_protocol();
  for (int trial = 0; trial < 50; ++trial) {
    auto eng = rng::engine_for(900, trial);
    const auto rho = rng::random_density(4, eng);
    const auto global = povm.probabilities(rho);
    const auto local = simulate_locc_protocol(protocol, rho);
    double tv = 0.0;
    for (const auto& [record, p] : local) tv += std::abs(p - global.at(2 * record[0] + record[1]));
    EXPECT_LT(0.5 * tv, 1e-12);
  }
}

TEST(Locc, RejectsMalformedConditioning) {
  auto protocol = product_basis_protocol();
  protocol.steps[1].conditioned_on = 1;
  EXPECT_THROW(simulate_locc_protocol(protocol, DensityMatrix::maximally_mixed(4)), StructuralError);
  protocol = product_basis_protocol();
  protocol.steps[1].instruments.pop_back();
  EXPECT_THROW(simulate_locc_protocol(protocol, DensityMatrix::maximally_mixed(4)), StructuralError);
  protocol = product_basis_protocol();
  protocol.steps[0].instruments.push_back(protocol.steps[0].instruments[0]);
  EXPECT_THROW(simulate_locc_protocol(protocol, DensityMatrix::maximally_mixed(4)), StructuralError);
}

TEST(Teleport, IdentityHoldsWithExplicitBranchPhases) {
  // |psi>|Psi-> = 1/2 [-|Psi->psi - i|Psi+> Rz psi + i|Phi-> Rx psi + |Phi+> Ry psi]
  const cplx i(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto eng = rng::engine_for(1000, trial);
    const Vector psi = rng::haar_state(2, eng).amplitudes();
    const Vector lhs = kron(psi, bell::psi_minus());
    Vector rhs = Vector::Zero(8);
    auto add = [&](const Vector& bell_state, const Vector& bob, cplx c) {
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 2; ++b) rhs(2 * a + b) += 0.5 * c * bell_state(a) * bob(b);
    };
    add(bell::psi_minus(), psi, -1.0);
    add(bell::psi_plus(), pi_rotation('z') * psi, -i);
    add(bell::phi_minus(), pi_rotation('x') * psi, i);
    add(bell::phi_plus(), pi_rotation('y') * psi, 1.0);
    // Qubit order in lhs is (psi, pair); reorder rhs (pair01, bob) to match:
    // both are indexed as 4 * q0 + 2 * q1 + q2 with q0 the input qubit.
    EXPECT_LT((lhs - rhs).norm(), 1e-14);
    EXPECT_LT(teleport_identity_residual(psi(0), psi(1)), 1e-12);
  }
}

TEST(Teleport, EndToEndFidelityAndProbabilities) {
  for (int trial = 0; trial < 100; ++trial) {
    auto eng = rng::engine_for(1100, trial);
    const Vector psi = rng::haar_state(2, eng).amplitudes();
    const auto r = teleport(psi(0), psi(1));
    EXPECT_NEAR(r.min_fidelity, 1.0, 1e-12);
    for (double p : r.probabilities) EXPECT_NEAR(p, 0.25, 1e-12);
  }
  EXPECT_THROW(teleport(1.0, 1.0), ValidationError);
  EXPECT_THROW(pi_rotation('w'), StructuralError);
}

TEST(Chsh, SingletReachesTsirelsonBound) {
  const auto singlet = DensityMatrix::from_pure(PureState(bell::psi_minus()));
  const double r = 1 / std::sqrt(2.0);
  const Matrix b1 = -r * (pauli::z() + pauli::x());
  const Matrix b2 = -r * (pauli::z() - pauli::x());
  EXPECT_NEAR(chsh_value(singlet, pauli::z(), pauli::x(), b1, b2), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(chsh_optimize(singlet).zeta, std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(chsh_optimize(singlet, ChshStrategy::grid).zeta, std::sqrt(2.0), 1e-6);
}

TEST(Chsh, RejectsNonDichotomicObservables) {
  const auto s = DensityMatrix::maximally_mixed(4);
  EXPECT_THROW(chsh_value(s, 2.0 * pauli::z(), pauli::x(), pauli::x(), pauli::z()), ValidationError);
  EXPECT_THROW(chsh_value(DensityMatrix::maximally_mixed(2), pauli::z(), pauli::x(), pauli::x(), pauli::z()),
               StructuralError);
}

TEST(Chsh, OptimumReproducedByDirectTraces) {
  for (int trial = 0; trial < 30; ++trial) {
    auto eng = rng::engine_for(1200, trial);
    const auto rho = rng::random_density(4, eng, 1 + trial % 4);
    const auto opt = chsh_optimize(rho);
    const auto& s = opt.settings;
    EXPECT_NEAR(chsh_value(rho, bloch_observable(s.a1), bloch_observable(s.a2), bloch_observable(s.b1),
                           bloch_observable(s.b2)),
                opt.zeta, 1e-12);
    // The grid search can only approach the optimum from below.
    const auto grid = chsh_optimize(rho, ChshStrategy::grid);
    EXPECT_LE(grid.zeta, opt.zeta + 1e-9);
    EXPECT_GE(grid.zeta, opt.zeta - 1e-4);
    // No random settings beat it.
    auto g = testing::seeded(1300 + trial);
    for (int k = 0; k < 200; ++k) {
      const double v = chsh_value(rho, bloch_observable(testing::random_unit(g)), bloch_observable(testing::random_unit(g)),
                                  bloch_observable(testing::random_unit(g)), bloch_observable(testing::random_unit(g)));
      EXPECT_LE(v, opt.zeta + 1e-12);
    }
  }
}

TEST(Chsh, ProductStatesRespectClassicalBound) {
  for (int trial = 0; trial < 100; ++trial) {
    auto eng = rng::engine_for(1400, trial);
    const auto rho = rng::random_density(2, eng).tensor(rng::random_density(2, eng));
    EXPECT_LE(chsh_optimize(rho).zeta, 1.0 + 1e-9);
  }
}

TEST(Chsh, ClusterBound) {
  EXPECT_DOUBLE_EQ(cluster_chsh_bound(1.0, 0.0), 5.0);
  EXPECT_NEAR(cluster_chsh_bound(2.0, 3.0), 1.0 + 4.0 * std::exp(-6.0), 1e-15);
  EXPECT_NEAR(cluster_chsh_bound(1.0, 50.0), 1.0, 1e-20);
  EXPECT_THROW(cluster_chsh_bound(-1.0, 1.0), ValidationError);
}

}  // namespace
}  // namespace relqi
