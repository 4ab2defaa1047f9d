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

#include "relqi/errors.hpp"
#include "relqi/qstate.hpp"
#include "relqi/random.hpp"
#include "support.hpp"

namespace relqi {
namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// Reference partial trace by explicit index loops over three qubits,
// keeping factors 0 and 2.
Matrix trace_middle_qubit(const Matrix& rho) {
  Matrix out = Matrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int c2 = 0; c2 < 2; ++c2)
          for (int b = 0; b < 2; ++b) out(2 * a + c, 2 * a2 + c2) += rho(4 * a + 2 * b + c, 4 * a2 + 2 * b + c2);
  return out;
}

TEST(PureState, RejectsUnnormalizedAmplitudes) {
  Vector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(PureState{v}, ValidationError);
  EXPECT_NO_THROW(PureState::normalized(v));
  EXPECT_THROW(PureState(Vector(0)), StructuralError);
}

TEST(DensityMatrix, ValidatesHermiticityTraceAndPositivity) {
  Matrix m = diag2(0.5, 0.5);
  m(0, 1) = 0.2;
  EXPECT_THROW(DensityMatrix{m}, ValidationError);
  EXPECT_THROW(DensityMatrix{diag2(0.6, 0.6)}, ValidationError);
  EXPECT_THROW(DensityMatrix{diag2(1.2, -0.2)}, ValidationError);
  EXPECT_THROW(DensityMatrix{Matrix::Zero(2, 3)}, StructuralError);
  EXPECT_NO_THROW(DensityMatrix{diag2(0.25, 0.75)});
}

TEST(PartialTrace, BellStateGivesMaximallyMixedMarginal) {
  const auto rho = DensityMatrix::from_pure(PureState(bell::phi_plus()));
  const auto a = partial_trace(rho, {{2, 2}, {0}});
  EXPECT_LT(testing::max_abs_diff(a.matrix(), 0.5 * Matrix::Identity(2, 2)), 1e-15);
}

TEST(PartialTrace, ProductStateFactors) {
  auto eng = rng::engine_for(11, 0);
  const auto r1 = rng::random_density(2, eng);
  const auto r2 = rng::random_density(3, eng);
  const auto joint = r1.tensor(r2);
  EXPECT_LT(testing::max_abs_diff(partial_trace(joint, {{2, 3}, {0}}).matrix(), r1.matrix()), 1e-14);
  EXPECT_LT(testing::max_abs_diff(partial_trace(joint, {{2, 3}, {1}}).matrix(), r2.matrix()), 1e-14);
}

TEST(PartialTrace, MatchesExplicitIndexLoops) {
  for (int trial = 0; trial < 20; ++trial) {
    auto eng = rng::engine_for(12, trial);
    const auto rho = rng::random_density(8, eng);
    EXPECT_LT(testing::max_abs_diff(partial_trace(rho.matrix(), {{2, 2, 2}, {0, 2}}), trace_middle_qubit(rho.matrix())),
              1e-14);
  }
}

TEST(PartialTrace, RejectsBadSplits) {
  const auto rho = DensityMatrix::maximally_mixed(4);
  EXPECT_THROW(partial_trace(rho, {{2, 3}, {0}}), StructuralError);
  EXPECT_THROW(partial_trace(rho, {{2, 2}, {2}}), StructuralError);
  EXPECT_THROW(partial_trace(rho, {{2, 2}, {0, 0}}), StructuralError);
}

TEST(Entropy, KnownValues) {
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(4)), std::log(4.0), 1e-14);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(4), LogBase::two), 2.0, 1e-14);
  EXPECT_EQ(von_neumann_entropy(DensityMatrix::from_pure(PureState::basis(3, 1))), 0.0);
  const double p = 0.3;
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix(diag2(p, 1 - p))), -p * std::log(p) - (1 - p) * std::log(1 - p),
              1e-15);
}

TEST(ErrorProbability, KnownValues) {
  const auto zero = DensityMatrix::from_pure(PureState::basis(2, 0));
  const auto one = DensityMatrix::from_pure(PureState::basis(2, 1));
  EXPECT_DOUBLE_EQ(error_probability(zero, zero), 0.5);
  EXPECT_DOUBLE_EQ(error_probability(zero, one), 0.0);
  // tr|diag(1/2, -1/2)| = 1
  EXPECT_NEAR(error_probability(zero, DensityMatrix::maximally_mixed(2)), 0.25, 1e-15);
}

TEST(ErrorProbability, MatchesPureStateOverlapFormula) {
  // For pure states P_E = (1 - sqrt(1 - |<a|b>|^2)) / 2.
  for (int trial = 0; trial < 50; ++trial) {
    auto eng = rng::engine_for(13, trial);
    const auto a = rng::haar_state(3, eng);
    const auto b = rng::haar_state(3, eng);
    const double ov = std::norm(a.amplitudes().dot(b.amplitudes()));
    EXPECT_NEAR(error_probability(DensityMatrix::from_pure(a), DensityMatrix::from_pure(b)),
                0.5 * (1.0 - std::sqrt(1.0 - ov)), 1e-12);
  }
}

TEST(Concurrence, BellAndProductStates) {
  for (const Vector& v : {bell::phi_plus(), bell::phi_minus(), bell::psi_plus(), bell::psi_minus()})
    EXPECT_NEAR(concurrence(DensityMatrix::from_pure(PureState(v))), 1.0, 1e-7);
  auto eng = rng::engine_for(14, 0);
  const auto prod = rng::random_density(2, eng).tensor(rng::random_density(2, eng));
  EXPECT_NEAR(concurrence(prod), 0.0, 1e-7);
}

TEST(Concurrence, WernerFamily) {
  const Matrix singlet = bell::psi_minus() * bell::psi_minus().adjoint();
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    const DensityMatrix w(p * singlet + (1 - p) * Matrix::Identity(4, 4) / 4.0);
    EXPECT_NEAR(concurrence(w), std::max(0.0, (3 * p - 1) / 2), 1e-7) << "p=" << p;
  }
}

TEST(Concurrence, PureStateFormula) {
  // C = 2 |a d - b c| for a|00> + b|01> + c|10> + d|11>.
  for (int trial = 0; trial < 30; ++trial) {
    auto eng = rng::engine_for(15, trial);
    const auto psi = rng::haar_state(4, eng);
    const Vector& v = psi.amplitudes();
    EXPECT_NEAR(concurrence(DensityMatrix::from_pure(psi)), 2.0 * std::abs(v(0) * v(3) - v(1) * v(2)), 1e-6);
  }
}

TEST(SpinFlip, SingletIsInvariant) {
  const auto s = DensityMatrix::from_pure(PureState(bell::psi_minus()));
  EXPECT_LT(testing::max_abs_diff(spin_flip(s).matrix(), s.matrix()), 1e-15);
  EXPECT_THROW(spin_flip(DensityMatrix::maximally_mixed(3)), StructuralError);
}

TEST(QstateProperties, RandomStatesRespectBounds) {
  for (int trial = 0; trial < 200; ++trial) {
    auto eng = rng::engine_for(16, trial);
    const int d = 2 + trial % 4;
    const auto r1 = rng::random_density(d, eng);
    const auto r2 = rng::random_density(d, eng);
    const double s = von_neumann_entropy(r1);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, std::log(d) + 1e-12);
    const double pe = error_probability(r1, r2);
    EXPECT_GE(pe, 0.0);
    EXPECT_LE(pe, 0.5);
    EXPECT_NEAR(pe, error_probability(r2, r1), 1e-14);
    if (d == 4) {
      const double c = concurrence(r1);
      EXPECT_GE(c, 0.0);
      EXPECT_LE(c, 1.0);
      const auto marg = partial_trace(r1, {{2, 2}, {1}});
      EXPECT_NEAR(marg.matrix().trace().real(), 1.0, 1e-13);
    }
  }
}

TEST(Random, SeededDrawsAreReproducible) {
  auto e1 = rng::engine_for(99, 3);
  auto e2 = rng::engine_for(99, 3);
  EXPECT_EQ(rng::haar_unitary(3, e1), rng::haar_unitary(3, e2));
  auto e3 = rng::engine_for(99, 4);
  EXPECT_NE(rng::derive_seed(99, 3), rng::derive_seed(99, 4));
  EXPECT_TRUE(is_unitary(rng::haar_unitary(5, e3), 1e-12));
}

}  // namespace
}  // namespace relqi
