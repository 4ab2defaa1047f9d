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
#include "relqi/lorentz.hpp"
#include "support.hpp"

namespace relqi {
namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix4d eta() { return Eigen::Vector4d(1, -1, -1, -1).asDiagonal(); }

// Independently coded axis boosts by rapidity.
Eigen::Matrix4d z_boost(double r) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 0) = m(3, 3) = std::cosh(r);
  m(0, 3) = m(3, 0) = std::sinh(r);
  return m;
}

Eigen::Matrix4d x_boost(double r) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 0) = m(1, 1) = std::cosh(r);
  m(0, 1) = m(1, 0) = std::sinh(r);
  return m;
}

LorentzTransform random_transform(std::mt19937_64& g) {
  const Eigen::Vector3d v = testing::uniform(g, 0.0, 0.95) * testing::random_unit(g);
  return boost(v) * rotation(testing::random_unit(g), testing::uniform(g, 0.0, 2 * kPi));
}

FourVector random_massive(std::mt19937_64& g, double m) {
  return on_shell(testing::uniform(g, 0.0, 5.0) * testing::random_unit(g), m);
}

TEST(Lorentz, ConstructorsAndBasicValues) {
  EXPECT_EQ(boost(Eigen::Vector3d::Zero()).matrix(), Eigen::Matrix4d::Identity());
  EXPECT_LT((rotation(Eigen::Vector3d::UnitZ(), 2 * kPi).matrix() - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff(),
            1e-15);
  const FourVector p = boost(Eigen::Vector3d(0, 0, 0.6)) * FourVector(1, 0, 0, 0);
  EXPECT_NEAR(p(0), 1.25, 1e-15);
  EXPECT_NEAR(p(3), 0.75, 1e-15);
  EXPECT_EQ(p(1), 0.0);
  EXPECT_THROW(boost(Eigen::Vector3d(0, 0, 1.0)), ValidationError);
  EXPECT_THROW(rotation(Eigen::Vector3d::Zero(), 1.0), ValidationError);
  EXPECT_THROW(LorentzTransform{eta()}, ValidationError);  // improper
  EXPECT_THROW(LorentzTransform{Eigen::Matrix4d(-Eigen::Matrix4d::Identity())}, ValidationError);
}

TEST(Lorentz, GroupAxiomsOnRandomElements) {
  auto g = testing::seeded(1);
  for (int trial = 0; trial < 500; ++trial) {
    const LorentzTransform a = random_transform(g);
    const LorentzTransform b = random_transform(g);
    const LorentzTransform ab = compose(a, b);
    EXPECT_LT(ab.metric_defect(), 1e-12);
    EXPECT_LT(((a.inverse() * a).matrix() - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NO_THROW(LorentzTransform(ab.matrix()));
  }
}

TEST(Lorentz, RapidityAndVelocityConstructorsAgree) {
  const double r = 0.8;
  const auto a = boost_rapidity(Eigen::Vector3d::UnitZ(), r);
  const auto b = boost(Eigen::Vector3d(0, 0, std::tanh(r)));
  EXPECT_LT((a.matrix() - z_boost(r)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((a.matrix() - b.matrix()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(StandardBoost, MassiveExamples) {
  const double m = 1.3;
  EXPECT_LT((standard_boost_massive(FourVector(m, 0, 0, 0), m).matrix() - Eigen::Matrix4d::Identity())
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
  const double q = 2.1;
  const auto l = standard_boost_massive(on_shell(Eigen::Vector3d(0, 0, q), m), m);
  EXPECT_LT((l.matrix() - z_boost(std::asinh(q / m))).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_THROW(standard_boost_massive(FourVector(2.0, 0, 0, 0), m), ValidationError);
}

TEST(StandardBoost, MapsStandardMomentaOverSeededSamples) {
  auto g = testing::seeded(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const double m = testing::uniform(g, 0.1, 3.0);
    const FourVector p = random_massive(g, m);
    const FourVector got = standard_boost_massive(p, m) * FourVector(m, 0, 0, 0);
    EXPECT_LT((got - p).cwiseAbs().maxCoeff(), 1e-10);
    // Canonical boosts are symmetric.
    const Eigen::Matrix4d l = standard_boost_massive(p, m).matrix();
    EXPECT_LT((l - l.transpose()).cwiseAbs().maxCoeff(), 1e-14);

    const FourVector k = null_vector(testing::uniform(g, 0.1, 10.0), std::acos(testing::uniform(g, -1, 1)),
                                     testing::uniform(g, 0, 2 * kPi));
    EXPECT_LT((standard_boost_massless(k) * FourVector(1, 0, 0, 1) - k).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(StandardBoost, MasslessExamples) {
  EXPECT_LT((standard_boost_massless(FourVector(1, 0, 0, 1)).matrix() - Eigen::Matrix4d::Identity())
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
  EXPECT_LT((standard_boost_massless(FourVector(2, 0, 0, 2)).matrix() - z_boost(std::log(2.0))).cwiseAbs().maxCoeff(),
            1e-15);
  const double th = 0.7;
  Eigen::Matrix4d ry = Eigen::Matrix4d::Identity();
  ry(1, 1) = ry(3, 3) = std::cos(th);
  ry(1, 3) = std::sin(th);
  ry(3, 1) = -std::sin(th);
  EXPECT_LT((standard_boost_massless(FourVector(1, std::sin(th), 0, std::cos(th))).matrix() - ry).cwiseAbs().maxCoeff(),
            1e-15);
  EXPECT_THROW(standard_boost_massless(FourVector(1, 0, 0, 0.5)), ValidationError);
}

TEST(Wigner, PureRotationsReproduceThemselves) {
  auto g = testing::seeded(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Vector3d axis = testing::random_unit(g);
    const double angle = testing::uniform(g, 0.0, kPi);
    const auto r = rotation(axis, angle);
    const auto w = wigner_rotation(r, random_massive(g, 1.0), 1.0);
    EXPECT_LT((w.rotation - r.matrix().block<3, 3>(1, 1)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(w.angle, angle, 1e-8);
  }
}

TEST(Wigner, CollinearBoostsGiveIdentity) {
  auto g = testing::seeded(4);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Vector3d n = testing::random_unit(g);
    const FourVector p = on_shell(testing::uniform(g, 0.0, 4.0) * n, 1.0);
    const auto w = wigner_rotation(boost_rapidity(n, testing::uniform(g, -2, 2)), p, 1.0);
    EXPECT_LT((w.rotation - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT(w.angle, 1e-7);
  }
}

TEST(Wigner, PerpendicularBoostsMatchClosedForm) {
  const double m = 1.0;
  const FourVector p = z_boost(1.0) * FourVector(m, 0, 0, 0);
  const auto lambda = boost_rapidity(Eigen::Vector3d::UnitX(), 1.0);
  const auto w = wigner_rotation(lambda, p, m);

  // Oracle: direct product with independently coded canonical boosts.
  const FourVector q = x_boost(1.0) * p;
  const Eigen::Vector3d u = q.tail<3>() / m;
  const double gq = q(0) / m;
  Eigen::Matrix4d lq = Eigen::Matrix4d::Identity();
  lq(0, 0) = gq;
  lq.block<1, 3>(0, 1) = u.transpose();
  lq.block<3, 1>(1, 0) = u;
  lq.block<3, 3>(1, 1) += u * u.transpose() / (gq + 1.0);
  const Eigen::Matrix4d direct = eta() * lq.transpose() * eta() * x_boost(1.0) * z_boost(1.0);
  EXPECT_LT((w.rotation - direct.block<3, 3>(1, 1)).cwiseAbs().maxCoeff(), 1e-12);

  const double expected = std::atan(std::sinh(1.0) * std::sinh(1.0) / (2.0 * std::cosh(1.0)));
  EXPECT_NEAR(w.angle, expected, 1e-12);
  EXPECT_NEAR(std::abs(w.axis.y()), 1.0, 1e-12);
}

TEST(Wigner, RotationGroupAndDoubleCover) {
  auto g = testing::seeded(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto w = wigner_rotation(random_transform(g), random_massive(g, 1.0), 1.0);
    EXPECT_LT((w.rotation.transpose() * w.rotation - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((adjoint_rotation(w.su2) - w.rotation).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(std::abs(w.su2.determinant() - 1.0), 0.0, 1e-12);
    EXPECT_TRUE(is_unitary(w.su2, 1e-12));
    EXPECT_GE(w.angle, 0.0);
    EXPECT_LE(w.angle, kPi);
  }
  const Eigen::Vector3d n = testing::random_unit(g);
  EXPECT_LT(testing::max_abs_diff(su2_from_axis_angle(-n, -0.9), su2_from_axis_angle(n, 0.9)), 1e-15);
}

TEST(Wigner, AngleNearPiIsStable) {
  const auto r = rotation(Eigen::Vector3d(1, 1, 0), kPi - 1e-9);
  const auto w = wigner_rotation(r, FourVector(1, 0, 0, 0), 1.0);
  EXPECT_NEAR(w.angle, kPi - 1e-9, 1e-8);
  EXPECT_LT((adjoint_rotation(w.su2) - w.rotation).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(HelicityPhase, RotationAboutMomentum) {
  for (double phi : {0.3, 1.2, -2.0, 3.0}) {
    const auto h = helicity_phase(rotation(Eigen::Vector3d::UnitZ(), phi), FourVector(1, 0, 0, 1));
    EXPECT_NEAR(h.little_group_angle, phi, 1e-12);
    EXPECT_NEAR(std::remainder(h.xi + phi, 2 * kPi), 0.0, 1e-12);
  }
}

TEST(HelicityPhase, BoostAlongMomentumHasNoPhase) {
  auto g = testing::seeded(6);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Vector3d n = testing::random_unit(g);
    const FourVector k(2.0, 2.0 * n.x(), 2.0 * n.y(), 2.0 * n.z());
    EXPECT_NEAR(helicity_phase(boost_rapidity(n, testing::uniform(g, -2, 2)), k).xi, 0.0, 1e-10);
  }
}

TEST(HelicityPhase, MatchesGeometricTransportOfPolarization) {
  // Lambda (0, eps+_k) = e^{i xi} (0, eps+_k') + c k' with k' = Lambda k.
  auto g = testing::seeded(7);
  const double s = 1 / std::sqrt(2.0);
  const cplx i(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto lambda = random_transform(g);
    const double th = std::acos(testing::uniform(g, -0.99, 0.99));
    const double ph = testing::uniform(g, 0, 2 * kPi);
    const FourVector k = null_vector(testing::uniform(g, 0.5, 3.0), th, ph);
    const auto h = helicity_phase(lambda, k);
    EXPECT_LT(h.translation_residual, 1e-10);

    const Eigen::Matrix3d r = rotation_to_khat(th, ph);
    Eigen::Vector4cd eps = Eigen::Vector4cd::Zero();
    eps.tail<3>() = s * (r.col(0).cast<cplx>() + i * r.col(1).cast<cplx>());
    const Eigen::Vector4cd moved = lambda.matrix().cast<cplx>() * eps;
    const FourVector kp = lambda * k;
    const Eigen::Vector4cd transverse = moved - (moved(0) / kp(0)) * kp.cast<cplx>();

    const auto [th2, ph2] = direction_angles(kp.tail<3>());
    const Eigen::Matrix3d r2 = rotation_to_khat(th2, ph2);
    const Eigen::Vector3cd expected = std::polar(1.0, h.xi) * s * (r2.col(0).cast<cplx>() + i * r2.col(1).cast<cplx>());
    EXPECT_LT((transverse.tail<3>() - expected).cwiseAbs().maxCoeff(), 1e-10);
  }
  EXPECT_THROW(helicity_phase(LorentzTransform(), FourVector(1, 0, 0, 0.9)), ValidationError);
}

TEST(Aberration, ExamplesAndLimits) {
  const auto same = aberrate(0.4, 1.0, 0.0);
  EXPECT_DOUBLE_EQ(same.theta, 0.4);
  EXPECT_DOUBLE_EQ(same.k0, 1.0);
  EXPECT_NEAR(aberrate(0.01, 0.0, 0.6).theta / 0.01, 2.0, 2e-3);
  const auto side = aberrate(kPi / 2, 0.0, 0.6);
  EXPECT_NEAR(std::cos(side.theta), -0.6, 1e-15);
  EXPECT_NEAR(side.theta, 2.2143, 1e-4);
  EXPECT_NEAR(side.k0, 1.25, 1e-15);
  EXPECT_THROW(aberrate(0.1, 0.0, 1.0), ValidationError);
  EXPECT_THROW(aberrate(-0.1, 0.0, 0.5), ValidationError);
}

TEST(Aberration, RoundTripAndAgreementWithBoost) {
  auto g = testing::seeded(8);
  for (int trial = 0; trial < 500; ++trial) {
    const double th = testing::uniform(g, 0, kPi);
    const double ph = testing::uniform(g, 0, 2 * kPi);
    const double v = testing::uniform(g, -0.95, 0.95);
    const auto a = aberrate(th, ph, v);
    const auto back = aberrate(a.theta, a.phi, -v);
    EXPECT_NEAR(back.theta, th, 1e-10);
    EXPECT_NEAR(back.phi, ph, 1e-15);
    // Observer moving with +v along z: active boost by -v.
    const FourVector k = boost(Eigen::Vector3d(0, 0, -v)) * null_vector(1.0, th, ph);
    EXPECT_NEAR(k(0), a.k0, 1e-12);
    EXPECT_NEAR(std::atan2(std::hypot(k(1), k(2)), k(3)), a.theta, 1e-10);
  }
}

TEST(RotationToKhat, MatchesDisplayedMatrix) {
  EXPECT_EQ(rotation_to_khat(0, 0), Eigen::Matrix3d::Identity());
  const Eigen::Matrix3d r = rotation_to_khat(kPi / 2, 0);
  EXPECT_LT((r.col(0) - Eigen::Vector3d(0, 0, -1)).norm(), 1e-15);
  EXPECT_LT((r.col(1) - Eigen::Vector3d(0, 1, 0)).norm(), 1e-15);
  EXPECT_LT((r.col(2) - Eigen::Vector3d(1, 0, 0)).norm(), 1e-15);
  auto g = testing::seeded(9);
  for (int trial = 0; trial < 100; ++trial) {
    const double th = testing::uniform(g, 0, kPi), ph = testing::uniform(g, 0, 2 * kPi);
    const Eigen::Matrix3d m = rotation_to_khat(th, ph);
    const Eigen::Vector3d k(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
    EXPECT_LT((m * Eigen::Vector3d::UnitZ() - k).norm(), 1e-15);
    EXPECT_NEAR(m.determinant(), 1.0, 1e-14);
    const auto [t2, p2] = direction_angles(k);
    EXPECT_NEAR(t2, th, 1e-12);
  }
  EXPECT_THROW(direction_angles(Eigen::Vector3d::Zero()), ValidationError);
}

}  // namespace
}  // namespace relqi
