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

#include "relqi/lorentz.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "relqi/errors.hpp"

namespace relqi {

namespace {

const Eigen::Matrix4d& eta() {
  static const Eigen::Matrix4d m = Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal();
  return m;
}

Eigen::Matrix4d embed_rotation(const Eigen::Matrix3d& r) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.block<3, 3>(1, 1) = r;
  return m;
}

Eigen::Matrix4d boost_matrix(const Eigen::Vector3d& n, double cosh_r, double sinh_r) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 0) = cosh_r;
  m.block<1, 3>(0, 1) = sinh_r * n.transpose();
  m.block<3, 1>(1, 0) = sinh_r * n;
  m.block<3, 3>(1, 1) += (cosh_r - 1.0) * n * n.transpose();
  return m;
}

void require_shell(const FourVector& p, double mass, double tol, const char* where) {
  const double m2 = minkowski_dot(p, p);
  const double scale = std::max(1.0, p(0) * p(0));
  if (!(p(0) > 0.0)) throw ValidationError(std::string(where) + ": energy must be positive");
  if (std::abs(m2 - mass * mass) > tol * scale) {
    std::ostringstream os;
    os << where << ": off shell (p.p = " << m2 << ", expected " << mass * mass << ")";
    throw ValidationError(os.str());
  }
}

double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::remainder(a, two_pi);
  return a <= -std::numbers::pi ? a + two_pi : a;
}

}  // namespace

double minkowski_dot(const FourVector& a, const FourVector& b) {
  return a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3);
}

FourVector on_shell(const Eigen::Vector3d& momentum, double mass) {
  if (!(mass >= 0.0)) throw ValidationError("on_shell: negative mass");
  FourVector p;
  p << std::sqrt(mass * mass + momentum.squaredNorm()), momentum;
  return p;
}

FourVector null_vector(double energy, double theta, double phi) {
  if (!(energy > 0.0)) throw ValidationError("null_vector: energy must be positive");
  return energy * FourVector(1.0, std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
}

LorentzTransform::LorentzTransform(const Eigen::Matrix4d& m, double tol) : m_(m) {
  if (!m_.allFinite()) throw ValidationError("LorentzTransform: non-finite entries");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if (metric_defect() > tol * scale * scale) {
    std::ostringstream os;
    os << "LorentzTransform: metric not preserved (defect " << metric_defect() << ")";
    throw ValidationError(os.str());
  }
  if (m_(0, 0) < 1.0 - tol * scale) throw ValidationError("LorentzTransform: not orthochronous");
  if (m_.determinant() < 0.0) throw ValidationError("LorentzTransform: improper (det = -1)");
}

LorentzTransform LorentzTransform::inverse() const {
  return LorentzTransform(eta() * m_.transpose() * eta(), Unchecked{});
}

LorentzTransform LorentzTransform::operator*(const LorentzTransform& other) const {
  return LorentzTransform(m_ * other.m_, Unchecked{});
}

double LorentzTransform::metric_defect() const {
  return (m_.transpose() * eta() * m_ - eta()).cwiseAbs().maxCoeff();
}

LorentzTransform boost(const Eigen::Vector3d& velocity) {
  const double v = velocity.norm();
  if (!(v < 1.0)) throw ValidationError("boost: speed must be below 1");
  if (v == 0.0) return {};
  const double gamma = 1.0 / std::sqrt((1.0 - v) * (1.0 + v));
  return LorentzTransform(boost_matrix(velocity / v, gamma, gamma * v));
}

LorentzTransform boost_rapidity(const Eigen::Vector3d& axis, double rapidity) {
  const double n = axis.norm();
  if (!(n > 0.0)) throw ValidationError("boost_rapidity: zero axis");
  if (!std::isfinite(rapidity)) throw ValidationError("boost_rapidity: non-finite rapidity");
  return LorentzTransform(boost_matrix(axis / n, std::cosh(rapidity), std::sinh(rapidity)));
}

LorentzTransform rotation(const Eigen::Vector3d& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0)) throw ValidationError("rotation: zero axis");
  return LorentzTransform(embed_rotation(Eigen::AngleAxisd(angle, axis / n).toRotationMatrix()));
}

LorentzTransform rotation_from_matrix(const Eigen::Matrix3d& r, double tol) {
  if ((r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > tol || r.determinant() < 0.0)
    throw ValidationError("rotation: matrix is not a proper rotation");
  return LorentzTransform(embed_rotation(r), tol);
}

LorentzTransform compose(const LorentzTransform& second, const LorentzTransform& first) { return second * first; }

LorentzTransform standard_boost_massive(const FourVector& p, double mass, double tol) {
  if (!(mass > 0.0)) throw ValidationError("standard_boost_massive: mass must be positive");
  require_shell(p, mass, tol, "standard_boost_massive");
  const Eigen::Vector3d u = p.tail<3>() / mass;
  const double gamma = std::sqrt(1.0 + u.squaredNorm());
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 0) = gamma;
  m.block<1, 3>(0, 1) = u.transpose();
  m.block<3, 1>(1, 0) = u;
  m.block<3, 3>(1, 1) += u * u.transpose() / (gamma + 1.0);
  return LorentzTransform(m);
}

LorentzTransform standard_boost_massless(const FourVector& k, double tol) {
  require_shell(k, 0.0, tol, "standard_boost_massless");
  const auto [theta, phi] = direction_angles(k.tail<3>());
  const double r = std::log(k(0));
  return LorentzTransform(embed_rotation(rotation_to_khat(theta, phi)) *
                          boost_matrix(Eigen::Vector3d::UnitZ(), std::cosh(r), std::sinh(r)));
}

WignerRotation wigner_rotation(const LorentzTransform& lambda, const FourVector& p, double mass, double tol) {
  const LorentzTransform lp = standard_boost_massive(p, mass, tol);
  const FourVector q = lambda * p;
  // Re-project onto the shell so that rounding in q does not trip validation.
  const LorentzTransform lq = standard_boost_massive(on_shell(q.tail<3>(), mass), mass, tol);
  const Eigen::Matrix4d w = (lq.inverse() * lambda * lp).matrix();

  const double leak = std::max({std::abs(w(0, 0) - 1.0), w.block<1, 3>(0, 1).cwiseAbs().maxCoeff(),
                                w.block<3, 1>(1, 0).cwiseAbs().maxCoeff()});
  const double scale = std::max(1.0, lambda.matrix().cwiseAbs().maxCoeff() * p(0) / mass);
  if (leak > 1e-7 * scale) {
    std::ostringstream os;
    os << "wigner_rotation: little-group element does not fix the rest momentum (leak " << leak << ")";
    throw NumericalError(os.str());
  }
  // Nearest proper rotation to the spatial block.
  const Eigen::Matrix3d block = w.block<3, 3>(1, 1);
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(block, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0.0) throw NumericalError("wigner_rotation: improper spatial block");

  WignerRotation out;
  out.rotation = r;
  const Eigen::AngleAxisd aa(Eigen::Quaterniond(r).normalized());
  out.angle = aa.angle();
  out.axis = aa.axis();
  out.su2 = su2_from_axis_angle(out.axis, out.angle);
  return out;
}

Matrix su2_from_axis_angle(const Eigen::Vector3d& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0)) throw ValidationError("su2_from_axis_angle: zero axis");
  const Eigen::Vector3d u = axis / n;
  const cplx i(0.0, 1.0);
  const Matrix ns = u.x() * pauli::x() + u.y() * pauli::y() + u.z() * pauli::z();
  return std::cos(angle / 2.0) * pauli::identity() - i * std::sin(angle / 2.0) * ns;
}

Eigen::Matrix3d adjoint_rotation(const Matrix& u) {
  if (u.rows() != 2 || u.cols() != 2) throw StructuralError("adjoint_rotation: expected a 2x2 matrix");
  const std::array<Matrix, 3> s{pauli::x(), pauli::y(), pauli::z()};
  Eigen::Matrix3d r;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) r(a, b) = 0.5 * (s[a] * u * s[b] * u.adjoint()).trace().real();
  return r;
}

HelicityPhase helicity_phase(const LorentzTransform& lambda, const FourVector& k, double tol) {
  const LorentzTransform lk = standard_boost_massless(k, tol);
  const FourVector q = lambda * k;
  const FourVector q_null(q.tail<3>().norm(), q(1), q(2), q(3));
  const Eigen::Matrix4d e = (standard_boost_massless(q_null, tol).inverse() * lambda * lk).matrix();

  const FourVector k_std(1.0, 0.0, 0.0, 1.0);
  const double fix = (e * k_std - k_std).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, lambda.matrix().cwiseAbs().maxCoeff() * k(0));
  if (fix > 1e-7 * scale) throw NumericalError("helicity_phase: element does not stabilize the standard momentum");

  HelicityPhase out;
  out.little_group_angle = std::atan2(e(2, 1), e(1, 1));
  out.xi = wrap_angle(-out.little_group_angle);

  // E eps_std = e^{-i psi} eps_std + c k_std; anything else is a defect.
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Vector4cd eps(0.0, r, cplx(0.0, r), 0.0);
  const Eigen::Vector4cd moved = e.cast<cplx>() * eps;
  const Eigen::Vector4cd residual = moved - std::polar(1.0, -out.little_group_angle) * eps;
  out.translation_residual =
      std::max({std::abs(residual(1)), std::abs(residual(2)), std::abs(residual(0) - residual(3))});
  if (out.translation_residual > 1e-6 * scale)
    throw NumericalError("helicity_phase: translation part acts on transverse polarization");
  return out;
}

Aberration aberrate(double theta, double phi, double v) {
  if (!(std::abs(v) < 1.0)) throw ValidationError("aberrate: |v| must be below 1");
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw ValidationError("aberrate: theta outside [0, pi]");
  const double gamma = 1.0 / std::sqrt((1.0 - v) * (1.0 + v));
  const double d = 1.0 - v * std::cos(theta);
  Aberration out;
  out.theta = std::atan2(std::sin(theta) / (gamma * d), (std::cos(theta) - v) / d);
  out.phi = phi;
  out.k0 = gamma * d;
  return out;
}

Eigen::Matrix3d rotation_to_khat(double theta, double phi) {
  const double ct = std::cos(theta), st = std::sin(theta), cp = std::cos(phi), sp = std::sin(phi);
  Eigen::Matrix3d r;
  r << ct * cp, -sp, cp * st,
       ct * sp, cp, sp * st,
       -st, 0.0, ct;
  return r;
}

std::pair<double, double> direction_angles(const Eigen::Vector3d& n) {
  const double perp = std::hypot(n.x(), n.y());
  if (!(perp > 0.0 || std::abs(n.z()) > 0.0)) throw ValidationError("direction_angles: zero vector");
  return {std::atan2(perp, n.z()), perp > 0.0 ? std::atan2(n.y(), n.x()) : 0.0};
}

}  // namespace relqi
