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

#pragma once

#include <Eigen/Dense>

#include "relqi/qstate.hpp"

namespace relqi {

// Components (t, x, y, z), natural units.
using FourVector = Eigen::Vector4d;

double minkowski_dot(const FourVector& a, const FourVector& b);
FourVector on_shell(const Eigen::Vector3d& momentum, double mass);
FourVector null_vector(double energy, double theta, double phi);

class LorentzTransform {
 public:
  LorentzTransform() : m_(Eigen::Matrix4d::Identity()) {}
  // Validates metric preservation, det = +1 and orthochronicity.
  explicit LorentzTransform(const Eigen::Matrix4d& m, double tol = 1e-9);

  const Eigen::Matrix4d& matrix() const { return m_; }
  LorentzTransform inverse() const;
  FourVector operator*(const FourVector& p) const { return m_ * p; }
  LorentzTransform operator*(const LorentzTransform& other) const;
  // max |L^T eta L - eta|
  double metric_defect() const;

 private:
  struct Unchecked {};
  LorentzTransform(const Eigen::Matrix4d& m, Unchecked) : m_(m) {}
  Eigen::Matrix4d m_;
};

LorentzTransform boost(const Eigen::Vector3d& velocity);
LorentzTransform boost_rapidity(const Eigen::Vector3d& axis, double rapidity);
LorentzTransform rotation(const Eigen::Vector3d& axis, double angle);
LorentzTransform rotation_from_matrix(const Eigen::Matrix3d& r, double tol = 1e-9);
LorentzTransform compose(const LorentzTransform& second, const LorentzTransform& first);

// Canonical (rotation-free) boost taking (m,0,0,0) to p.
LorentzTransform standard_boost_massive(const FourVector& p, double mass, double tol = 1e-9);
// z-boost to energy k0 followed by R(k^), taking (1,0,0,1) to k.
LorentzTransform standard_boost_massless(const FourVector& k, double tol = 1e-9);

struct WignerRotation {
  Eigen::Matrix3d rotation;
  Eigen::Vector3d axis;
  double angle = 0.0;  // in [0, pi]
  Matrix su2;
};

WignerRotation wigner_rotation(const LorentzTransform& lambda, const FourVector& p, double mass,
                               double tol = 1e-9);

Matrix su2_from_axis_angle(const Eigen::Vector3d& axis, double angle);
// Rotation R with R_ij = tr(sigma_i U sigma_j U^dagger) / 2.
Eigen::Matrix3d adjoint_rotation(const Matrix& u);

struct HelicityPhase {
  // Phase convention of the helicity transformation law:
  // eps+ -> e^{i xi} eps+ at the transformed momentum.
  double xi = 0.0;
  // Rotation angle of the little-group element about the standard z axis.
  double little_group_angle = 0.0;
  // Size of the non-gauge part left after removing the rotation; zero up to
  // rounding for a genuine little-group element.
  double translation_residual = 0.0;
};

HelicityPhase helicity_phase(const LorentzTransform& lambda, const FourVector& k, double tol = 1e-9);

struct Aberration {
  double theta = 0.0;
  double phi = 0.0;
  double k0 = 1.0;  // energy per unit original energy
};

// Direction and energy of a unit-energy photon seen by an observer moving
// with velocity v along z.
Aberration aberrate(double theta, double phi, double v);

Eigen::Matrix3d rotation_to_khat(double theta, double phi);
// Polar and azimuthal angles of a nonzero 3-vector.
std::pair<double, double> direction_angles(const Eigen::Vector3d& n);

}  // namespace relqi
