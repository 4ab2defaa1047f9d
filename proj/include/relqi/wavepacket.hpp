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

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "relqi/lorentz.hpp"
#include "relqi/qstate.hpp"

namespace relqi {

using Spinor = Eigen::Vector2cd;

// Gaussian momentum profile on a Cartesian grid of `points` samples per axis
// spanning mean +/- extent * spread. A single point is a sharp momentum.
struct PacketSpec {
  double mass = 1.0;
  Eigen::Vector3d mean_momentum = Eigen::Vector3d::Zero();
  double spread = 0.1;
  Eigen::Vector3d spin_direction = Eigen::Vector3d::UnitZ();
  double extent = 4.0;
  int points = 15;
};

// On-shell momenta with weights approximating the invariant measure
// d^3p / (2 p0); a boost relabels the points and keeps the weights.
struct MomentumGrid {
  double mass = 1.0;
  std::vector<FourVector> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

// Cartesian grid of mean +/- extent * spread per axis with trapezoidal
// weights, and the Gaussian amplitude profile sampled on it (unnormalized).
std::pair<MomentumGrid, std::vector<double>> gaussian_grid(double mass, const Eigen::Vector3d& mean, double spread,
                                                           double extent, int points);
MomentumGrid boost_grid(const MomentumGrid& grid, const LorentzTransform& lambda);

// Amplitudes are stored against the invariant measure, so a boost is a grid
// relabeling plus a spinor rotation.
class SpinorPacket {
 public:
  SpinorPacket(MomentumGrid grid, std::vector<Spinor> amplitudes, double tol_norm = 1e-8);

  double mass() const { return grid_.mass; }
  std::size_t size() const { return grid_.size(); }
  const MomentumGrid& grid() const { return grid_; }
  const std::vector<Spinor>& amplitudes() const { return amps_; }
  double norm() const;

 private:
  MomentumGrid grid_;
  std::vector<Spinor> amps_;
};

Spinor spin_up_along(const Eigen::Vector3d& direction);

SpinorPacket gaussian_packet(const PacketSpec& spec);

// Gamma = (Delta/m) (1 - sqrt(1 - beta^2)) / beta, with the beta -> 0 limit 0.
double gamma_parameter(double delta, double mass, double beta);
// Inverse of gamma_parameter in beta; requires 0 <= gamma < delta/m.
double beta_for_gamma(double delta_over_m, double gamma);
// Unit vector at angle theta from z in the x-z plane.
Eigen::Vector3d boost_direction(double theta);

SpinorPacket boost_packet(const SpinorPacket& packet, const LorentzTransform& lambda);
DensityMatrix reduced_spin(const SpinorPacket& packet, double tol_norm = 1e-8);

struct GridSpec {
  double extent = 4.0;
  int points = 15;
};

struct EntropyCell {
  double theta = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double entropy = 0.0;  // nats
};

// Rest-frame z-spin Gaussian seen from frames moving with speed beta at angle
// theta from the spin axis. Rows ordered theta-major.
std::vector<EntropyCell> entropy_surface(double delta_over_m, const std::vector<double>& beta_list,
                                         const std::vector<double>& theta_list, const GridSpec& grid = {});

struct ErrorScalingReport {
  std::vector<double> gammas;
  std::vector<double> errors;   // P'_E in the moving frame
  double exponent = 0.0;        // least-squares slope of log P'_E vs log Gamma
  double restored_error = 0.0;  // largest P_E after undoing each boost
};

// Opposite-spin packets (orthogonal at rest) seen from moving frames; Gamma
// values with zero P'_E are excluded from the fit.
ErrorScalingReport packet_error_scaling(double delta_over_m, const std::vector<double>& gamma_list, double theta,
                                        const GridSpec& grid = {});

struct NonCovarianceWitness {
  Eigen::Vector2d spectrum_narrow;
  Eigen::Vector2d spectrum_wide;
  double max_difference = 0.0;
};

// Two z-spin packets with the same reduced spin state and different spreads,
// viewed from the same moving frame.
NonCovarianceWitness non_covariance_witness(double narrow_over_m, double wide_over_m, double beta, double theta,
                                            const GridSpec& grid = {});

struct CpFailureWitness {
  double error_moving = 0.0;  // P'_E of the pair in the moving frame
  double error_rest = 0.0;    // P_E after the inverse boost
};

// The traced inverse boost maps a partly indistinguishable pair onto an
// orthogonal one, which no fixed CP map can do.
CpFailureWitness cp_failure_witness(double delta_over_m, double beta, double theta, const GridSpec& grid = {});

// Two particles on a product grid; amplitude column i * n2 + j holds the
// four spin components (s1 s2) at (p1_i, p2_j).
struct BipartiteSpec {
  double mass1 = 1.0;
  double mass2 = 1.0;
  double spread = 0.3;
  Eigen::Vector3d mean1 = Eigen::Vector3d::Zero();
  Eigen::Vector3d mean2 = Eigen::Vector3d::Zero();
  Eigen::Vector4cd spin_state = bell::psi_minus();
  double extent = 4.0;
  int points = 9;
};

class BipartitePacket {
 public:
  BipartitePacket(MomentumGrid grid1, MomentumGrid grid2, Eigen::MatrixXcd amplitudes, double tol_norm = 1e-6);

  const MomentumGrid& grid1() const { return g1_; }
  const MomentumGrid& grid2() const { return g2_; }
  const Eigen::MatrixXcd& amplitudes() const { return amps_; }
  double norm() const;

 private:
  MomentumGrid g1_;
  MomentumGrid g2_;
  Eigen::MatrixXcd amps_;
};

BipartitePacket bipartite_gaussian(const BipartiteSpec& spec);
BipartitePacket boost_bipartite(const BipartitePacket& packet, const LorentzTransform& lambda);
DensityMatrix reduced_spin_pair(const BipartitePacket& packet, double tol_norm = 1e-6);

struct ConcurrenceRow {
  double rapidity = 0.0;
  double concurrence = 0.0;
  double restored = 0.0;  // after boosting back
};

ConcurrenceRow concurrence_at(const BipartitePacket& rest, double rapidity, const Eigen::Vector3d& axis);
std::vector<ConcurrenceRow> bipartite_boost_concurrence(const BipartiteSpec& spec, const std::vector<double>& rapidities,
                                                        const Eigen::Vector3d& axis = Eigen::Vector3d::UnitX());

}  // namespace relqi
