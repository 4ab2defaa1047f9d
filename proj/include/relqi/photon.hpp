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
#include "relqi/random.hpp"

namespace relqi {

using Vector3c = Eigen::Vector3cd;
using Matrix3c = Eigen::Matrix3cd;

// One direction sample of a monochromatic photon packet. The weight carries
// the invariant measure, so it is unchanged by Lorentz transformations.
struct PhotonMode {
  double theta = 0.0;
  double phi = 0.0;
  double k0 = 1.0;
  double weight = 1.0;
  cplx f = 1.0;
  cplx alpha_plus = 1.0;
  cplx alpha_minus = 0.0;
};

class PhotonPacket {
 public:
  explicit PhotonPacket(std::vector<PhotonMode> modes, double tol_norm = 1e-8, double tol_helicity = 1e-12);

  const std::vector<PhotonMode>& modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }
  double norm() const;
  // Sum of w |f|^2 |alpha_+|^2 (helicity = +1) or |alpha_-|^2 (helicity = -1).
  double helicity_population(int helicity) const;

 private:
  std::vector<PhotonMode> modes_;
};

// eps+- = R(k^) (1, +-i, 0) / sqrt(2)
std::pair<Vector3c, Vector3c> helicity_vectors(double theta, double phi);

struct TransversalDecomposition {
  cplx plus;            // <eps+|n>
  cplx minus;           // <eps-|n>
  double longitudinal;  // n . k^
  double c;             // sqrt(|plus|^2 + |minus|^2)
};

TransversalDecomposition transversal_decomposition(const Eigen::Vector3d& n, double theta, double phi);
// Transverse part b_n(k) of a unit direction n as a 3-vector.
Vector3c transverse_part(const Eigen::Vector3d& n, double theta, double phi);
// alpha(k) = alpha_+ eps+ + alpha_- eps-
Vector3c polarization_vector(const PhotonMode& mode);

enum class Axis { x, y, z };
Eigen::Vector3d axis_vector(Axis a);

double povm_expectation(const PhotonPacket& packet, Axis axis, double tol_norm = 1e-8);
// rho_mn = sum w |f|^2 <b_m|alpha><alpha|b_n>
Matrix3c effective_density_matrix(const PhotonPacket& packet, double tol_norm = 1e-8);
// rho_mn = sum w |f|^2 alpha_m conj(alpha_n)
Matrix3c naive_density_matrix(const PhotonPacket& packet);

enum class Polarization { linear_x, linear_y, helicity_plus, helicity_minus };

// Gauss-Legendre in cos(theta) over the cone, in 16-node panels: cos_nodes/16 - 1
// panels on the flat core and one on the taper; uniform in phi.
struct ConeGrid {
  int cos_nodes = 32;
  int phi_nodes = 64;
  double taper_fraction = 0.1;
};

// Flat-top beam of half-angle `aperture` about z with a C1 cos^2 edge taper.
PhotonPacket collimated_packet(double aperture, Polarization pol, const ConeGrid& grid = {});

// Same cone profile with independent random helicity amplitudes and phases
// in every mode.
PhotonPacket random_polarized_packet(double aperture, const ConeGrid& grid, rng::Engine& eng);

PhotonPacket transform_packet(const PhotonPacket& packet, const LorentzTransform& lambda);
// Packet seen by a detector moving with velocity v along z.
PhotonPacket boost_packet(const PhotonPacket& packet, double v);

double polarization_error_probability(const Matrix3c& rho1, const Matrix3c& rho2);

struct DopplerResult {
  double v = 0.0;
  double p_e = 0.0;
  double p_e_boosted = 0.0;
  double ratio = 0.0;
  bool degenerate = false;
};

DopplerResult doppler_error_ratio(const PhotonPacket& a, const PhotonPacket& b, double v);
// x- and y-polarized packets sharing the same cone profile.
DopplerResult doppler_error_ratio(double aperture, double v, const ConeGrid& grid = {});

struct OrthogonalityWitness {
  double p_e_linear = 0.0;    // x vs y
  double p_e_helicity = 0.0;  // eps+ vs eps-
  double margin = 0.0;        // smallest P_E over the candidate pairs
};

OrthogonalityWitness no_orthogonality_witness(double aperture, const ConeGrid& grid = {});

}  // namespace relqi
