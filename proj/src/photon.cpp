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

#include "relqi/photon.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "relqi/errors.hpp"

namespace relqi {

namespace {

constexpr int kPanelNodes = 16;

// Nodes and weights of one Gauss-Legendre panel mapped onto [a, b].
std::vector<std::pair<double, double>> gauss_panel(double a, double b) {
  using rule = boost::math::quadrature::gauss<double, kPanelNodes>;
  const auto& x = rule::abscissa();
  const auto& w = rule::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.emplace_back(mid - half * x[i], half * w[i]);
    if (x[i] != 0.0) out.emplace_back(mid + half * x[i], half * w[i]);
  }
  return out;
}

void require_normalized(const PhotonPacket& p, double tol, const char* where) {
  if (std::abs(p.norm() - 1.0) > tol) throw ValidationError(std::string(where) + ": packet is not normalized");
}

}  // namespace

PhotonPacket::PhotonPacket(std::vector<PhotonMode> modes, double tol_norm, double tol_helicity)
    : modes_(std::move(modes)) {
  if (modes_.empty()) throw StructuralError("PhotonPacket: no modes");
  for (const auto& m : modes_) {
    if (!(m.weight > 0.0)) throw ValidationError("PhotonPacket: weights must be positive");
    if (!(m.k0 > 0.0)) throw ValidationError("PhotonPacket: frequency must be positive");
    const double h = std::norm(m.alpha_plus) + std::norm(m.alpha_minus);
    if (std::abs(h - 1.0) > tol_helicity) throw ValidationError("PhotonPacket: helicity amplitudes not normalized");
  }
  const double n = norm();
  if (std::abs(n - 1.0) > tol_norm) {
    std::ostringstream os;
    os << "PhotonPacket: norm " << n << " differs from 1";
    throw ValidationError(os.str());
  }
}

double PhotonPacket::norm() const {
  double s = 0.0;
  for (const auto& m : modes_) s += m.weight * std::norm(m.f);
  return s;
}

double PhotonPacket::helicity_population(int helicity) const {
  if (helicity != 1 && helicity != -1) throw ValidationError("helicity_population: helicity must be +1 or -1");
  double s = 0.0;
  for (const auto& m : modes_)
    s += m.weight * std::norm(m.f) * std::norm(helicity == 1 ? m.alpha_plus : m.alpha_minus);
  return s;
}

std::pair<Vector3c, Vector3c> helicity_vectors(double theta, double phi) {
  const Eigen::Matrix3d r = rotation_to_khat(theta, phi);
  const double s = 1.0 / std::sqrt(2.0);
  const cplx i(0.0, 1.0);
  const Vector3c plus = s * (r.col(0).cast<cplx>() + i * r.col(1).cast<cplx>());
  const Vector3c minus = s * (r.col(0).cast<cplx>() - i * r.col(1).cast<cplx>());
  return {plus, minus};
}

TransversalDecomposition transversal_decomposition(const Eigen::Vector3d& n, double theta, double phi) {
  if (std::abs(n.norm() - 1.0) > 1e-12) throw ValidationError("transversal_decomposition: direction is not a unit vector");
  const auto [ep, em] = helicity_vectors(theta, phi);
  const Vector3c nc = n.cast<cplx>();
  TransversalDecomposition d;
  d.plus = ep.dot(nc);  // conjugates the first argument
  d.minus = em.dot(nc);
  d.longitudinal = n.dot(rotation_to_khat(theta, phi).col(2));
  d.c = std::sqrt(std::norm(d.plus) + std::norm(d.minus));
  return d;
}

Vector3c transverse_part(const Eigen::Vector3d& n, double theta, double phi) {
  const auto d = transversal_decomposition(n, theta, phi);
  const auto [ep, em] = helicity_vectors(theta, phi);
  return d.plus * ep + d.minus * em;
}

Vector3c polarization_vector(const PhotonMode& mode) {
  const auto [ep, em] = helicity_vectors(mode.theta, mode.phi);
  return mode.alpha_plus * ep + mode.alpha_minus * em;
}

Eigen::Vector3d axis_vector(Axis a) {
  switch (a) {
    case Axis::x: return Eigen::Vector3d::UnitX();
    case Axis::y: return Eigen::Vector3d::UnitY();
    case Axis::z: return Eigen::Vector3d::UnitZ();
  }
  throw StructuralError("axis_vector: unknown axis");
}

double povm_expectation(const PhotonPacket& packet, Axis axis, double tol_norm) {
  require_normalized(packet, tol_norm, "povm_expectation");
  const Eigen::Vector3d n = axis_vector(axis);
  double s = 0.0;
  for (const auto& m : packet.modes()) {
    const cplx amp = transverse_part(n, m.theta, m.phi).dot(polarization_vector(m));
    s += m.weight * std::norm(m.f) * std::norm(amp);
  }
  return s;
}

Matrix3c effective_density_matrix(const PhotonPacket& packet, double tol_norm) {
  require_normalized(packet, tol_norm, "effective_density_matrix");
  Matrix3c rho = Matrix3c::Zero();
  for (const auto& m : packet.modes()) {
    const Vector3c alpha = polarization_vector(m);
    Vector3c proj;  // <b_m|alpha>
    for (int a = 0; a < 3; ++a) proj(a) = transverse_part(axis_vector(static_cast<Axis>(a)), m.theta, m.phi).dot(alpha);
    rho += m.weight * std::norm(m.f) * (proj * proj.adjoint());
  }
  return rho;
}

Matrix3c naive_density_matrix(const PhotonPacket& packet) {
  Matrix3c rho = Matrix3c::Zero();
  for (const auto& m : packet.modes()) {
    const Vector3c alpha = polarization_vector(m);
    rho += m.weight * std::norm(m.f) * (alpha * alpha.adjoint());
  }
  return rho;
}

PhotonPacket collimated_packet(double aperture, Polarization pol, const ConeGrid& grid) {
  if (!(aperture > 0.0 && aperture < std::numbers::pi / 2))
    throw ValidationError("collimated_packet: aperture must lie in (0, pi/2)");
  if (grid.cos_nodes < 2 * kPanelNodes || grid.cos_nodes % kPanelNodes != 0)
    throw ValidationError("collimated_packet: cos_nodes must be a multiple of 16, at least 32");
  if (grid.phi_nodes < 1) throw ValidationError("collimated_packet: phi_nodes must be positive");
  if (!(grid.taper_fraction > 0.0 && grid.taper_fraction < 1.0))
    throw ValidationError("collimated_packet: taper fraction must lie in (0, 1)");

  const double edge = (1.0 - grid.taper_fraction) * aperture;
  const int core_panels = grid.cos_nodes / kPanelNodes - 1;
  std::vector<std::pair<double, double>> cos_rule;
  const double c_edge = std::cos(edge);
  for (int p = 0; p < core_panels; ++p) {
    const double hi = 1.0 - (1.0 - c_edge) * p / core_panels;
    const double lo = 1.0 - (1.0 - c_edge) * (p + 1) / core_panels;
    for (auto node : gauss_panel(lo, hi)) cos_rule.push_back(node);
  }
  for (auto node : gauss_panel(std::cos(aperture), c_edge)) cos_rule.push_back(node);

  auto profile2 = [&](double theta) {
    if (theta <= edge) return 1.0;
    const double c = std::cos(0.5 * std::numbers::pi * (theta - edge) / (aperture - edge));
    return c * c;
  };

  const double dphi = 2.0 * std::numbers::pi / grid.phi_nodes;
  std::vector<PhotonMode> modes;
  double norm = 0.0;
  for (auto [ct, wt] : cos_rule)
    for (int j = 0; j < grid.phi_nodes; ++j) {
      PhotonMode m;
      m.theta = std::acos(ct);
      m.phi = j * dphi;
      m.weight = wt * dphi;
      m.f = std::sqrt(profile2(m.theta));
      switch (pol) {
        case Polarization::helicity_plus: m.alpha_plus = 1.0; m.alpha_minus = 0.0; break;
        case Polarization::helicity_minus: m.alpha_plus = 0.0; m.alpha_minus = 1.0; break;
        case Polarization::linear_x:
        case Polarization::linear_y: {
          const auto d = transversal_decomposition(axis_vector(pol == Polarization::linear_x ? Axis::x : Axis::y),
                                                   m.theta, m.phi);
          if (d.c < 1e-12) throw NumericalError("collimated_packet: polarization axis parallel to a grid direction");
          m.alpha_plus = d.plus / d.c;
          m.alpha_minus = d.minus / d.c;
          break;
        }
      }
      norm += m.weight * std::norm(m.f);
      modes.push_back(m);
    }
  for (auto& m : modes) m.f /= std::sqrt(norm);
  return PhotonPacket(std::move(modes));
}

PhotonPacket random_polarized_packet(double aperture, const ConeGrid& grid, rng::Engine& eng) {
  std::vector<PhotonMode> modes = collimated_packet(aperture, Polarization::helicity_plus, grid).modes();
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (auto& m : modes) {
    const Eigen::Vector2cd a(cplx(normal(eng), normal(eng)), cplx(normal(eng), normal(eng)));
    const Eigen::Vector2cd u = a / a.norm();
    m.alpha_plus = u(0);
    m.alpha_minus = u(1);
    m.f *= std::polar(1.0, angle(eng));
  }
  return PhotonPacket(std::move(modes));
}

PhotonPacket transform_packet(const PhotonPacket& packet, const LorentzTransform& lambda) {
  std::vector<PhotonMode> out;
  out.reserve(packet.size());
  for (const auto& m : packet.modes()) {
    const FourVector k = null_vector(m.k0, m.theta, m.phi);
    const FourVector q = lambda * k;
    const double xi = helicity_phase(lambda, k).xi;
    PhotonMode n = m;
    std::tie(n.theta, n.phi) = direction_angles(q.tail<3>());
    n.k0 = q.tail<3>().norm();
    n.alpha_plus = m.alpha_plus * std::polar(1.0, xi);
    n.alpha_minus = m.alpha_minus * std::polar(1.0, -xi);
    out.push_back(n);
  }
  return PhotonPacket(std::move(out));
}

PhotonPacket boost_packet(const PhotonPacket& packet, double v) {
  if (!(std::abs(v) < 1.0)) throw ValidationError("boost_packet: |v| must be below 1");
  if (v == 0.0) return packet;
  return transform_packet(packet, boost(Eigen::Vector3d(0.0, 0.0, -v)));
}

double polarization_error_probability(const Matrix3c& rho1, const Matrix3c& rho2) {
  return error_probability(DensityMatrix::normalized(rho1), DensityMatrix::normalized(rho2));
}

DopplerResult doppler_error_ratio(const PhotonPacket& a, const PhotonPacket& b, double v) {
  DopplerResult r;
  r.v = v;
  r.p_e = polarization_error_probability(effective_density_matrix(a), effective_density_matrix(b));
  r.p_e_boosted = polarization_error_probability(effective_density_matrix(boost_packet(a, v)),
                                                 effective_density_matrix(boost_packet(b, v)));
  r.degenerate = r.p_e < 1e-14;
  r.ratio = r.degenerate ? std::nan("") : r.p_e_boosted / r.p_e;
  return r;
}

DopplerResult doppler_error_ratio(double aperture, double v, const ConeGrid& grid) {
  return doppler_error_ratio(collimated_packet(aperture, Polarization::linear_x, grid),
                             collimated_packet(aperture, Polarization::linear_y, grid), v);
}

OrthogonalityWitness no_orthogonality_witness(double aperture, const ConeGrid& grid) {
  OrthogonalityWitness w;
  w.p_e_linear =
      polarization_error_probability(effective_density_matrix(collimated_packet(aperture, Polarization::linear_x, grid)),
                                     effective_density_matrix(collimated_packet(aperture, Polarization::linear_y, grid)));
  w.p_e_helicity = polarization_error_probability(
      effective_density_matrix(collimated_packet(aperture, Polarization::helicity_plus, grid)),
      effective_density_matrix(collimated_packet(aperture, Polarization::helicity_minus, grid)));
  w.margin = std::min(w.p_e_linear, w.p_e_helicity);
  return w;
}

}  // namespace relqi
