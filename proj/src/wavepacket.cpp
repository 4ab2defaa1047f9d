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

#include "relqi/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "relqi/errors.hpp"

namespace relqi {

namespace {

void check_grid(const MomentumGrid& g, const char* where) {
  if (!(g.mass > 0.0)) throw ValidationError(std::string(where) + ": mass must be positive");
  if (g.points.empty()) throw StructuralError(std::string(where) + ": empty grid");
  if (g.points.size() != g.weights.size()) throw StructuralError(std::string(where) + ": weights do not match grid");
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    const FourVector& p = g.points[i];
    const double defect = std::abs(minkowski_dot(p, p) - g.mass * g.mass);
    if (!(p(0) > 0.0) || defect > 1e-10 * std::max(1.0, p(0) * p(0)))
      throw ValidationError(std::string(where) + ": grid point off the mass shell");
    if (!(g.weights[i] > 0.0)) throw ValidationError(std::string(where) + ": weights must be positive");
  }
}

std::vector<Matrix> wigner_factors(const MomentumGrid& g, const LorentzTransform& lambda) {
  std::vector<Matrix> d;
  d.reserve(g.size());
  for (const auto& p : g.points) d.push_back(wigner_rotation(lambda, p, g.mass).su2);
  return d;
}

LorentzTransform frame_boost(double beta, double theta) {
  // An observer moving with velocity beta n describes states boosted by -beta n.
  return boost(-beta * boost_direction(theta));
}

}  // namespace

std::pair<MomentumGrid, std::vector<double>> gaussian_grid(double mass, const Eigen::Vector3d& mean, double spread,
                                                           double extent, int points) {
  if (!(mass > 0.0)) throw ValidationError("gaussian_grid: mass must be positive");
  if (points < 1 || points % 2 == 0) throw ValidationError("gaussian_grid: points per axis must be odd");
  MomentumGrid grid;
  grid.mass = mass;
  std::vector<double> profile;
  if (points == 1) {
    grid.points.push_back(on_shell(mean, mass));
    grid.weights.push_back(1.0);
    profile.push_back(1.0);
    return {grid, profile};
  }
  if (!(spread > 0.0)) throw ValidationError("gaussian_grid: spread must be positive");
  if (!(extent >= 3.0)) throw ValidationError("gaussian_grid: extent must be at least 3 spreads");

  const double h = 2.0 * extent * spread / (points - 1);
  auto trap = [&](int i) { return (i == 0 || i == points - 1) ? 0.5 : 1.0; };
  grid.points.reserve(static_cast<std::size_t>(points) * points * points);
  for (int i = 0; i < points; ++i)
    for (int j = 0; j < points; ++j)
      for (int k = 0; k < points; ++k) {
        const Eigen::Vector3d offset(-extent * spread + i * h, -extent * spread + j * h, -extent * spread + k * h);
        const FourVector p = on_shell(mean + offset, mass);
        grid.points.push_back(p);
        grid.weights.push_back(trap(i) * trap(j) * trap(k) * h * h * h / (2.0 * p(0)));
        // |a|^2 d^3p has standard deviation `spread` per axis; sqrt(2 p0)
        // converts to the invariant-measure convention.
        profile.push_back(std::exp(-offset.squaredNorm() / (4.0 * spread * spread)) * std::sqrt(2.0 * p(0)));
      }
  return {grid, profile};
}

MomentumGrid boost_grid(const MomentumGrid& grid, const LorentzTransform& lambda) {
  MomentumGrid out;
  out.mass = grid.mass;
  out.weights = grid.weights;
  out.points.reserve(grid.size());
  for (const auto& p : grid.points) out.points.push_back(lambda * p);
  return out;
}

SpinorPacket::SpinorPacket(MomentumGrid grid, std::vector<Spinor> amplitudes, double tol_norm)
    : grid_(std::move(grid)), amps_(std::move(amplitudes)) {
  check_grid(grid_, "SpinorPacket");
  if (amps_.size() != grid_.size()) throw StructuralError("SpinorPacket: amplitudes do not match grid");
  const double n = norm();
  if (std::abs(n - 1.0) > tol_norm) {
    std::ostringstream os;
    os << "SpinorPacket: norm " << n << " differs from 1";
    throw ValidationError(os.str());
  }
}

double SpinorPacket::norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) s += grid_.weights[i] * amps_[i].squaredNorm();
  return s;
}

Spinor spin_up_along(const Eigen::Vector3d& direction) {
  const auto [theta, phi] = direction_angles(direction);
  return Spinor(std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi));
}

SpinorPacket gaussian_packet(const PacketSpec& spec) {
  auto [grid, profile] = gaussian_grid(spec.mass, spec.mean_momentum, spec.spread, spec.extent, spec.points);
  const Spinor chi = spin_up_along(spec.spin_direction);
  double n = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) n += grid.weights[i] * profile[i] * profile[i];
  const double scale = 1.0 / std::sqrt(n);
  std::vector<Spinor> amps;
  amps.reserve(grid.size());
  for (double f : profile) amps.push_back(f * scale * chi);
  return SpinorPacket(std::move(grid), std::move(amps));
}

double gamma_parameter(double delta, double mass, double beta) {
  if (!(mass > 0.0)) throw ValidationError("gamma_parameter: mass must be positive");
  if (!(beta >= 0.0 && beta < 1.0)) throw ValidationError("gamma_parameter: beta outside [0, 1)");
  if (beta == 0.0) return 0.0;
  // (1 - sqrt(1 - b^2)) / b rewritten as b / (1 + sqrt(1 - b^2)) to avoid cancellation.
  return delta / mass * beta / (1.0 + std::sqrt((1.0 - beta) * (1.0 + beta)));
}

double beta_for_gamma(double delta_over_m, double gamma) {
  if (!(delta_over_m > 0.0)) throw ValidationError("beta_for_gamma: spread must be positive");
  const double t = gamma / delta_over_m;
  if (!(t >= 0.0 && t < 1.0)) throw ValidationError("beta_for_gamma: gamma must lie in [0, delta/m)");
  return 2.0 * t / (1.0 + t * t);
}

Eigen::Vector3d boost_direction(double theta) { return {std::sin(theta), 0.0, std::cos(theta)}; }

SpinorPacket boost_packet(const SpinorPacket& packet, const LorentzTransform& lambda) {
  const std::vector<Matrix> d = wigner_factors(packet.grid(), lambda);
  std::vector<Spinor> amps;
  amps.reserve(packet.size());
  for (std::size_t i = 0; i < packet.size(); ++i) amps.push_back(d[i] * packet.amplitudes()[i]);
  return SpinorPacket(boost_grid(packet.grid(), lambda), std::move(amps));
}

DensityMatrix reduced_spin(const SpinorPacket& packet, double tol_norm) {
  if (std::abs(packet.norm() - 1.0) > tol_norm) throw ValidationError("reduced_spin: packet is not normalized");
  Matrix tau = Matrix::Zero(2, 2);
  for (std::size_t i = 0; i < packet.size(); ++i) {
    const Spinor& a = packet.amplitudes()[i];
    tau += packet.grid().weights[i] * (a * a.adjoint());
  }
  return DensityMatrix::normalized(tau);
}

std::vector<EntropyCell> entropy_surface(double delta_over_m, const std::vector<double>& beta_list,
                                         const std::vector<double>& theta_list, const GridSpec& grid) {
  if (beta_list.empty() || theta_list.empty()) throw ValidationError("entropy_surface: empty parameter list");
  PacketSpec spec;
  spec.spread = delta_over_m;
  spec.extent = grid.extent;
  spec.points = grid.points;
  const SpinorPacket rest = gaussian_packet(spec);
  std::vector<EntropyCell> rows;
  for (double theta : theta_list)
    for (double beta : beta_list) {
      EntropyCell c{theta, beta, gamma_parameter(delta_over_m, 1.0, beta), 0.0};
      c.entropy = von_neumann_entropy(reduced_spin(boost_packet(rest, frame_boost(beta, theta))));
      rows.push_back(c);
    }
  return rows;
}

ErrorScalingReport packet_error_scaling(double delta_over_m, const std::vector<double>& gamma_list, double theta,
                                        const GridSpec& grid) {
  PacketSpec spec;
  spec.spread = delta_over_m;
  spec.extent = grid.extent;
  spec.points = grid.points;
  const SpinorPacket up = gaussian_packet(spec);
  spec.spin_direction = -Eigen::Vector3d::UnitZ();
  const SpinorPacket down = gaussian_packet(spec);

  ErrorScalingReport report;
  std::vector<double> lx, ly;
  for (double g : gamma_list) {
    const LorentzTransform lambda = frame_boost(beta_for_gamma(delta_over_m, g), theta);
    const SpinorPacket up_b = boost_packet(up, lambda);
    const SpinorPacket down_b = boost_packet(down, lambda);
    const double pe = error_probability(reduced_spin(up_b), reduced_spin(down_b));
    const LorentzTransform back = lambda.inverse();
    const double restored =
        error_probability(reduced_spin(boost_packet(up_b, back)), reduced_spin(boost_packet(down_b, back)));
    report.gammas.push_back(g);
    report.errors.push_back(pe);
    report.restored_error = std::max(report.restored_error, restored);
    if (g > 0.0 && pe > 0.0) {
      lx.push_back(std::log(g));
      ly.push_back(std::log(pe));
    }
  }
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    report.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  } else {
    report.exponent = std::nan("");
  }
  return report;
}

NonCovarianceWitness non_covariance_witness(double narrow_over_m, double wide_over_m, double beta, double theta,
                                            const GridSpec& grid) {
  const LorentzTransform lambda = frame_boost(beta, theta);
  auto spectrum = [&](double spread) {
    PacketSpec spec;
    spec.spread = spread;
    spec.extent = grid.extent;
    spec.points = grid.points;
    Eigen::VectorXd ev = reduced_spin(boost_packet(gaussian_packet(spec), lambda)).eigenvalues();
    std::sort(ev.begin(), ev.end());
    return Eigen::Vector2d(ev(0), ev(1));
  };
  NonCovarianceWitness w;
  w.spectrum_narrow = spectrum(narrow_over_m);
  w.spectrum_wide = spectrum(wide_over_m);
  w.max_difference = (w.spectrum_narrow - w.spectrum_wide).cwiseAbs().maxCoeff();
  return w;
}

CpFailureWitness cp_failure_witness(double delta_over_m, double beta, double theta, const GridSpec& grid) {
  PacketSpec spec;
  spec.spread = delta_over_m;
  spec.extent = grid.extent;
  spec.points = grid.points;
  const SpinorPacket up = gaussian_packet(spec);
  spec.spin_direction = -Eigen::Vector3d::UnitZ();
  const SpinorPacket down = gaussian_packet(spec);
  const LorentzTransform lambda = frame_boost(beta, theta);
  const SpinorPacket up_b = boost_packet(up, lambda);
  const SpinorPacket down_b = boost_packet(down, lambda);
  CpFailureWitness w;
  w.error_moving = error_probability(reduced_spin(up_b), reduced_spin(down_b));
  const LorentzTransform back = lambda.inverse();
  w.error_rest = error_probability(reduced_spin(boost_packet(up_b, back)), reduced_spin(boost_packet(down_b, back)));
  return w;
}

BipartitePacket::BipartitePacket(MomentumGrid grid1, MomentumGrid grid2, Eigen::MatrixXcd amplitudes, double tol_norm)
    : g1_(std::move(grid1)), g2_(std::move(grid2)), amps_(std::move(amplitudes)) {
  check_grid(g1_, "BipartitePacket");
  check_grid(g2_, "BipartitePacket");
  if (amps_.rows() != 4 || static_cast<std::size_t>(amps_.cols()) != g1_.size() * g2_.size())
    throw StructuralError("BipartitePacket: amplitude block does not match the product grid");
  const double n = norm();
  if (std::abs(n - 1.0) > tol_norm) {
    std::ostringstream os;
    os << "BipartitePacket: norm " << n << " differs from 1";
    throw ValidationError(os.str());
  }
}

double BipartitePacket::norm() const {
  const std::size_t n2 = g2_.size();
  double s = 0.0;
  for (std::size_t i = 0; i < g1_.size(); ++i)
    for (std::size_t j = 0; j < n2; ++j)
      s += g1_.weights[i] * g2_.weights[j] * amps_.col(static_cast<Eigen::Index>(i * n2 + j)).squaredNorm();
  return s;
}

BipartitePacket bipartite_gaussian(const BipartiteSpec& spec) {
  if (std::abs(spec.spin_state.squaredNorm() - 1.0) > 1e-8)
    throw ValidationError("bipartite_gaussian: spin state is not normalized");
  auto [g1, f1] = gaussian_grid(spec.mass1, spec.mean1, spec.spread, spec.extent, spec.points);
  auto [g2, f2] = gaussian_grid(spec.mass2, spec.mean2, spec.spread, spec.extent, spec.points);

  // Quadrature check against the exact Gaussian norm (2 pi)^{3/2} spread^3
  // per particle.
  if (spec.points > 1) {
    for (const auto* gf : {&f1, &f2}) {
      const MomentumGrid& g = gf == &f1 ? g1 : g2;
      double q = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) q += g.weights[i] * (*gf)[i] * (*gf)[i];
      const double exact = std::pow(2.0 * std::numbers::pi, 1.5) * std::pow(spec.spread, 3);
      if (std::abs(q / exact - 1.0) > 1e-3) throw ValidationError("bipartite_gaussian: grid too coarse to normalize");
    }
  }

  double n1 = 0.0, n2 = 0.0;
  for (std::size_t i = 0; i < g1.size(); ++i) n1 += g1.weights[i] * f1[i] * f1[i];
  for (std::size_t j = 0; j < g2.size(); ++j) n2 += g2.weights[j] * f2[j] * f2[j];
  const double scale = 1.0 / std::sqrt(n1 * n2);
  Eigen::MatrixXcd amps(4, static_cast<Eigen::Index>(g1.size() * g2.size()));
  for (std::size_t i = 0; i < g1.size(); ++i)
    for (std::size_t j = 0; j < g2.size(); ++j)
      amps.col(static_cast<Eigen::Index>(i * g2.size() + j)) = (f1[i] * f2[j] * scale) * spec.spin_state;
  return BipartitePacket(std::move(g1), std::move(g2), std::move(amps));
}

BipartitePacket boost_bipartite(const BipartitePacket& packet, const LorentzTransform& lambda) {
  const std::vector<Matrix> d1 = wigner_factors(packet.grid1(), lambda);
  const std::vector<Matrix> d2 = wigner_factors(packet.grid2(), lambda);
  const std::size_t n2 = d2.size();
  Eigen::MatrixXcd amps(4, packet.amplitudes().cols());
  for (std::size_t i = 0; i < d1.size(); ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      const auto c = static_cast<Eigen::Index>(i * n2 + j);
      const Eigen::Matrix4cd dd = kron(d1[i], d2[j]);
      amps.col(c) = dd * packet.amplitudes().col(c);
    }
  return BipartitePacket(boost_grid(packet.grid1(), lambda), boost_grid(packet.grid2(), lambda), std::move(amps));
}

DensityMatrix reduced_spin_pair(const BipartitePacket& packet, double tol_norm) {
  if (std::abs(packet.norm() - 1.0) > tol_norm) throw ValidationError("reduced_spin_pair: packet is not normalized");
  const auto& w1 = packet.grid1().weights;
  const auto& w2 = packet.grid2().weights;
  Eigen::VectorXd w(packet.amplitudes().cols());
  for (std::size_t i = 0; i < w1.size(); ++i)
    for (std::size_t j = 0; j < w2.size(); ++j) w(static_cast<Eigen::Index>(i * w2.size() + j)) = w1[i] * w2[j];
  const Matrix rho = packet.amplitudes() * w.asDiagonal() * packet.amplitudes().adjoint();
  return DensityMatrix::normalized(rho);
}

ConcurrenceRow concurrence_at(const BipartitePacket& rest, double rapidity, const Eigen::Vector3d& axis) {
  ConcurrenceRow row;
  row.rapidity = rapidity;
  if (rapidity == 0.0) {
    row.concurrence = row.restored = concurrence(reduced_spin_pair(rest));
    return row;
  }
  const LorentzTransform lambda = boost_rapidity(axis, rapidity);
  const BipartitePacket moved = boost_bipartite(rest, lambda);
  row.concurrence = concurrence(reduced_spin_pair(moved));
  row.restored = concurrence(reduced_spin_pair(boost_bipartite(moved, lambda.inverse())));
  return row;
}

std::vector<ConcurrenceRow> bipartite_boost_concurrence(const BipartiteSpec& spec, const std::vector<double>& rapidities,
                                                        const Eigen::Vector3d& axis) {
  const BipartitePacket rest = bipartite_gaussian(spec);
  std::vector<ConcurrenceRow> rows;
  for (double r : rapidities) rows.push_back(concurrence_at(rest, r, axis));
  return rows;
}

}  // namespace relqi
