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

#include "relqi/horizon.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "relqi/errors.hpp"

namespace relqi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTailTarget = 1e-12;

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError(std::string(what) + " must be finite and positive");
}

}  // namespace

void PhysicalConstants::validate() const {
  require_positive(hbar, "constants: hbar");
  require_positive(c, "constants: c");
  require_positive(G, "constants: G");
  require_positive(k_B, "constants: k_B");
}

double unruh_temperature(double acceleration, const PhysicalConstants& k) {
  k.validate();
  require_positive(acceleration, "unruh_temperature: acceleration");
  return k.hbar * acceleration / (2.0 * kPi * k.c * k.k_B);
}

double detector_response(double omega, double acceleration) {
  require_positive(acceleration, "detector_response: acceleration");
  if (omega == 0.0) return acceleration / (4.0 * kPi * kPi);
  const double x = 2.0 * kPi * omega / acceleration;
  if (x > 700.0) return 0.0;  // exp overflow; the factor underflows anyway
  return omega / (2.0 * kPi * std::expm1(x));
}

double thermal_bath_response(double omega, double temperature) {
  require_positive(temperature, "thermal_bath_response: temperature");
  if (omega == 0.0) return temperature / (2.0 * kPi);
  const double x = omega / temperature;
  if (x > 700.0) return 0.0;
  return omega / (2.0 * kPi * std::expm1(x));
}

double RindlerModeState::ratio() const { return std::exp(-2.0 * kPi * omega / acceleration); }

double RindlerModeState::mean_occupation() const {
  double s = 0.0;
  for (std::size_t n = 0; n < probabilities.size(); ++n) s += static_cast<double>(n) * probabilities[n];
  return s;
}

double RindlerModeState::entropy() const {
  double s = 0.0;
  for (double p : probabilities)
    if (p > 0.0) s -= p * std::log(p);
  return s;
}

RindlerModeState rindler_mode_state(double omega, double acceleration, int n_max) {
  require_positive(omega, "rindler_mode_state: omega");
  require_positive(acceleration, "rindler_mode_state: acceleration");
  if (n_max < 0) throw ValidationError("rindler_mode_state: n_max must be nonnegative");
  RindlerModeState st;
  st.omega = omega;
  st.acceleration = acceleration;
  const double q = st.ratio();
  const double one_minus_q = -std::expm1(-2.0 * kPi * omega / acceleration);
  // Tail beyond n is q^{n+1}; extend until it is negligible.
  const int needed = q > 0.0 ? static_cast<int>(std::ceil(std::log(kTailTarget) / std::log(q))) : 0;
  const int n = std::max(n_max, needed);
  double qn = 1.0;
  for (int i = 0; i <= n; ++i) {
    st.probabilities.push_back(qn * one_minus_q);
    qn *= q;
  }
  st.tail = qn;
  return st;
}

double thermal_mean_occupation(double omega, double acceleration) {
  require_positive(omega, "thermal_mean_occupation: omega");
  require_positive(acceleration, "thermal_mean_occupation: acceleration");
  return 1.0 / std::expm1(2.0 * kPi * omega / acceleration);
}

double thermal_oscillator_entropy(double n) {
  if (!(n >= 0.0)) throw ValidationError("thermal_oscillator_entropy: negative occupation");
  if (n == 0.0) return 0.0;
  return (n + 1.0) * std::log1p(n) - n * std::log(n);
}

BlackHole::BlackHole(double mass) : mass_(mass) { require_positive(mass, "BlackHole: mass"); }

double surface_gravity(const BlackHole& bh, const PhysicalConstants& k) {
  k.validate();
  return std::pow(k.c, 4) / (4.0 * k.G * bh.mass());
}

double hawking_temperature(const BlackHole& bh, const PhysicalConstants& k) {
  k.validate();
  return k.hbar * std::pow(k.c, 3) / (8.0 * kPi * k.G * bh.mass() * k.k_B);
}

double horizon_area(const BlackHole& bh, const PhysicalConstants& k) {
  k.validate();
  const double rs = 2.0 * k.G * bh.mass() / (k.c * k.c);
  return 4.0 * kPi * rs * rs;
}

double planck_length_squared(const PhysicalConstants& k) {
  k.validate();
  return k.hbar * k.G / std::pow(k.c, 3);
}

double bekenstein_entropy(const BlackHole& bh, const PhysicalConstants& k) {
  return horizon_area(bh, k) / (4.0 * planck_length_squared(k));
}

double redshifted_acceleration(double mass, double radius) {
  require_positive(mass, "redshifted_acceleration: mass");
  if (!(radius > 2.0 * mass)) throw ValidationError("redshifted_acceleration: radius must exceed 2M");
  const double alpha = std::sqrt(1.0 - 2.0 * mass / radius);
  const double a = mass / (radius * radius * alpha);
  return a * alpha;
}

double first_law_residual(double mass, double dm) {
  const BlackHole bh(mass);
  const double kappa = surface_gravity(bh);
  // A(M + dM) - A(M) = 16 pi dM (2M + dM), formed without cancellation.
  const double da = 16.0 * kPi * dm * (2.0 * mass + dm);
  return std::abs(dm - kappa / (8.0 * kPi) * da);
}

double evaporation_time(double m0, double k_evap) {
  require_positive(m0, "evaporation_time: mass");
  require_positive(k_evap, "evaporation_time: k_evap");
  return k_evap * m0 * m0 * m0;
}

EvaporationState evaporate(double m0, double t, double k_evap) {
  const double te = evaporation_time(m0, k_evap);
  if (!(t >= 0.0)) throw ValidationError("evaporate: time must be nonnegative");
  if (t >= te) return {0.0, true};
  return {m0 * std::cbrt(1.0 - t / te), false};
}

DensityMatrix superscattering(const Matrix& s, const DensityMatrix& rho_in, int hole_dim, double tol) {
  if (hole_dim < 1) throw StructuralError("superscattering: hole dimension must be positive");
  const int d = rho_in.dim();
  if (s.rows() != d * hole_dim || s.cols() != d * hole_dim)
    throw StructuralError("superscattering: S does not act on in-space (x) hole-space");
  if (!is_unitary(s, tol)) throw ValidationError("superscattering: S is not unitary");
  Matrix hole = Matrix::Zero(hole_dim, hole_dim);
  hole(0, 0) = 1.0;
  const Matrix joint = s * kron(rho_in.matrix(), hole) * s.adjoint();
  return DensityMatrix(partial_trace(joint, SubsystemSplit{{d, hole_dim}, {0}}));
}

KrausSet superscattering_channel(const Matrix& s, int in_dim, int hole_dim, double tol) {
  if (in_dim < 1 || hole_dim < 1) throw StructuralError("superscattering_channel: dimensions must be positive");
  std::vector<Vector> basis;
  for (int m = 0; m < hole_dim; ++m) basis.push_back(PureState::basis(hole_dim, m).amplitudes());
  if (s.rows() != in_dim * hole_dim) throw StructuralError("superscattering_channel: S has the wrong dimension");
  return kraus_from_unitary(s, PureState::basis(hole_dim, 0), {basis}, tol);
}

}  // namespace relqi
