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

#include <vector>

#include "relqi/channel.hpp"
#include "relqi/qstate.hpp"

namespace relqi {

struct PhysicalConstants {
  double hbar = 1.054571817e-34;  // J s
  double c = 299792458.0;         // m / s
  double G = 6.67430e-11;         // m^3 / (kg s^2)
  double k_B = 1.380649e-23;      // J / K

  static PhysicalConstants si() { return {}; }
  static PhysicalConstants geometric() { return {1.0, 1.0, 1.0, 1.0}; }
  // Throws ValidationError unless every constant is finite and positive.
  void validate() const;
};

// Seconds per kg^3 in t_E = k_evap M0^3.
inline constexpr double kDefaultEvaporationConstant = 4.9e-9;

double unruh_temperature(double acceleration, const PhysicalConstants& k = PhysicalConstants::si());

// Response per unit time of a uniformly accelerated detector with energy gap
// omega (negative for de-excitation), natural units:
// F = omega / (2 pi (exp(2 pi omega / a) - 1)).
double detector_response(double omega, double acceleration);
// Same factor for an inertial detector in a thermal bath at temperature T.
double thermal_bath_response(double omega, double temperature);

struct RindlerModeState {
  double omega = 0.0;
  double acceleration = 0.0;
  std::vector<double> probabilities;  // p_0 ... p_nmax
  double tail = 0.0;                  // probability beyond n_max

  int n_max() const { return static_cast<int>(probabilities.size()) - 1; }
  double ratio() const;  // exp(-2 pi omega / a)
  double mean_occupation() const;
  double entropy() const;  // nats, from the stored probabilities
};

// Occupation statistics of a Rindler mode in the Minkowski vacuum. The
// truncation grows past n_max until the geometric tail drops below 1e-12.
RindlerModeState rindler_mode_state(double omega, double acceleration, int n_max = 0);
double thermal_mean_occupation(double omega, double acceleration);
double thermal_oscillator_entropy(double mean_occupation);

class BlackHole {
 public:
  explicit BlackHole(double mass);
  double mass() const { return mass_; }

 private:
  double mass_;
};

double surface_gravity(const BlackHole& bh, const PhysicalConstants& k = PhysicalConstants::geometric());
double hawking_temperature(const BlackHole& bh, const PhysicalConstants& k = PhysicalConstants::geometric());
double horizon_area(const BlackHole& bh, const PhysicalConstants& k = PhysicalConstants::geometric());
double planck_length_squared(const PhysicalConstants& k);
// Dimensionless (units of k_B).
double bekenstein_entropy(const BlackHole& bh, const PhysicalConstants& k = PhysicalConstants::geometric());

// Product of the proper acceleration of a static observer at radius r and
// the redshift factor, geometric units; tends to the surface gravity at 2M.
double redshifted_acceleration(double mass, double radius);

// |dM - kappa/(8 pi) (A(M + dM) - A(M))|, geometric units.
double first_law_residual(double mass, double dm);

double evaporation_time(double m0, double k_evap = kDefaultEvaporationConstant);

struct EvaporationState {
  double mass = 0.0;
  bool evaporated = false;
};

EvaporationState evaporate(double m0, double t, double k_evap = kDefaultEvaporationConstant);

// rho_out = tr_hole(S (rho (x) |0><0|) S^dagger)
DensityMatrix superscattering(const Matrix& s, const DensityMatrix& rho_in, int hole_dim, double tol = 1e-10);
KrausSet superscattering_channel(const Matrix& s, int in_dim, int hole_dim, double tol = 1e-10);

}  // namespace relqi
