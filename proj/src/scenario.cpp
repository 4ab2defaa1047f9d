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

#include "relqi/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include "relqi/channel.hpp"
#include "relqi/errors.hpp"
#include "relqi/photon.hpp"
#include "relqi/random.hpp"
#include "relqi/wavepacket.hpp"

namespace relqi {

namespace {

using json = nlohmann::json;
constexpr double kPi = std::numbers::pi;
constexpr double kBig = std::numeric_limits<double>::max();

GridSpec packet_grid(Params& p, int points) {
  GridSpec g;
  g.points = p.integer("grid.points", points, 1, 41);
  g.extent = p.real("grid.extent", 4.0, 3.0, 10.0);
  return g;
}

ConeGrid cone_grid(Params& p, int cos_nodes, int phi_nodes) {
  ConeGrid g;
  g.cos_nodes = p.integer("grid.cos_nodes", cos_nodes, 32, 4096);
  g.phi_nodes = p.integer("grid.phi_nodes", phi_nodes, 1, 4096);
  g.taper_fraction = p.real("grid.taper_fraction", 0.1, 0.0, 1.0);
  return g;
}

Report fig2_entropy(Params& p) {
  Report r{"fig2-entropy"};
  const double d = p.real("delta_over_m", 0.5, 1e-6, 10.0);
  const auto gammas = p.reals("gammas", {0.0, 0.01, 0.02, 0.05, 0.1, 0.2, 0.3}, 0.0, kBig);
  const int n = p.integer("theta_steps", 9, 1, 361);
  const GridSpec grid = packet_grid(p, 15);
  std::vector<double> betas, thetas;
  for (double g : gammas) betas.push_back(beta_for_gamma(d, g));
  for (int i = 0; i < n; ++i) thetas.push_back(n == 1 ? 0.0 : kPi * i / (n - 1));
  const auto cells = entropy_surface(d, betas, thetas, grid);
  double smax = 0.0;
  for (std::size_t t = 0; t < thetas.size(); ++t)
    for (std::size_t b = 0; b < betas.size(); ++b) {
      const double s = cells[t * betas.size() + b].entropy;
      smax = std::max(smax, s);
      r.add_row({thetas[t], gammas[b], s});
    }
  r.summary["max_entropy_nats"] = smax;
  return r;
}

Report pe_gamma_scaling(Params& p) {
  Report r{"pe-gamma-scaling"};
  const double d = p.real("delta_over_m", 0.1, 1e-6, 10.0);
  const auto gammas = p.reals("gammas", {0.00625, 0.0125, 0.025, 0.05}, 0.0, kBig);
  const double theta = p.real("theta", kPi / 2, 0.0, kPi);
  const auto s = packet_error_scaling(d, gammas, theta, packet_grid(p, 15));
  for (std::size_t i = 0; i < s.gammas.size(); ++i)
    r.add_row({s.gammas[i], beta_for_gamma(d, s.gammas[i]), s.errors[i]});
  r.summary["exponent"] = s.exponent;
  r.summary["restored_error"] = s.restored_error;
  return r;
}

Report bipartite(Params& p) {
  Report r{"bipartite-concurrence"};
  BipartiteSpec spec;
  spec.spread = p.real("spread", 0.3, 1e-3, 2.0);
  const auto rapidities = p.reals("rapidities", {0.0, 0.5, 1.0, 2.0}, -10.0, 10.0);
  const std::string axis = p.choice("axis", "x", {"x", "y", "z"});
  const GridSpec g = packet_grid(p, 9);
  spec.points = g.points;
  spec.extent = g.extent;
  const Eigen::Vector3d n = axis == "x" ? Eigen::Vector3d::UnitX()
                            : axis == "y" ? Eigen::Vector3d::UnitY()
                                          : Eigen::Vector3d::UnitZ();
  double cmin = 1.0;
  for (const auto& row : bipartite_boost_concurrence(spec, rapidities, n)) {
    r.add_row({row.rapidity, row.concurrence, row.restored});
    cmin = std::min(cmin, row.concurrence);
  }
  r.summary["min_concurrence"] = cmin;
  return r;
}

Report photon_doppler(Params& p) {
  Report r{"photon-doppler"};
  const auto apertures = p.reals("apertures", {0.05}, 1e-6, kPi / 2);
  const auto velocities = p.reals("velocities", {-0.5, -0.25, 0.25, 0.5}, -0.999, 0.999);
  const ConeGrid grid = cone_grid(p, 32, 64);
  for (double a : apertures)
    for (double v : velocities) {
      const auto d = doppler_error_ratio(a, v, grid);
      r.add_row({a, v, d.p_e, d.p_e_boosted, d.ratio});
    }
  return r;
}

Report photon_povm(Params& p) {
  Report r{"photon-povm"};
  const int count = p.integer("packets", 100, 1, 100000);
  const double aperture = p.real("aperture", 0.2, 1e-6, kPi / 2);
  const ConeGrid grid = cone_grid(p, 32, 16);
  double worst_sum = 0.0, worst_diff = 0.0;
  for (int i = 0; i < count; ++i) {
    auto eng = rng::engine_for(p.seed(), static_cast<std::uint64_t>(i));
    const auto packet = random_polarized_packet(aperture, grid, eng);
    const double ex = povm_expectation(packet, Axis::x), ey = povm_expectation(packet, Axis::y),
                 ez = povm_expectation(packet, Axis::z);
    const double diff = (effective_density_matrix(packet) - naive_density_matrix(packet)).cwiseAbs().maxCoeff();
    worst_sum = std::max(worst_sum, std::abs(ex + ey + ez - 1.0));
    worst_diff = std::max(worst_diff, diff);
    r.add_row({i, ex, ey, ez, ex + ey + ez, diff});
  }
  r.summary["max_completeness_error"] = worst_sum;
  r.summary["max_effective_naive_difference"] = worst_diff;
  return r;
}

Report causality_bell(Params& p) {
  Report r{"causality-bell"};
  SemicausalOptions opts;
  opts.tol = p.tol("semicausal", 1e-12);
  opts.haar_draws = p.integer("haar_draws", 200, 0, 100000);
  opts.seed = p.seed();
  const int random_probes = p.integer("random_probes", 20, 0, 100000);
  const auto probes = default_probe_states(2, 2, random_probes, p.seed());
  const std::vector<std::pair<std::string, BipartiteOperation>> ops = {
      {"incomplete-bell", incomplete_bell_measurement()},
      {"complete-bell", complete_bell_measurement()},
      {"product-pvm", product_basis_pvm()}};
  for (const auto& [name, op] : ops)
    for (auto dir : {Direction::b_to_a, Direction::a_to_b}) {
      const auto v = is_semicausal(op, dir, probes, opts);
      r.add_row({name, dir == Direction::b_to_a ? "b_to_a" : "a_to_b",
                 v.witness ? v.witness->pre_operation : std::string("none"), v.witness ? v.witness->advantage : 0.5,
                 opts.tol, v.max_shift, v.semicausal});
    }
  // Bob's inputs |0> and |1> with Alice's qubit in |0>.
  const Vector s00 = Vector::Unit(4, 0), s01 = Vector::Unit(4, 1);
  r.summary["incomplete_bell_advantage"] = marginal_distinguishability(
      incomplete_bell_measurement(), DensityMatrix::from_pure(PureState(s01)), DensityMatrix::from_pure(PureState(s00)),
      Direction::b_to_a);
  return r;
}

Report teleport_check(Params& p) {
  Report r{"teleport-check"};
  const int trials = p.integer("trials", 100, 1, 1000000);
  double worst = 0.0, fmin = 1.0;
  for (int i = 0; i < trials; ++i) {
    auto eng = rng::engine_for(p.seed(), static_cast<std::uint64_t>(i));
    const Vector psi = rng::haar_state(2, eng).amplitudes();
    const double res = teleport_identity_residual(psi(0), psi(1));
    const double f = teleport(psi(0), psi(1)).min_fidelity;
    worst = std::max(worst, res);
    fmin = std::min(fmin, f);
    r.add_row({i, res, f});
  }
  r.summary["max_identity_residual"] = worst;
  r.summary["min_fidelity"] = fmin;
  return r;
}

Report chsh(Params& p) {
  Report r{"chsh"};
  const int random_states = p.integer("random_states", 10, 0, 10000);
  const double werner = p.real("werner_p", 0.8, 0.0, 1.0);
  auto add = [&](const std::string& label, const DensityMatrix& rho) {
    const double a = chsh_optimize(rho, ChshStrategy::analytic).zeta;
    r.add_row({label, a, chsh_optimize(rho, ChshStrategy::grid).zeta});
    return a;
  };
  const auto singlet = DensityMatrix::from_pure(PureState(bell::psi_minus()));
  r.summary["singlet_zeta"] = add("singlet", singlet);
  add("phi_plus", DensityMatrix::from_pure(PureState(bell::phi_plus())));
  add("werner", DensityMatrix(werner * singlet.matrix() + (1.0 - werner) * Matrix::Identity(4, 4) / 4.0));
  for (int i = 0; i < random_states; ++i) {
    auto eng = rng::engine_for(p.seed(), static_cast<std::uint64_t>(i));
    const auto a = rng::haar_state(2, eng), b = rng::haar_state(2, eng);
    add("product#" + std::to_string(i), DensityMatrix::from_pure(PureState(kron(a.amplitudes(), b.amplitudes()))));
    add("random#" + std::to_string(i), rng::random_density(4, eng));
  }
  r.summary["tsirelson"] = std::sqrt(2.0);
  return r;
}

Report cluster_bound(Params& p) {
  Report r{"cluster-bound"};
  const double m = p.real("mass", 1.0, 0.0, kBig);
  for (double sep : p.reals("separations", {0.5, 1.0, 2.0, 4.0, 8.0}, 0.0, kBig))
    r.add_row({m, sep, cluster_chsh_bound(m, sep)});
  return r;
}

Report unruh(Params& p) {
  Report r{"unruh"};
  const auto accelerations = p.reals("accelerations", {9.8, 1e20}, -kBig, kBig);
  const auto omegas = p.reals("omegas", {0.1, 0.5, 1.0, 2.0}, -kBig, kBig);
  const double a_nat = p.real("natural_acceleration", 1.0, -kBig, kBig);
  const PhysicalConstants k = read_constants(p);
  for (double a : accelerations) r.add_row({a, unruh_temperature(a, k)});
  double worst = 0.0;
  for (double w : omegas) {
    const double expected = std::exp(2.0 * kPi * w / a_nat);
    worst = std::max(worst, std::abs(detector_response(-w, a_nat) / detector_response(w, a_nat) / expected - 1.0));
  }
  r.summary["detailed_balance_max_error"] = worst;
  r.summary["response_at_zero_gap"] = detector_response(0.0, a_nat);
  return r;
}

Report rindler(Params& p) {
  Report r{"rindler"};
  const auto ratios =
      p.reals("omega_over_a", {0.05, 0.1, std::log(2.0) / (2.0 * kPi), 0.2, 0.5, 1.0}, 0.0, kBig);
  const int n_max = p.integer("n_max", 0, 0, 1000000);
  double worst = 0.0;
  for (double x : ratios) {
    const auto s = rindler_mode_state(x, 1.0, n_max);
    const double n = s.mean_occupation();
    worst = std::max(worst, std::abs(s.entropy() - thermal_oscillator_entropy(thermal_mean_occupation(x, 1.0))));
    r.add_row({x, n, s.entropy()});
  }
  r.summary["max_oracle_deviation"] = worst;
  return r;
}

Report blackhole_evaporate(Params& p) {
  Report r{"blackhole-evaporate"};
  const double m0 = p.real("M0_kg", 5e11, -kBig, kBig);
  const double k_evap = p.real("k_evap", kDefaultEvaporationConstant, -kBig, kBig);
  const int samples = p.integer("samples", 9, 2, 1000001);
  const PhysicalConstants k = read_constants(p);
  const double te = evaporation_time(m0, k_evap);
  for (int i = 0; i < samples; ++i) {
    const double t = i == samples - 1 ? te : te * i / (samples - 1);
    r.add_row({t, evaporate(m0, t, k_evap).mass});
  }
  const BlackHole bh(m0);
  r.summary["M0_kg"] = m0;
  r.summary["t_E_s"] = te;
  r.summary["hawking_temperature_K"] = hawking_temperature(bh, k);
  r.summary["bekenstein_entropy"] = bekenstein_entropy(bh, k);
  return r;
}

Report superscatter_demo(Params& p) {
  Report r{"superscatter-demo"};
  const std::string gate = p.choice("gate", "cnot", {"cnot", "identity", "swap"});
  const std::string input = p.choice("input", "plus", {"plus", "minus", "zero", "one"});
  const double tol = p.tol("unitary", 1e-10);
  Matrix s = Matrix::Identity(4, 4);
  if (gate == "cnot") s.bottomRightCorner(2, 2) = pauli::x();
  if (gate == "swap") {
    s = Matrix::Zero(4, 4);
    s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
  }
  const double h = 1.0 / std::sqrt(2.0);
  const Vector psi = input == "plus"    ? Vector(Eigen::Vector2cd(h, h))
                     : input == "minus" ? Vector(Eigen::Vector2cd(h, -h))
                     : input == "zero"  ? Vector(Eigen::Vector2cd(1, 0))
                                        : Vector(Eigen::Vector2cd(0, 1));
  const auto rho = DensityMatrix::from_pure(PureState(psi));
  const auto out = superscattering(s, rho, 2, tol);
  const auto cert = choi_and_cp_check(superscattering_channel(s, 2, 2, tol));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.add_row({i, j, out.matrix()(i, j).real(), out.matrix()(i, j).imag()});
  r.summary["entropy_in"] = von_neumann_entropy(rho);
  r.summary["entropy_out"] = von_neumann_entropy(out);
  r.summary["trace_out"] = out.matrix().trace().real();
  r.summary["cp_min_eig"] = cert.min_eig;
  r.summary["is_cp"] = cert.is_cp;
  return r;
}

const std::map<std::string, std::function<Report(Params&)>>& registry() {
  static const std::map<std::string, std::function<Report(Params&)>> r = {
      {"fig2-entropy", fig2_entropy},         {"pe-gamma-scaling", pe_gamma_scaling},
      {"bipartite-concurrence", bipartite},   {"photon-doppler", photon_doppler},
      {"photon-povm", photon_povm},           {"causality-bell", causality_bell},
      {"teleport-check", teleport_check},     {"chsh", chsh},
      {"cluster-bound", cluster_bound},       {"unruh", unruh},
      {"rindler", rindler},                   {"blackhole-evaporate", blackhole_evaporate},
      {"superscatter-demo", superscatter_demo}};
  return r;
}

}  // namespace

std::vector<std::string> scenario_ids() {
  std::vector<std::string> ids;
  for (const auto& [k, v] : registry()) ids.push_back(k);
  return ids;
}

PhysicalConstants read_constants(Params& p) {
  const auto si = PhysicalConstants::si();
  PhysicalConstants k;
  k.hbar = p.real("constants.hbar", si.hbar, -kBig, kBig);
  k.c = p.real("constants.c", si.c, -kBig, kBig);
  k.G = p.real("constants.G", si.G, -kBig, kBig);
  k.k_B = p.real("constants.k_B", si.k_B, -kBig, kBig);
  k.validate();
  return k;
}

nlohmann::json make_meta(const std::string& id, const Params& p) {
  json meta;
  meta["version"] = version_string();
  meta["scenario"] = id;
  meta["seed"] = p.seed();
  meta["params"] = p.used_params();
  meta["tolerances"] = p.used_tolerances();
  return meta;
}

Report run_scenario(const RunConfig& config) {
  if (config.scenario.empty()) throw UsageError("no scenario given");
  const auto it = registry().find(config.scenario);
  if (it == registry().end()) throw UsageError("unknown scenario '" + config.scenario + "'");
  Params p(config);
  Report r = it->second(p);
  p.finish();
  r.meta = make_meta(config.scenario, p);
  return r;
}

OutputFormat output_format(const RunConfig& config, const std::string& id) {
  return config.format.value_or(schema_for(id).default_format);
}

}  // namespace relqi
