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

#include "relqi/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "relqi/channel.hpp"
#include "relqi/errors.hpp"
#include "relqi/horizon.hpp"
#include "relqi/lorentz.hpp"
#include "relqi/photon.hpp"
#include "relqi/random.hpp"
#include "relqi/scenario.hpp"
#include "relqi/wavepacket.hpp"

namespace relqi {

namespace {

constexpr double kPi = std::numbers::pi;
// Hawking temperature of 1.989e30 kg from CODATA 2018 constants.
constexpr double kSolarHawkingPin = 6.168429712630829e-08;

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

// Collects the checks of one criterion.
class Checker {
 public:
  Checker(Params& p, CriterionResult& out) : p_(p), out_(out) {}

  void check(const std::string& label, const std::string& tol_name, double measured) {
    const ToleranceSpec* spec = nullptr;
    for (const auto& t : selfcheck_tolerances())
      if (t.name == tol_name) spec = &t;
    if (!spec) throw std::logic_error("selfcheck: undeclared tolerance " + tol_name);
    CheckResult c;
    c.label = label;
    c.tolerance_name = tol_name;
    c.measured = measured;
    c.default_tolerance = spec->value;
    c.tolerance = p_.tol(tol_name, spec->value);
    c.bound = spec->bound;
    c.quadrature_limited = spec->quadrature_limited;
    c.passed = pass(measured, c.tolerance, c.bound);
    out_.checks.push_back(c);
  }

  // Exact logical property: passes when `violations` is zero.
  void logic(const std::string& label, int violations) {
    CheckResult c;
    c.label = label;
    c.measured = violations;
    c.passed = violations == 0;
    out_.checks.push_back(c);
  }

  static bool pass(double measured, double tol, Bound b) {
    if (std::isnan(measured)) return false;
    return b == Bound::upper ? measured <= tol : measured >= tol;
  }

 private:
  Params& p_;
  CriterionResult& out_;
};

using CriterionFn = std::function<void(Checker&, std::uint64_t seed)>;

void c01_incomplete_bell(Checker& c, std::uint64_t) {
  const auto s00 = DensityMatrix::from_pure(PureState(Vector::Unit(4, 0)));
  const auto s01 = DensityMatrix::from_pure(PureState(Vector::Unit(4, 1)));
  const double adv = marginal_distinguishability(incomplete_bell_measurement(), s01, s00, Direction::b_to_a);
  c.check("|advantage - 0.75|", "bell_advantage", std::abs(adv - 0.75));
}

void c02_complete_bell(Checker& c, std::uint64_t seed) {
  const auto probes = default_probe_states(2, 2, 20, seed);
  SemicausalOptions opts;
  opts.seed = seed;
  double worst = 0.0;
  for (auto dir : {Direction::b_to_a, Direction::a_to_b})
    worst = std::max(worst, is_semicausal(complete_bell_measurement(), dir, probes, opts).max_shift);
  c.check("max marginal shift", "semicausal_shift", worst);
}

void c03_locc(Checker& c, std::uint64_t seed) {
  const auto povm = povm_of(product_basis_pvm().op);
  const auto protocol = product_basis_protocol();
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    auto eng = rng::engine_for(seed, 1000 + i);
    const auto rho = rng::random_density(4, eng);
    const auto global = povm.probabilities(rho);
    double tv = 0.0;
    for (const auto& [record, p] : simulate_locc_protocol(protocol, rho))
      tv += std::abs(p - global.at(2 * record[0] + record[1]));
    worst = std::max(worst, 0.5 * tv);
  }
  c.check("max total variation", "locc_tv", worst);
}

void c04_teleport(Checker& c, std::uint64_t seed) {
  double res = 0.0, fid = 0.0;
  for (int i = 0; i < 100; ++i) {
    auto eng = rng::engine_for(seed, 2000 + i);
    const Vector psi = rng::haar_state(2, eng).amplitudes();
    res = std::max(res, teleport_identity_residual(psi(0), psi(1)));
    fid = std::max(fid, std::abs(1.0 - teleport(psi(0), psi(1)).min_fidelity));
  }
  c.check("max identity residual", "teleport_residual", res);
  c.check("max |1 - fidelity|", "teleport_fidelity", fid);
}

void c05_chsh(Checker& c, std::uint64_t seed) {
  const auto singlet = DensityMatrix::from_pure(PureState(bell::psi_minus()));
  c.check("|singlet optimum - sqrt2|", "chsh_singlet", std::abs(chsh_optimize(singlet).zeta - std::sqrt(2.0)));
  double product = -1.0;
  for (int i = 0; i < 200; ++i) {
    auto eng = rng::engine_for(seed, 3000 + i);
    const auto a = rng::random_density(2, eng), b = rng::random_density(2, eng);
    product = std::max(product, chsh_optimize(a.tensor(b)).zeta);
  }
  c.check("max product optimum - 1", "chsh_product", product - 1.0);
  double draw = -10.0;
  for (int i = 0; i < 10000; ++i) {
    auto eng = rng::engine_for(seed, 10000 + i);
    const auto rho = rng::random_density(4, eng, 1 + i % 4);
    Matrix obs[4];
    for (auto& o : obs) o = bloch_observable(rng::random_direction(eng));
    draw = std::max(draw, chsh_value(rho, obs[0], obs[1], obs[2], obs[3]));
  }
  c.check("max random draw - sqrt2", "chsh_bound", draw - std::sqrt(2.0));
}

void c06_cp(Checker& c, std::uint64_t seed) {
  c.check("|transpose Choi min eig + 1/2|", "choi_transpose",
          std::abs(choi_and_cp_check(transpose_map(2)).min_eig + 0.5));
  int failures = 0;
  for (int i = 0; i < 50; ++i) {
    auto eng = rng::engine_for(seed, 4000 + i);
    const int env = 1 + i % 4;
    const Matrix u = rng::haar_unitary(2 * env, eng);
    std::vector<Matrix> kraus;
    for (int m = 0; m < env; ++m) kraus.push_back(u.block(2 * m, 0, 2, 2));
    if (!choi_and_cp_check(KrausSet::channel(kraus)).is_cp) ++failures;
  }
  for (double p : {0.0, 0.25, 0.5, 1.0})
    if (!choi_and_cp_check(depolarizing_channel(p)).is_cp) ++failures;
  c.logic("Kraus-built channels not certified CP", failures);
}

void c07_wigner(Checker& c, std::uint64_t seed) {
  double massive = 0.0, massless = 0.0;
  for (int i = 0; i < 1000; ++i) {
    auto eng = rng::engine_for(seed, 5000 + i);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double m = 0.1 + 3.0 * u(eng);
    const FourVector p = on_shell(5.0 * u(eng) * rng::random_direction(eng), m);
    massive = std::max(massive, (standard_boost_massive(p, m) * FourVector(m, 0, 0, 0) - p).cwiseAbs().maxCoeff() /
                                    std::max(1.0, p(0)));
    const Eigen::Vector3d n = rng::random_direction(eng);
    const double e = 0.1 + 10.0 * u(eng);
    const FourVector k(e, e * n.x(), e * n.y(), e * n.z());
    massless = std::max(massless, (standard_boost_massless(k) * FourVector(1, 0, 0, 1) - k).cwiseAbs().maxCoeff() /
                                      std::max(1.0, e));
  }
  c.check("L(p) k_S - p, massive", "standard_boost", massive);
  c.check("L(k) k_S - k, massless", "standard_boost", massless);

  double rot = 0.0, collinear = 0.0;
  for (int i = 0; i < 200; ++i) {
    auto eng = rng::engine_for(seed, 6000 + i);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto r = rotation(rng::random_direction(eng), kPi * u(eng));
    const FourVector p = on_shell(4.0 * u(eng) * rng::random_direction(eng), 1.0);
    rot = std::max(rot, max_abs(wigner_rotation(r, p, 1.0).rotation - r.matrix().block<3, 3>(1, 1)));
    const Eigen::Vector3d n = rng::random_direction(eng);
    const FourVector q = on_shell(4.0 * u(eng) * n, 1.0);
    const auto w = wigner_rotation(boost_rapidity(n, 4.0 * u(eng) - 2.0), q, 1.0);
    collinear = std::max(collinear, max_abs(w.rotation - Eigen::Matrix3d::Identity()));
  }
  c.check("W(R, p) - R", "wigner_rotation", rot);
  c.check("collinear W - 1", "wigner_rotation", collinear);

  PacketSpec spec;
  spec.spread = 0.4;
  spec.points = 7;
  spec.spin_direction = Eigen::Vector3d(1, 1, 0);
  const auto packet = gaussian_packet(spec);
  double comp = 0.0;
  for (int i = 0; i < 3; ++i) {
    auto eng = rng::engine_for(seed, 7000 + i);
    std::uniform_real_distribution<double> u(0.0, 0.9);
    const auto a = boost(u(eng) * rng::random_direction(eng));
    const auto b = boost(u(eng) * rng::random_direction(eng)) * rotation(rng::random_direction(eng), 1.0 + u(eng));
    const auto twice = reduced_spin(boost_packet(boost_packet(packet, a), b)).matrix();
    const auto once = reduced_spin(boost_packet(packet, compose(b, a))).matrix();
    comp = std::max(comp, (twice - once).cwiseAbs().maxCoeff());
  }
  c.check("packet composition", "packet_composition", comp);
}

void c08_entropy(Checker& c, std::uint64_t) {
  const double d = 0.5;
  const std::vector<double> thetas = {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi};
  double zero = 0.0;
  for (const auto& cell : entropy_surface(d, {0.0}, thetas)) zero = std::max(zero, cell.entropy);
  c.check("max S at Gamma = 0", "entropy_zero", zero);

  const std::vector<double> gammas = {0.01, 0.02, 0.05, 0.1, 0.2, 0.3};
  std::vector<double> betas;
  for (double g : gammas) betas.push_back(beta_for_gamma(d, g));
  const auto cells = entropy_surface(d, betas, {kPi / 2});
  int violations = 0;
  for (std::size_t i = 1; i < cells.size(); ++i)
    if (!(cells[i].entropy > cells[i - 1].entropy)) ++violations;
  c.logic("S(Gamma) not strictly increasing at theta = pi/2", violations);

  double conv = 0.0;
  for (double theta : {0.0, kPi / 2}) {
    const double coarse = entropy_surface(d, {betas.back()}, {theta}, {4.0, 11})[0].entropy;
    const double fine = entropy_surface(d, {betas.back()}, {theta}, {4.0, 21})[0].entropy;
    conv = std::max(conv, std::abs(coarse - fine) / fine);
  }
  c.check("|S(11^3) - S(21^3)| / S(21^3)", "entropy_convergence", conv);
}

void c09_scaling(Checker& c, std::uint64_t) {
  const auto r = packet_error_scaling(0.1, {0.00625, 0.0125, 0.025, 0.05}, kPi / 2);
  c.check("|exponent - 2|", "scaling_exponent", std::abs(r.exponent - 2.0));
  c.check("P_E after inverse boost", "scaling_restore", r.restored_error);
}

void c10_concurrence(Checker& c, std::uint64_t) {
  BipartiteSpec spec;
  spec.spread = 0.3;
  const auto rows = bipartite_boost_concurrence(spec, {0.0, 0.5, 1.0, 2.0});
  c.check("C at rest", "concurrence_rest", rows[0].concurrence);
  int violations = 0;
  double restore = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].concurrence > rows[i - 1].concurrence) ++violations;
  for (const auto& r : rows) restore = std::max(restore, std::abs(r.restored - rows[0].concurrence));
  c.logic("C increasing with rapidity", violations);
  c.check("|C restored - C rest|", "concurrence_restore", restore);
}

void c11_povm(Checker& c, std::uint64_t seed) {
  double sum = 0.0, diff = 0.0;
  for (int i = 0; i < 500; ++i) {
    auto eng = rng::engine_for(seed, 8000 + i);
    std::uniform_real_distribution<double> u(0.01, 1.2);
    const auto packet = random_polarized_packet(u(eng), {32, 16, 0.1}, eng);
    const double s = povm_expectation(packet, Axis::x) + povm_expectation(packet, Axis::y) +
                     povm_expectation(packet, Axis::z);
    sum = std::max(sum, std::abs(s - 1.0));
    diff = std::max(diff, (effective_density_matrix(packet) - naive_density_matrix(packet)).cwiseAbs().maxCoeff());
  }
  c.check("|sum of POVM expectations - 1|", "povm_completeness", sum);
  c.check("|effective rho - naive rho|", "effective_rho", diff);
}

void c12_doppler(Checker& c, std::uint64_t) {
  double worst = 0.0, at_half = 0.0;
  for (double v : {-0.5, -0.25, 0.25, 0.5}) {
    const auto r = doppler_error_ratio(0.05, v);
    worst = std::max(worst, std::abs(r.ratio / ((1 + v) / (1 - v)) - 1.0));
    if (v == 0.5) at_half = r.ratio;
  }
  c.check("relative deviation from (1+v)/(1-v)", "doppler_ratio", worst);
  c.check("|ratio(v = 0.5) - 3.00|", "doppler_value", std::abs(at_half - 3.0));
}

void c13_aberration(Checker& c, std::uint64_t) {
  const double v = 0.6, theta = 0.01;
  const double ratio = aberrate(theta, 0.0, v).theta / theta;
  c.check("relative deviation from sqrt((1+v)/(1-v))", "aberration_ratio",
          std::abs(ratio / std::sqrt((1 + v) / (1 - v)) - 1.0));
}

void c14_unruh(Checker& c, std::uint64_t) {
  double balance = 0.0;
  for (double a : {0.5, 1.0, 3.0})
    for (double w : {0.1, 0.5, 1.0, 2.0}) {
      const double expected = std::exp(2 * kPi * w / a);
      balance = std::max(balance, std::abs(detector_response(-w, a) / detector_response(w, a) / expected - 1.0));
    }
  c.check("detailed balance relative error", "detailed_balance", balance);
  double ent = 0.0;
  for (double x : {0.02, 0.1, 0.3, 1.0}) {
    const double n = 1.0 / std::expm1(2 * kPi * x);
    const double oracle = (n + 1) * std::log(n + 1) - n * std::log(n);
    ent = std::max(ent, std::abs(rindler_mode_state(x, 1.0).entropy() - oracle));
  }
  c.check("Rindler entropy vs thermal oscillator", "rindler_entropy", ent);
  c.check("|mean occupation - 1| at 2 pi omega / a = ln 2", "rindler_mean",
          std::abs(rindler_mode_state(std::log(2.0) / (2 * kPi), 1.0).mean_occupation() - 1.0));
}

void c15_blackhole(Checker& c, std::uint64_t, const PhysicalConstants& k) {
  double scaling = 0.0;
  for (double m : {0.1, 1.0, 10.0, 1e3}) {
    const BlackHole bh(m);
    scaling = std::max({scaling, std::abs(surface_gravity(bh) * m - 0.25) * 4,
                        std::abs(hawking_temperature(bh) * m * 8 * kPi - 1.0),
                        std::abs(bekenstein_entropy(bh) / (m * m) / (4 * kPi) - 1.0)});
  }
  c.check("kappa M, T M, S / M^2 relative", "bh_scaling", scaling);
  c.check("residual(dM) / residual(dM/2) - 4", "first_law_ratio",
          std::abs(first_law_residual(1.0, 1e-4) / first_law_residual(1.0, 5e-5) - 4.0));

  const double m0 = 5e11, te = evaporation_time(m0);
  c.check("|M(7 t_E / 8) / (M0 / 2) - 1|", "evaporation_half", std::abs(evaporate(m0, 7 * te / 8).mass / (m0 / 2) - 1));
  // RK4 of dM/dt = -M0^3 / (3 t_E M^2) in units of M0 and t_E.
  auto rate = [](double m) { return -1.0 / (3.0 * m * m); };
  double m = 1.0, t = 0.0, ode = 0.0;
  const int steps = 99000;
  const double h = 0.99 / steps;
  for (int i = 1; i <= steps; ++i) {
    const double k1 = rate(m), k2 = rate(m + 0.5 * h * k1), k3 = rate(m + 0.5 * h * k2), k4 = rate(m + h * k3);
    m += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    t = i * h;
    if (i % 1000 == 0) ode = std::max(ode, std::abs(evaporate(m0, t * te).mass / (m * m0) - 1.0));
  }
  c.check("closed form vs RK4, t <= 0.99 t_E", "evaporation_ode", ode);
  c.check("solar Hawking temperature vs pin", "hawking_pin",
          std::abs(hawking_temperature(BlackHole(1.989e30), k) / kSolarHawkingPin - 1.0));
}

void c16_witnesses(Checker& c, std::uint64_t) {
  c.check("spectrum difference of equal-tau packets", "witness_spectrum",
          non_covariance_witness(0.01, 0.3, 0.8, kPi / 2).max_difference);
  const auto w = cp_failure_witness(0.3, 0.8, kPi / 2);
  c.check("P'_E - P_E under the traced boost", "witness_cp", w.error_moving - w.error_rest);
}

}  // namespace

const std::vector<ToleranceSpec>& selfcheck_tolerances() {
  using B = Bound;
  static const std::vector<ToleranceSpec> all = {
      {"bell_advantage", 1e-9, B::upper, false},      {"semicausal_shift", 1e-12, B::upper, false},
      {"locc_tv", 1e-12, B::upper, false},            {"teleport_residual", 1e-12, B::upper, false},
      {"teleport_fidelity", 1e-12, B::upper, false},  {"chsh_singlet", 1e-6, B::upper, false},
      {"chsh_product", 1e-9, B::upper, false},        {"chsh_bound", 1e-9, B::upper, false},
      {"choi_transpose", 1e-10, B::upper, false},     {"standard_boost", 1e-10, B::upper, false},
      {"wigner_rotation", 1e-10, B::upper, false},    {"packet_composition", 1e-8, B::upper, false},
      {"entropy_zero", 1e-12, B::upper, false},       {"entropy_convergence", 0.05, B::upper, true},
      {"scaling_exponent", 0.2, B::upper, true},      {"scaling_restore", 1e-8, B::upper, false},
      {"concurrence_rest", 0.999, B::lower, true},    {"concurrence_restore", 1e-6, B::upper, true},
      {"povm_completeness", 1e-10, B::upper, false},  {"effective_rho", 1e-10, B::upper, false},
      {"doppler_ratio", 0.02, B::upper, true},        {"doppler_value", 0.005, B::upper, true},
      {"aberration_ratio", 1e-3, B::upper, false},    {"detailed_balance", 1e-12, B::upper, false},
      {"rindler_entropy", 1e-10, B::upper, false},    {"rindler_mean", 1e-10, B::upper, false},
      {"bh_scaling", 1e-12, B::upper, false},         {"first_law_ratio", 1e-3, B::upper, false},
      {"evaporation_half", 1e-9, B::upper, false},    {"evaporation_ode", 1e-3, B::upper, true},
      {"hawking_pin", 1e-3, B::upper, false},         {"witness_spectrum", 1e-4, B::lower, true},
      {"witness_cp", 1e-6, B::lower, true},
  };
  return all;
}

bool SelfcheckResult::all_passed() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed; });
}

std::string failure_class_name(FailureClass c) {
  switch (c) {
    case FailureClass::none: return "none";
    case FailureClass::tolerance: return "tolerance";
    case FailureClass::logic: return "logic";
  }
  return "logic";
}

namespace {

SelfcheckResult run_with(Params& p) {
  const PhysicalConstants k = read_constants(p);
  std::set<int> wanted;
  for (double id : p.reals("criteria", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16}, 1, 16)) {
    if (id != std::floor(id)) throw ValidationError("criteria must list integers 1..16");
    wanted.insert(static_cast<int>(id));
  }
  const std::vector<std::pair<std::string, CriterionFn>> all = {
      {"incomplete-bell-witness", c01_incomplete_bell},
      {"complete-bell-semicausal", c02_complete_bell},
      {"locc-reproduces-pvm", c03_locc},
      {"teleportation", c04_teleport},
      {"chsh-bounds", c05_chsh},
      {"cp-certification", c06_cp},
      {"wigner-machinery", c07_wigner},
      {"spin-entropy", c08_entropy},
      {"distinguishability-scaling", c09_scaling},
      {"bipartite-concurrence", c10_concurrence},
      {"photon-povm", c11_povm},
      {"photon-doppler", c12_doppler},
      {"aberration", c13_aberration},
      {"unruh-rindler", c14_unruh},
      {"black-hole", [&k](Checker& c, std::uint64_t s) { c15_blackhole(c, s, k); }},
      {"noncovariance-cp-witnesses", c16_witnesses},
  };
  // Every tolerance counts as read, so overrides for criteria that are not
  // selected are not reported as unknown.
  for (const auto& t : selfcheck_tolerances()) p.tol(t.name, t.value);

  SelfcheckResult result;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!wanted.count(id)) continue;
    CriterionResult r;
    r.id = id;
    r.name = all[i].first;
    Checker checker(p, r);
    try {
      all[i].second(checker, p.seed());
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    r.passed = r.error.empty() && !r.checks.empty() &&
               std::all_of(r.checks.begin(), r.checks.end(), [](const CheckResult& c) { return c.passed; });
    if (!r.passed) {
      bool tolerance_only = r.error.empty();
      for (const auto& c : r.checks)
        if (!c.passed && (c.tolerance_name.empty() || !Checker::pass(c.measured, c.default_tolerance, c.bound)))
          tolerance_only = false;
      r.failure_class = tolerance_only ? FailureClass::tolerance : FailureClass::logic;
    }
    result.criteria.push_back(std::move(r));
  }
  return result;
}

}  // namespace

SelfcheckResult run_selfcheck(const RunConfig& config) {
  Params p(config);
  auto r = run_with(p);
  p.finish();
  return r;
}

Report selfcheck_report(const RunConfig& config, SelfcheckResult* out) {
  Params p(config);
  const SelfcheckResult result = run_with(p);
  p.finish();
  Report r{"selfcheck"};
  int failed = 0;
  for (const auto& c : result.criteria) {
    if (!c.passed) ++failed;
    // Report the first failing check, else the one closest to its limit.
    const CheckResult* worst = nullptr;
    double worst_score = -1.0;
    std::ostringstream detail;
    for (const auto& k : c.checks) {
      detail << (&k == &c.checks.front() ? "" : "; ") << k.label << " = " << k.measured;
      if (!k.tolerance_name.empty()) detail << (k.bound == Bound::upper ? " <= " : " >= ") << k.tolerance;
      double score = 0.0;
      if (!k.passed) score = 2.0;
      else if (!k.tolerance_name.empty() && k.tolerance > 0.0)
        score = k.bound == Bound::upper ? k.measured / k.tolerance : k.tolerance / std::max(k.measured, 1e-300);
      if (score > worst_score) {
        worst_score = score;
        worst = &k;
      }
    }
    if (!c.error.empty()) detail << (c.checks.empty() ? "" : "; ") << "error: " << c.error;
    r.add_row({c.id, c.name, c.passed, failure_class_name(c.failure_class), worst ? worst->label : std::string("none"),
               worst ? worst->measured : 0.0, worst ? worst->tolerance : 0.0,
               worst ? worst->quadrature_limited : false, detail.str()});
  }
  r.summary["all_passed"] = failed == 0;
  r.summary["failed"] = failed;
  r.summary["total"] = static_cast<int>(result.criteria.size());
  r.meta = make_meta("selfcheck", p);
  if (out) *out = result;
  return r;
}

}  // namespace relqi
