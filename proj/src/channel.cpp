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

#include "relqi/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "relqi/errors.hpp"
#include "relqi/random.hpp"

namespace relqi {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::string mismatch(const char* what, long got, long want) {
  std::ostringstream os;
  os << what << ": dimension mismatch (" << got << " vs " << want << ")";
  return os.str();
}

Vector ket(std::initializer_list<cplx> amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (cplx a : amps) v(i++) = a;
  return v;
}

// Projector onto the nonnegative eigenspace of a Hermitian matrix.
Matrix positive_part_projector(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(h));
  Matrix p = Matrix::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    if (es.eigenvalues()(i) > 0.0) p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  return p;
}

// Generalized Pauli (clock and shift) unitaries on dimension d, with names.
std::vector<std::pair<std::string, Matrix>> clock_shift_family(int d) {
  if (d == 2) {
    return {{"I", pauli::identity()}, {"X", pauli::x()}, {"Y", pauli::y()}, {"Z", pauli::z()}};
  }
  Matrix shift = Matrix::Zero(d, d);
  Matrix clock = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    shift((j + 1) % d, j) = 1.0;
    clock(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / d);
  }
  std::vector<std::pair<std::string, Matrix>> out;
  Matrix xa = Matrix::Identity(d, d);
  for (int a = 0; a < d; ++a) {
    Matrix zb = Matrix::Identity(d, d);
    for (int b = 0; b < d; ++b) {
      std::ostringstream name;
      name << "X^" << a << "Z^" << b;
      out.emplace_back(name.str(), xa * zb);
      zb = zb * clock;
    }
    xa = xa * shift;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- KrausSet

KrausSet::KrausSet(int dim_in, int dim_out, std::vector<std::vector<Matrix>> outcomes, bool allow_subnormalized,
                   double tol)
    : dim_in_(dim_in), dim_out_(dim_out), subnormalized_(allow_subnormalized), outcomes_(std::move(outcomes)) {
  if (dim_in_ <= 0 || dim_out_ <= 0) throw StructuralError("KrausSet: dimensions must be positive");
  if (outcomes_.empty()) throw StructuralError("KrausSet: no outcomes");
  for (const auto& terms : outcomes_) {
    if (terms.empty()) throw StructuralError("KrausSet: outcome without Kraus matrices");
    for (const auto& a : terms)
      if (a.rows() != dim_out_ || a.cols() != dim_in_)
        throw StructuralError(mismatch("KrausSet: Kraus matrix shape", a.rows() * 1000 + a.cols(),
                                       static_cast<long>(dim_out_) * 1000 + dim_in_));
  }
  const Matrix defect = Matrix::Identity(dim_in_, dim_in_) - completeness();
  if (!subnormalized_) {
    if (max_abs(defect) > tol) {
      std::ostringstream os;
      os << "KrausSet: not trace preserving (completeness defect " << max_abs(defect) << ")";
      throw ValidationError(os.str());
    }
  } else if (hermitian_eigenvalues(defect).minCoeff() < -tol) {
    throw ValidationError("KrausSet: sum of A^dagger A exceeds the identity");
  }
}

KrausSet KrausSet::projective(const std::vector<Matrix>& projectors, double tol) {
  if (projectors.empty()) throw StructuralError("KrausSet::projective: no projectors");
  const auto d = static_cast<int>(projectors.front().rows());
  std::vector<std::vector<Matrix>> outcomes;
  for (const auto& p : projectors) outcomes.push_back({p});
  return KrausSet(d, d, std::move(outcomes), false, tol);
}

KrausSet KrausSet::channel(const std::vector<Matrix>& kraus, double tol) {
  if (kraus.empty()) throw StructuralError("KrausSet::channel: no Kraus matrices");
  return KrausSet(static_cast<int>(kraus.front().cols()), static_cast<int>(kraus.front().rows()), {kraus}, false,
                  tol);
}

Matrix KrausSet::completeness() const {
  Matrix e = Matrix::Zero(dim_in_, dim_in_);
  for (const auto& terms : outcomes_)
    for (const auto& a : terms) e += a.adjoint() * a;
  return e;
}

Matrix KrausSet::act(std::size_t mu, const Matrix& rho) const {
  if (rho.rows() != dim_in_ || rho.cols() != dim_in_) throw StructuralError(mismatch("KrausSet::act", rho.rows(), dim_in_));
  Matrix out = Matrix::Zero(dim_out_, dim_out_);
  for (const auto& a : outcomes_.at(mu)) out += a * rho * a.adjoint();
  return out;
}

Matrix KrausSet::act_nonselective(const Matrix& rho) const {
  Matrix out = Matrix::Zero(dim_out_, dim_out_);
  for (std::size_t mu = 0; mu < outcomes_.size(); ++mu) out += act(mu, rho);
  return out;
}

KrausSet KrausSet::embed(int d_other, int position) const {
  if (d_other <= 0) throw StructuralError("KrausSet::embed: dimension must be positive");
  if (position != 0 && position != 1) throw StructuralError("KrausSet::embed: position must be 0 or 1");
  const Matrix id = Matrix::Identity(d_other, d_other);
  std::vector<std::vector<Matrix>> out;
  for (const auto& terms : outcomes_) {
    std::vector<Matrix> t;
    for (const auto& a : terms) t.push_back(position == 0 ? kron(a, id) : kron(id, a));
    out.push_back(std::move(t));
  }
  return KrausSet(dim_in_ * d_other, dim_out_ * d_other, std::move(out), true);
}

// -------------------------------------------------------------------- Povm

Povm::Povm(int dim, std::vector<Matrix> elements, double tol) : dim_(dim), elements_(std::move(elements)) {
  if (dim_ <= 0 || elements_.empty()) throw StructuralError("Povm: empty");
  Matrix sum = Matrix::Zero(dim_, dim_);
  for (const auto& e : elements_) {
    if (e.rows() != dim_ || e.cols() != dim_) throw StructuralError(mismatch("Povm: element", e.rows(), dim_));
    if (max_abs(e - e.adjoint()) > tol) throw ValidationError("Povm: element not Hermitian");
    if (hermitian_eigenvalues(e).minCoeff() < -tol) throw ValidationError("Povm: element not PSD");
    sum += e;
  }
  if (max_abs(sum - Matrix::Identity(dim_, dim_)) > tol) throw ValidationError("Povm: elements do not sum to identity");
}

std::vector<double> Povm::probabilities(const DensityMatrix& rho) const {
  if (rho.dim() != dim_) throw StructuralError(mismatch("Povm::probabilities", rho.dim(), dim_));
  std::vector<double> p;
  p.reserve(elements_.size());
  for (const auto& e : elements_) p.push_back((rho.matrix() * e).trace().real());
  return p;
}

// ------------------------------------------------------------- operations

std::vector<MeasurementOutcome> apply(const KrausSet& k, const DensityMatrix& rho, double tol) {
  if (rho.dim() != k.dim_in()) throw StructuralError(mismatch("apply", rho.dim(), k.dim_in()));
  const Povm povm = povm_of(k);
  std::vector<MeasurementOutcome> out;
  for (std::size_t mu = 0; mu < k.outcome_count(); ++mu) {
    MeasurementOutcome o;
    o.probability = std::max(0.0, (rho.matrix() * povm.elements()[mu]).trace().real());
    if (o.probability < tol) {
      o.numerically_empty = true;
    } else {
      o.state = DensityMatrix(k.act(mu, rho.matrix()) / o.probability);
    }
    out.push_back(std::move(o));
  }
  return out;
}

Povm povm_of(const KrausSet& k) {
  std::vector<Matrix> elements;
  for (const auto& terms : k.outcomes()) {
    Matrix e = Matrix::Zero(k.dim_in(), k.dim_in());
    for (const auto& a : terms) e += a.adjoint() * a;
    elements.push_back(hermitize(e));
  }
  if (k.subnormalized()) {
    // Complete the sub-normalized instrument with its "no click" element.
    Matrix rest = Matrix::Identity(k.dim_in(), k.dim_in());
    for (const auto& e : elements) rest -= e;
    if (max_abs(rest) > 1e-12) elements.push_back(hermitize(rest));
  }
  return Povm(k.dim_in(), std::move(elements));
}

KrausSet kraus_from_unitary(const Matrix& u, const PureState& apparatus_init,
                            const std::vector<std::vector<Vector>>& partition, double tol) {
  const int k_dim = apparatus_init.dim();
  if (u.rows() != u.cols() || u.rows() % k_dim != 0)
    throw StructuralError(mismatch("kraus_from_unitary: coupling vs apparatus", u.rows(), k_dim));
  if (!is_unitary(u, tol)) throw ValidationError("kraus_from_unitary: coupling is not unitary");
  const int n = static_cast<int>(u.rows()) / k_dim;

  std::vector<Vector> all;
  for (const auto& block : partition) {
    if (block.empty()) throw StructuralError("kraus_from_unitary: empty outcome subspace");
    for (const auto& b : block) {
      if (b.size() != k_dim) throw StructuralError(mismatch("kraus_from_unitary: basis vector", b.size(), k_dim));
      all.push_back(b);
    }
  }
  if (static_cast<int>(all.size()) != k_dim)
    throw ValidationError("kraus_from_unitary: partition does not span the apparatus space");
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      const cplx g = all[i].dot(all[j]);
      if (std::abs(g - (i == j ? 1.0 : 0.0)) > tol)
        throw ValidationError("kraus_from_unitary: partition vectors are not orthonormal");
    }

  // V = U (1 (x) |init>), an (n K) x n isometry.
  const Matrix v = u * kron(Matrix::Identity(n, n), apparatus_init.amplitudes());
  std::vector<std::vector<Matrix>> outcomes;
  for (const auto& block : partition) {
    std::vector<Matrix> terms;
    for (const auto& b : block) {
      Matrix a = Matrix::Zero(n, n);
      for (int sigma = 0; sigma < n; ++sigma)
        for (int s = 0; s < n; ++s) {
          cplx acc = 0.0;
          for (int j = 0; j < k_dim; ++j) acc += std::conj(b(j)) * v(sigma * k_dim + j, s);
          a(sigma, s) = acc;
        }
      terms.push_back(std::move(a));
    }
    outcomes.push_back(std::move(terms));
  }
  return KrausSet(n, n, std::move(outcomes), false, std::max(tol, 1e-10));
}

namespace {

CpCertificate certify(Matrix choi, double tol_psd) {
  CpCertificate c;
  const double tr = choi.trace().real();
  const double scale = std::abs(tr) > 0.0 ? tr : 1.0;
  c.min_eig = hermitian_eigenvalues(choi / scale).minCoeff();
  c.is_cp = c.min_eig >= -tol_psd;
  c.choi = std::move(choi);
  return c;
}

Matrix choi_from_action(int din, int dout, const std::function<Matrix(const Matrix&)>& action) {
  Matrix choi = Matrix::Zero(din * dout, din * dout);
  for (int i = 0; i < din; ++i)
    for (int j = 0; j < din; ++j) {
      Matrix eij = Matrix::Zero(din, din);
      eij(i, j) = 1.0;
      const Matrix out = action(eij);
      if (out.rows() != dout || out.cols() != dout)
        throw StructuralError(mismatch("choi_and_cp_check: map output", out.rows(), dout));
      choi.block(i * dout, j * dout, dout, dout) = out;
    }
  return choi;
}

}  // namespace

CpCertificate choi_and_cp_check(const KrausSet& k, double tol_psd) {
  return certify(choi_from_action(k.dim_in(), k.dim_out(), [&](const Matrix& m) { return k.act_nonselective(m); }),
                 tol_psd);
}

CpCertificate choi_and_cp_check(const LinearMap& map, double tol_psd) {
  if (map.dim_in <= 0 || map.dim_out <= 0 || !map.action)
    throw StructuralError("choi_and_cp_check: incomplete map description");
  // Linearity probe on fixed pseudo-random inputs.
  auto eng = rng::engine_for(0x11ea7, 0);
  const Matrix x = rng::ginibre(map.dim_in, map.dim_in, eng);
  const Matrix y = rng::ginibre(map.dim_in, map.dim_in, eng);
  const cplx a(0.37, -1.3), b(-0.8, 0.45);
  const Matrix lhs = map.action(a * x + b * y);
  const Matrix rhs = a * map.action(x) + b * map.action(y);
  if (lhs.rows() != map.dim_out || lhs.cols() != map.dim_out)
    throw StructuralError(mismatch("choi_and_cp_check: map output", lhs.rows(), map.dim_out));
  if (max_abs(lhs - rhs) > 1e-9 * std::max(1.0, max_abs(rhs))) throw ValidationError("choi_and_cp_check: map is not linear");
  return certify(choi_from_action(map.dim_in, map.dim_out, map.action), tol_psd);
}

LinearMap transpose_map(int dim) {
  return LinearMap{dim, dim, [](const Matrix& m) -> Matrix { return m.transpose(); }};
}

KrausSet depolarizing_channel(double p) {
  if (p < 0.0 || p > 1.0) throw ValidationError("depolarizing_channel: p outside [0, 1]");
  return KrausSet::channel({std::sqrt(1.0 - 0.75 * p) * pauli::identity(), std::sqrt(p / 4.0) * pauli::x(),
                            std::sqrt(p / 4.0) * pauli::y(), std::sqrt(p / 4.0) * pauli::z()});
}

// ------------------------------------------------------------- signalling

namespace {

std::vector<double> distribution(const Povm& povm, const Matrix& marginal) {
  std::vector<double> p;
  for (const auto& e : povm.elements()) p.push_back((marginal * e).trace().real());
  return p;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double marginal_shift(const KrausSet& actor, int actor_pos, const Povm& observer, int observer_dim,
                      const Matrix& rho) {
  const int da = actor_pos == 0 ? actor.dim_in() : observer_dim;
  const int db = actor_pos == 0 ? observer_dim : actor.dim_in();
  const int keep = 1 - actor_pos;
  const Matrix before = partial_trace(rho, SubsystemSplit{{da, db}, {keep}});
  const Matrix after_full = actor.embed(observer_dim, actor_pos).act_nonselective(rho);
  const int da2 = actor_pos == 0 ? actor.dim_out() : observer_dim;
  const int db2 = actor_pos == 0 ? observer_dim : actor.dim_out();
  const Matrix after = partial_trace(after_full, SubsystemSplit{{da2, db2}, {keep}});
  return total_variation(distribution(observer, before), distribution(observer, after));
}

}  // namespace

NoSignallingReport verify_no_signalling(const KrausSet& a, const KrausSet& b, const DensityMatrix& rho, int trials,
                                        std::uint64_t seed) {
  const int da = a.dim_in();
  const int db = b.dim_in();
  if (rho.dim() != da * db) throw StructuralError(mismatch("verify_no_signalling", rho.dim(), da * db));
  const Povm pa = povm_of(a);
  const Povm pb = povm_of(b);

  NoSignallingReport report;
  auto check = [&](const Matrix& r) {
    const double ab = marginal_shift(a, 0, pb, db, r);  // Alice acts, Bob observes
    const double ba = marginal_shift(b, 1, pa, da, r);  // Bob acts, Alice observes
    report.max_marginal_shift = std::max({report.max_marginal_shift, ab, ba});
    ++report.states_tested;
  };
  check(rho.matrix());
  for (int t = 0; t < trials; ++t) {
    auto eng = rng::engine_for(seed, static_cast<std::uint64_t>(t));
    check(rng::random_density(da * db, eng).matrix());
  }
  return report;
}

std::map<std::pair<std::size_t, std::size_t>, Matrix> sequential_outcomes(const KrausSet& first,
                                                                          const KrausSet& second,
                                                                          const Matrix& rho) {
  if (first.dim_out() != second.dim_in())
    throw StructuralError(mismatch("sequential_outcomes", first.dim_out(), second.dim_in()));
  std::map<std::pair<std::size_t, std::size_t>, Matrix> out;
  for (std::size_t mu = 0; mu < first.outcome_count(); ++mu) {
    const Matrix mid = first.act(mu, rho);
    for (std::size_t nu = 0; nu < second.outcome_count(); ++nu) out[{mu, nu}] = second.act(nu, mid);
  }
  return out;
}

BipartiteOperation complete_bell_measurement() {
  std::vector<Matrix> proj;
  for (const Vector& v : {bell::psi_minus(), bell::psi_plus(), bell::phi_minus(), bell::phi_plus()})
    proj.push_back(v * v.adjoint());
  return {2, 2, KrausSet::projective(proj)};
}

BipartiteOperation incomplete_bell_measurement() {
  const Vector phi = bell::phi_plus();
  const Matrix e1 = phi * phi.adjoint();
  return {2, 2, KrausSet::projective({e1, Matrix::Identity(4, 4) - e1})};
}

BipartiteOperation product_basis_pvm() {
  const double r = 1.0 / std::sqrt(2.0);
  const Vector zero = ket({1.0, 0.0});
  const Vector one = ket({0.0, 1.0});
  const Vector plus = ket({r, r});
  const Vector minus = ket({r, -r});
  std::vector<Matrix> proj;
  for (const auto& [x, y] : {std::pair{zero, zero}, {zero, one}, {one, plus}, {one, minus}}) {
    const Vector v = kron(x, y);
    proj.push_back(v * v.adjoint());
  }
  return {2, 2, KrausSet::projective(proj)};
}

DensityMatrix receiver_marginal(const BipartiteOperation& t, const Matrix& rho, Direction dir) {
  if (t.op.dim_in() != t.dim_a * t.dim_b || t.op.dim_out() != t.dim_a * t.dim_b)
    throw StructuralError(mismatch("receiver_marginal: operation", t.op.dim_in(), t.dim_a * t.dim_b));
  const Matrix out = t.op.act_nonselective(rho);
  const int keep = dir == Direction::b_to_a ? 0 : 1;
  return DensityMatrix(partial_trace(out, SubsystemSplit{{t.dim_a, t.dim_b}, {keep}}));
}

SemicausalVerdict is_semicausal(const BipartiteOperation& t, Direction dir, std::span<const DensityMatrix> probes,
                                const SemicausalOptions& opts) {
  if (t.op.subnormalized()) throw ValidationError("is_semicausal: operation is not trace preserving");
  const int d_send = dir == Direction::b_to_a ? t.dim_b : t.dim_a;
  const int d_recv = dir == Direction::b_to_a ? t.dim_a : t.dim_b;

  std::vector<std::pair<std::string, Matrix>> family;
  if (opts.fixed_family) family = clock_shift_family(d_send);
  for (int h = 0; h < opts.haar_draws; ++h) {
    auto eng = rng::engine_for(opts.seed, static_cast<std::uint64_t>(h));
    family.emplace_back("haar#" + std::to_string(h), rng::haar_unitary(d_send, eng));
  }

  SemicausalVerdict verdict;
  const Matrix id_recv = Matrix::Identity(d_recv, d_recv);
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const Matrix& rho = probes[i].matrix();
    if (rho.rows() != t.dim_a * t.dim_b) throw StructuralError(mismatch("is_semicausal: probe", rho.rows(), t.dim_a * t.dim_b));
    const DensityMatrix base = receiver_marginal(t, rho, dir);
    for (const auto& [name, v] : family) {
      const Matrix pre = dir == Direction::b_to_a ? kron(id_recv, v) : kron(v, id_recv);
      const DensityMatrix moved = receiver_marginal(t, pre * rho * pre.adjoint(), dir);
      const Matrix diff = base.matrix() - moved.matrix();
      const double shift = 0.5 * trace_norm(diff);
      ++verdict.trials;
      verdict.max_shift = std::max(verdict.max_shift, shift);
      if (shift >= opts.tol) {
        const double adv = 1.0 - error_probability(base, moved);
        if (!verdict.witness || adv > verdict.witness->advantage) {
          verdict.witness = SignallingWitness{name, v, i, positive_part_projector(diff), adv, shift};
        }
      }
    }
  }
  verdict.semicausal = !verdict.witness.has_value();
  return verdict;
}

double marginal_distinguishability(const BipartiteOperation& t, const DensityMatrix& rho1, const DensityMatrix& rho2,
                                   Direction dir) {
  return 1.0 - error_probability(receiver_marginal(t, rho1.matrix(), dir), receiver_marginal(t, rho2.matrix(), dir));
}

std::vector<DensityMatrix> default_probe_states(int dim_a, int dim_b, int random_count, std::uint64_t seed) {
  std::vector<DensityMatrix> probes;
  const int d = dim_a * dim_b;
  for (int i = 0; i < d; ++i) probes.push_back(DensityMatrix::from_pure(PureState::basis(d, i)));
  if (dim_a == 2 && dim_b == 2)
    for (const Vector& v : {bell::phi_plus(), bell::phi_minus(), bell::psi_plus(), bell::psi_minus()})
      probes.push_back(DensityMatrix::from_pure(PureState(v)));
  for (int r = 0; r < random_count; ++r) {
    auto eng = rng::engine_for(seed, static_cast<std::uint64_t>(r));
    probes.push_back(rng::random_density(d, eng));
  }
  return probes;
}

// ------------------------------------------------------------------- LOCC

std::map<std::vector<int>, double> simulate_locc_protocol(const LoccProtocol& protocol, const DensityMatrix& input) {
  const int da = protocol.dim_a;
  const int db = protocol.dim_b;
  if (da <= 0 || db <= 0) throw StructuralError("simulate_locc_protocol: dimensions must be positive");
  if (input.dim() != da * db) throw StructuralError(mismatch("simulate_locc_protocol: input", input.dim(), da * db));

  // Validate the conditioning graph before simulating.
  std::vector<int> max_outcomes;
  for (std::size_t s = 0; s < protocol.steps.size(); ++s) {
    const auto& step = protocol.steps[s];
    const int local = step.party == Party::a ? da : db;
    if (step.instruments.empty()) throw StructuralError("simulate_locc_protocol: step without instruments");
    if (step.conditioned_on < 0) {
      if (step.conditioned_on != -1 || step.instruments.size() != 1)
        throw StructuralError("simulate_locc_protocol: unconditioned step needs exactly one instrument");
    } else {
      if (step.conditioned_on >= static_cast<int>(s))
        throw StructuralError("simulate_locc_protocol: step conditioned on a later step");
      if (static_cast<int>(step.instruments.size()) != max_outcomes[step.conditioned_on])
        throw StructuralError("simulate_locc_protocol: one instrument per message value required");
    }
    int most = 0;
    for (const auto& k : step.instruments) {
      if (k.dim_in() != local || k.dim_out() != local)
        throw StructuralError(mismatch("simulate_locc_protocol: instrument", k.dim_in(), local));
      most = std::max(most, static_cast<int>(k.outcome_count()));
    }
    max_outcomes.push_back(most);
  }

  std::map<std::vector<int>, Matrix> branches{{{}, input.matrix()}};
  for (const auto& step : protocol.steps) {
    std::map<std::vector<int>, Matrix> next;
    for (const auto& [record, state] : branches) {
      const std::size_t which = step.conditioned_on < 0 ? 0 : static_cast<std::size_t>(record[step.conditioned_on]);
      const KrausSet embedded =
          step.party == Party::a ? step.instruments[which].embed(db, 0) : step.instruments[which].embed(da, 1);
      for (std::size_t mu = 0; mu < embedded.outcome_count(); ++mu) {
        auto r = record;
        r.push_back(static_cast<int>(mu));
        next.emplace(std::move(r), embedded.act(mu, state));
      }
    }
    branches = std::move(next);
  }
  std::map<std::vector<int>, double> dist;
  for (const auto& [record, state] : branches) dist[record] = std::max(0.0, state.trace().real());
  return dist;
}

LoccProtocol product_basis_protocol() {
  const double r = 1.0 / std::sqrt(2.0);
  const Vector plus = ket({r, r});
  const Vector minus = ket({r, -r});
  const Matrix p0 = ket({1.0, 0.0}) * ket({1.0, 0.0}).adjoint();
  const Matrix p1 = ket({0.0, 1.0}) * ket({0.0, 1.0}).adjoint();
  const KrausSet z_basis = KrausSet::projective({p0, p1});
  const KrausSet x_basis = KrausSet::projective({plus * plus.adjoint(), minus * minus.adjoint()});
  LoccProtocol protocol{2, 2, {}};
  protocol.steps.push_back({Party::a, -1, {z_basis}});
  protocol.steps.push_back({Party::b, 0, {z_basis, x_basis}});
  return protocol;
}

// ---------------------------------------------------------- teleportation

Matrix pi_rotation(char axis) {
  const cplx minus_i(0.0, -1.0);
  switch (axis) {
    case 'x': return minus_i * pauli::x();
    case 'y': return minus_i * pauli::y();
    case 'z': return minus_i * pauli::z();
    default: throw StructuralError("pi_rotation: axis must be x, y or z");
  }
}

namespace {

struct BellBranch {
  Vector bell;
  char axis;  // 0 for the unrotated branch
};

const std::array<BellBranch, 4>& bell_branches() {
  static const std::array<BellBranch, 4> branches{{{bell::psi_minus(), 0},
                                                   {bell::psi_plus(), 'z'},
                                                   {bell::phi_minus(), 'x'},
                                                   {bell::phi_plus(), 'y'}}};
  return branches;
}

Vector input_qubit(cplx alpha, cplx beta, double tol_norm) {
  Vector psi(2);
  psi << alpha, beta;
  if (std::abs(psi.squaredNorm() - 1.0) > tol_norm) throw ValidationError("teleport: input is not normalized");
  return psi;
}

// Bob's unnormalized conditional state when qubits 0,1 project onto `b`.
Vector conditional_state(const Vector& total, const Vector& b) {
  Vector out = Vector::Zero(2);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 2; ++k) out(k) += std::conj(b(i)) * total(2 * i + k);
  return out;
}

}  // namespace

double teleport_identity_residual(cplx alpha, cplx beta, double tol_norm) {
  const Vector psi = input_qubit(alpha, beta, tol_norm);
  const Vector lhs = kron(psi, bell::psi_minus());
  // Each branch of the right-hand side is (1/2)|Bell>|rotated psi>; the
  // rotated states are defined up to phase, so branches are compared through
  // their rank-one projectors.
  double residual = 0.0;
  for (const auto& br : bell_branches()) {
    const Vector c = conditional_state(lhs, br.bell);
    const Vector rotated = br.axis ? Vector(pi_rotation(br.axis) * psi) : psi;
    const Matrix expected = 0.25 * rotated * rotated.adjoint();
    residual += (c * c.adjoint() - expected).norm();
  }
  return residual;
}

TeleportResult teleport(cplx alpha, cplx beta, double tol_norm) {
  const Vector psi = input_qubit(alpha, beta, tol_norm);
  const Vector total = kron(psi, bell::psi_minus());
  TeleportResult result;
  result.min_fidelity = 1.0;
  const auto& branches = bell_branches();
  for (std::size_t k = 0; k < branches.size(); ++k) {
    const Vector c = conditional_state(total, branches[k].bell);
    const double p = c.squaredNorm();
    result.probabilities[k] = p;
    // Bob undoes the announced pi rotation.
    const Vector bob = branches[k].axis ? Vector(pi_rotation(branches[k].axis).adjoint() * c) : c;
    const double fidelity = std::norm(psi.dot(bob)) / p;
    result.min_fidelity = std::min(result.min_fidelity, fidelity);
  }
  return result;
}

// ------------------------------------------------------------------- CHSH

namespace {

void check_observable(const Matrix& x, const char* name, double tol) {
  if (x.rows() != 2 || x.cols() != 2) throw StructuralError(std::string("chsh_value: ") + name + " is not 2x2");
  if (max_abs(x - x.adjoint()) > tol || max_abs(x * x - Matrix::Identity(2, 2)) > tol)
    throw ValidationError(std::string("chsh_value: ") + name + " does not have a +/-1 spectrum");
}

double chsh_from_correlations(const Eigen::Matrix3d& t, const ChshSettings& s) {
  return 0.5 * (s.a1.dot(t * (s.b1 + s.b2)) + s.a2.dot(t * (s.b1 - s.b2)));
}

Eigen::Vector3d unit(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Any unit vector orthogonal to v.
Eigen::Vector3d orthogonal_to(const Eigen::Vector3d& v) {
  Eigen::Vector3d trial = std::abs(v.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  return (trial - trial.dot(v) * v).normalized();
}

// Best Bob settings for fixed Alice settings: zeta is linear in b1 along
// T^T(a1 + a2) and in b2 along T^T(a1 - a2).
ChshSettings best_response(const Eigen::Matrix3d& t, const Eigen::Vector3d& a1, const Eigen::Vector3d& a2) {
  const Eigen::Vector3d u = t.transpose() * (a1 + a2);
  const Eigen::Vector3d w = t.transpose() * (a1 - a2);
  const Eigen::Vector3d b1 = u.norm() > 0.0 ? Eigen::Vector3d(u.normalized()) : Eigen::Vector3d::UnitZ();
  const Eigen::Vector3d b2 = w.norm() > 0.0 ? Eigen::Vector3d(w.normalized()) : Eigen::Vector3d::UnitZ();
  return {a1, a2, b1, b2};
}

ChshOptimum grid_search(const Eigen::Matrix3d& t) {
  constexpr int n_theta = 17;
  constexpr int n_phi = 33;
  const double pi = std::numbers::pi;
  auto value_for = [&](const Eigen::Vector3d& a1, const Eigen::Vector3d& a2) {
    // max over b1, b2 of 1/2 [a1.T(b1+b2) + a2.T(b1-b2)]
    return 0.5 * ((t.transpose() * (a1 + a2)).norm() + (t.transpose() * (a1 - a2)).norm());
  };

  struct Window {
    double theta0, theta1, phi0, phi1;
  };
  auto sample = [&](const Window& w, int i, int j) {
    const double th = w.theta0 + (w.theta1 - w.theta0) * i / (n_theta - 1);
    const double ph = w.phi0 + (w.phi1 - w.phi0) * j / (n_phi - 1);
    return std::pair{th, ph};
  };

  Window w1{0.0, pi, 0.0, 2.0 * pi};
  Window w2 = w1;
  double best = -1.0;
  std::pair<double, double> best1{0, 0}, best2{0, 0};
  for (int level = 0; level < 3; ++level) {
    std::vector<std::pair<double, double>> g1, g2;
    for (int i = 0; i < n_theta; ++i)
      for (int j = 0; j < n_phi; ++j) {
        g1.push_back(sample(w1, i, j));
        g2.push_back(sample(w2, i, j));
      }
    std::vector<Eigen::Vector3d> v1, v2;
    for (auto [th, ph] : g1) v1.push_back(unit(th, ph));
    for (auto [th, ph] : g2) v2.push_back(unit(th, ph));
    for (std::size_t i = 0; i < v1.size(); ++i)
      for (std::size_t j = 0; j < v2.size(); ++j) {
        const double val = value_for(v1[i], v2[j]);
        if (val > best) {
          best = val;
          best1 = g1[i];
          best2 = g2[j];
        }
      }
    // Refine: shrink each window around its incumbent.
    auto shrink = [&](const Window& w, std::pair<double, double> c) {
      const double dth = 2.0 * (w.theta1 - w.theta0) / (n_theta - 1);
      const double dph = 2.0 * (w.phi1 - w.phi0) / (n_phi - 1);
      return Window{c.first - dth, c.first + dth, c.second - dph, c.second + dph};
    };
    w1 = shrink(w1, best1);
    w2 = shrink(w2, best2);
  }
  ChshOptimum opt;
  opt.settings = best_response(t, unit(best1.first, best1.second), unit(best2.first, best2.second));
  opt.zeta = chsh_from_correlations(t, opt.settings);
  return opt;
}

}  // namespace

double chsh_value(const DensityMatrix& rho, const Matrix& a1, const Matrix& a2, const Matrix& b1, const Matrix& b2,
                  double tol) {
  if (rho.dim() != 4) throw StructuralError(mismatch("chsh_value: expected two qubits", rho.dim(), 4));
  check_observable(a1, "A1", tol);
  check_observable(a2, "A2", tol);
  check_observable(b1, "B1", tol);
  check_observable(b2, "B2", tol);
  const Matrix op = kron(a1, b1 + b2) + kron(a2, b1 - b2);
  return 0.5 * (rho.matrix() * op).trace().real();
}

Matrix bloch_observable(const Eigen::Vector3d& direction) {
  const double n = direction.norm();
  if (!(n > 0.0)) throw ValidationError("bloch_observable: zero direction");
  const Eigen::Vector3d u = direction / n;
  return u.x() * pauli::x() + u.y() * pauli::y() + u.z() * pauli::z();
}

Eigen::Matrix3d correlation_matrix(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw StructuralError(mismatch("correlation_matrix: expected two qubits", rho.dim(), 4));
  const std::array<Matrix, 3> s{pauli::x(), pauli::y(), pauli::z()};
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = (rho.matrix() * kron(s[i], s[j])).trace().real();
  return t;
}

ChshOptimum chsh_optimize(const DensityMatrix& rho, ChshStrategy strategy) {
  const Eigen::Matrix3d t = correlation_matrix(rho);
  if (strategy == ChshStrategy::grid) return grid_search(t);

  // zeta = cos(g) a1.T v1 + sin(g) a2.T v2 with b1 +/- b2 = 2 cos/sin(g) v1/v2;
  // the two largest singular values give zeta_max = sqrt(s1^2 + s2^2).
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d sv = svd.singularValues();
  const Eigen::Vector3d v1 = svd.matrixV().col(0);
  const Eigen::Vector3d v2 = svd.matrixV().col(1);
  const double g = std::atan2(sv(1), sv(0));
  ChshSettings s;
  const Eigen::Vector3d tv1 = t * v1;
  const Eigen::Vector3d tv2 = t * v2;
  s.a1 = tv1.norm() > 0.0 ? Eigen::Vector3d(tv1.normalized()) : Eigen::Vector3d(svd.matrixU().col(0));
  s.a2 = tv2.norm() > 0.0 ? Eigen::Vector3d(tv2.normalized()) : orthogonal_to(s.a1);
  s.b1 = std::cos(g) * v1 + std::sin(g) * v2;
  s.b2 = std::cos(g) * v1 - std::sin(g) * v2;
  ChshOptimum opt{chsh_from_correlations(t, s), s};
  // A degenerate correlation matrix can leave the closed form short of the
  // best response; the grid never does worse than its own incumbent.
  if (opt.zeta + 1e-12 < std::hypot(sv(0), sv(1))) return grid_search(t);
  return opt;
}

double cluster_chsh_bound(double mass, double separation) {
  if (mass < 0.0 || separation < 0.0) throw ValidationError("cluster_chsh_bound: negative mass or separation");
  return 1.0 + 4.0 * std::exp(-mass * separation);
}

}  // namespace relqi
