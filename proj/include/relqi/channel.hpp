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

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relqi/qstate.hpp"

namespace relqi {

// Kraus matrices A_{mu m}: outcome label mu, discarded-subsystem index m.
class KrausSet {
 public:
  KrausSet(int dim_in, int dim_out, std::vector<std::vector<Matrix>> outcomes,
           bool allow_subnormalized = false, double tol = 1e-10);

  // One outcome per projector, Kraus matrix = projector.
  static KrausSet projective(const std::vector<Matrix>& projectors, double tol = 1e-10);
  // Single-outcome channel.
  static KrausSet channel(const std::vector<Matrix>& kraus, double tol = 1e-10);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  bool subnormalized() const { return subnormalized_; }
  std::size_t outcome_count() const { return outcomes_.size(); }
  const std::vector<Matrix>& outcome(std::size_t mu) const { return outcomes_.at(mu); }
  const std::vector<std::vector<Matrix>>& outcomes() const { return outcomes_; }

  // sum_{mu,m} A^dagger A
  Matrix completeness() const;
  // sum_m A_{mu m} rho A_{mu m}^dagger, unnormalized.
  Matrix act(std::size_t mu, const Matrix& rho) const;
  // sum_mu of the above.
  Matrix act_nonselective(const Matrix& rho) const;

  // Embeds this set as a factor of a bipartite space: position 0 gives
  // A (x) 1_{d_other}, position 1 gives 1_{d_other} (x) A.
  KrausSet embed(int d_other, int position) const;

 private:
  int dim_in_;
  int dim_out_;
  bool subnormalized_;
  std::vector<std::vector<Matrix>> outcomes_;
};

class Povm {
 public:
  Povm(int dim, std::vector<Matrix> elements, double tol = 1e-10);

  int dim() const { return dim_; }
  const std::vector<Matrix>& elements() const { return elements_; }
  std::vector<double> probabilities(const DensityMatrix& rho) const;

 private:
  int dim_;
  std::vector<Matrix> elements_;
};

struct MeasurementOutcome {
  double probability = 0.0;
  // Renormalized post-measurement state; empty when probability < tol.
  std::optional<DensityMatrix> state;
  bool numerically_empty = false;
};

std::vector<MeasurementOutcome> apply(const KrausSet& k, const DensityMatrix& rho, double tol = 1e-12);

Povm povm_of(const KrausSet& k);

// Kraus matrices of a unitary premeasurement. U acts on system (x) apparatus
// (system factor first); `partition[mu]` lists an orthonormal basis of the
// apparatus subspace read as outcome mu. A_{mu m} = (1 (x) <b_{mu m}|) U (1 (x) |init>).
KrausSet kraus_from_unitary(const Matrix& u, const PureState& apparatus_init,
                            const std::vector<std::vector<Vector>>& partition, double tol = 1e-10);

// A linear map on dim_in x dim_in matrices given by its action.
struct LinearMap {
  int dim_in = 0;
  int dim_out = 0;
  std::function<Matrix(const Matrix&)> action;
};

struct CpCertificate {
  Matrix choi;           // sum_ij |i><j| (x) T(|i><j|)
  bool is_cp = false;
  double min_eig = 0.0;  // of choi / tr(choi)
};

CpCertificate choi_and_cp_check(const KrausSet& k, double tol_psd = 1e-10);
CpCertificate choi_and_cp_check(const LinearMap& map, double tol_psd = 1e-10);

LinearMap transpose_map(int dim);
KrausSet depolarizing_channel(double p);

// ---------------------------------------------------------------- signalling

struct NoSignallingReport {
  double max_marginal_shift = 0.0;  // total variation, both directions
  int states_tested = 0;
};

// `a` acts on the first factor (dimension a.dim_in()), `b` on the second.
// Tests rho and `trials` Haar-random mixed states drawn from `seed`.
NoSignallingReport verify_no_signalling(const KrausSet& a, const KrausSet& b, const DensityMatrix& rho,
                                        int trials = 0, std::uint64_t seed = 0);

// Unnormalized states for every joint outcome (mu, nu) when `first` acts
// before `second`; both sets act on the same space.
std::map<std::pair<std::size_t, std::size_t>, Matrix> sequential_outcomes(const KrausSet& first,
                                                                          const KrausSet& second,
                                                                          const Matrix& rho);

struct BipartiteOperation {
  int dim_a = 0;
  int dim_b = 0;
  KrausSet op;  // acts on dim_a * dim_b
};

BipartiteOperation complete_bell_measurement();
BipartiteOperation incomplete_bell_measurement();
// PVM with projectors |00>, |01>, |1+>, |1->.
BipartiteOperation product_basis_pvm();

enum class Direction { b_to_a, a_to_b };

struct SemicausalOptions {
  double tol = 1e-12;
  bool fixed_family = true;  // generalized Pauli (clock/shift) unitaries
  int haar_draws = 200;
  std::uint64_t seed = 0x5eed;
};

struct SignallingWitness {
  std::string pre_operation;   // e.g. "X" or "haar#17"
  Matrix pre_unitary;          // on the sending factor
  std::size_t probe_index = 0;
  Matrix measurement;          // receiver projector achieving the advantage
  double advantage = 0.0;      // 1 - P_E of the receiver marginals
  double shift = 0.0;          // trace distance of the receiver marginals
};

struct SemicausalVerdict {
  bool semicausal = true;  // "no witness found"
  double max_shift = 0.0;
  int trials = 0;
  std::optional<SignallingWitness> witness;  // strongest witness found
};

// Receiver marginal of T'(rho) = sum_mu T_mu(rho).
DensityMatrix receiver_marginal(const BipartiteOperation& t, const Matrix& rho, Direction dir);

// Probes whether the sender can change the receiver's marginal by a local
// unitary applied before T.
SemicausalVerdict is_semicausal(const BipartiteOperation& t, Direction dir,
                                std::span<const DensityMatrix> probes, const SemicausalOptions& opts = {});

// Optimal probability with which the receiver distinguishes inputs rho1 and
// rho2 after T (1 - P_E of the receiver marginals).
double marginal_distinguishability(const BipartiteOperation& t, const DensityMatrix& rho1,
                                   const DensityMatrix& rho2, Direction dir);

std::vector<DensityMatrix> default_probe_states(int dim_a, int dim_b, int random_count, std::uint64_t seed);

// --------------------------------------------------------------------- LOCC

enum class Party { a, b };

// One local instrument per outcome of the step it is conditioned on, or a
// single instrument when unconditioned (conditioned_on < 0).
struct LoccStep {
  Party party = Party::a;
  int conditioned_on = -1;
  std::vector<KrausSet> instruments;
};

struct LoccProtocol {
  int dim_a = 0;
  int dim_b = 0;
  std::vector<LoccStep> steps;
};

// Joint distribution over the outcome record (one outcome per step).
std::map<std::vector<int>, double> simulate_locc_protocol(const LoccProtocol& protocol, const DensityMatrix& input);

// Alice measures Z and reports; Bob measures Z on 0 and X on 1.
LoccProtocol product_basis_protocol();

// ------------------------------------------------------------ teleportation

// Rotation by pi about axis k in {x, y, z}: exp(-i pi sigma_k / 2).
Matrix pi_rotation(char axis);

// Norm of the difference between the rank-one projectors of both sides of
// the Bell-basis expansion of |psi>_0 |Psi->_12.
double teleport_identity_residual(cplx alpha, cplx beta, double tol_norm = 1e-12);

struct TeleportResult {
  std::array<double, 4> probabilities{};  // Psi-, Psi+, Phi-, Phi+
  double min_fidelity = 0.0;
};

TeleportResult teleport(cplx alpha, cplx beta, double tol_norm = 1e-12);

// --------------------------------------------------------------------- CHSH

// zeta = 1/2 tr{rho [A1 (B1 + B2) + A2 (B1 - B2)]}
double chsh_value(const DensityMatrix& rho, const Matrix& a1, const Matrix& a2, const Matrix& b1,
                  const Matrix& b2, double tol = 1e-10);

struct ChshSettings {
  Eigen::Vector3d a1, a2, b1, b2;  // Bloch directions of the +/-1 observables
};

struct ChshOptimum {
  double zeta = 0.0;
  ChshSettings settings;
};

enum class ChshStrategy { analytic, grid };

Matrix bloch_observable(const Eigen::Vector3d& direction);
// T_ij = tr(rho sigma_i (x) sigma_j)
Eigen::Matrix3d correlation_matrix(const DensityMatrix& rho);
ChshOptimum chsh_optimize(const DensityMatrix& rho, ChshStrategy strategy = ChshStrategy::analytic);

double cluster_chsh_bound(double mass, double separation);

}  // namespace relqi
