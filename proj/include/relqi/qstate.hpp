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

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace relqi {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Numerical tolerances for state validation.
struct Tolerances {
  double herm = 1e-10;
  double psd = 1e-10;
  double trace = 1e-8;
};

enum class LogBase { e, two };

class PureState {
 public:
  explicit PureState(Vector amplitudes, double tol_norm = 1e-8);

  static PureState basis(int dim, int index);
  // Normalizes `amplitudes` instead of validating the norm.
  static PureState normalized(const Vector& amplitudes);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  Matrix projector() const { return amps_ * amps_.adjoint(); }
  PureState tensor(const PureState& other) const;

 private:
  Vector amps_;
};

// Hermitian, positive semidefinite, unit-trace matrix. The constructor
// validates and symmetrizes its argument; instances are immutable.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix& m, const Tolerances& tol = {});

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int dim);
  // Rescales a nonzero PSD matrix to unit trace before validation.
  static DensityMatrix normalized(const Matrix& m, const Tolerances& tol = {});

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  DensityMatrix tensor(const DensityMatrix& other) const;
  Eigen::VectorXd eigenvalues() const;

 private:
  Matrix m_;
};

// Factor dimensions of a composite space plus the factors to keep.
struct SubsystemSplit {
  std::vector<int> dims;
  std::vector<int> keep;
};

DensityMatrix partial_trace(const DensityMatrix& rho, const SubsystemSplit& split);
// Same contraction on an arbitrary (possibly unnormalized) operator.
Matrix partial_trace(const Matrix& op, const SubsystemSplit& split);

double von_neumann_entropy(const DensityMatrix& rho, LogBase base = LogBase::e,
                           double tol_psd = 1e-10);

// Minimum error probability for discriminating two equiprobable states,
// 1/2 - 1/4 tr|rho1 - rho2|.
double error_probability(const DensityMatrix& rho1, const DensityMatrix& rho2);

// Trace norm of a Hermitian matrix.
double trace_norm(const Matrix& hermitian);

DensityMatrix spin_flip(const DensityMatrix& rho);
double concurrence(const DensityMatrix& rho, double tol_psd = 1e-10);

// ---- linear-algebra helpers shared by the other modules ----

Matrix hermitize(const Matrix& m);
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);
// Square root of a PSD matrix; eigenvalues in [-tol_psd, 0] are clipped.
Matrix psd_sqrt(const Matrix& m, double tol_psd = 1e-10);
Matrix kron(const Matrix& a, const Matrix& b);
bool is_unitary(const Matrix& u, double tol);

namespace pauli {
Matrix identity();
Matrix x();
Matrix y();
Matrix z();
}  // namespace pauli

namespace bell {
Vector phi_plus();
Vector phi_minus();
Vector psi_plus();
Vector psi_minus();
}  // namespace bell

}  // namespace relqi
