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

#include "relqi/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "relqi/errors.hpp"

namespace relqi {

namespace {

std::string dim_message(const char* what, long a, long b) {
  std::ostringstream os;
  os << what << ": dimension mismatch (" << a << " vs " << b << ")";
  return os.str();
}

// Index offsets of every multi-index over `factors` inside the full space.
std::vector<long> offsets(const std::vector<int>& dims, const std::vector<long>& strides,
                          const std::vector<int>& factors) {
  std::vector<long> out{0};
  for (int f : factors) {
    std::vector<long> next;
    next.reserve(out.size() * dims[f]);
    for (long base : out) {
      for (int digit = 0; digit < dims[f]; ++digit) next.push_back(base + digit * strides[f]);
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

PureState::PureState(Vector amplitudes, double tol_norm) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw StructuralError("PureState: empty amplitude vector");
  const double n2 = amps_.squaredNorm();
  if (std::abs(n2 - 1.0) > tol_norm) {
    std::ostringstream os;
    os << "PureState: squared norm " << n2 << " differs from 1";
    throw ValidationError(os.str());
  }
}

PureState PureState::basis(int dim, int index) {
  if (dim <= 0 || index < 0 || index >= dim) throw StructuralError("PureState::basis: index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

PureState PureState::normalized(const Vector& amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw ValidationError("PureState::normalized: zero vector");
  return PureState(amplitudes / n);
}

PureState PureState::tensor(const PureState& other) const {
  Vector out(amps_.size() * other.amps_.size());
  for (Eigen::Index i = 0; i < amps_.size(); ++i)
    out.segment(i * other.amps_.size(), other.amps_.size()) = amps_(i) * other.amps_;
  return PureState(std::move(out));
}

DensityMatrix::DensityMatrix(const Matrix& m, const Tolerances& tol) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw StructuralError(dim_message("DensityMatrix: not square", m.rows(), m.cols()));
  const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol.herm) {
    std::ostringstream os;
    os << "DensityMatrix: not Hermitian (deviation " << herm_dev << ")";
    throw ValidationError(os.str());
  }
  m_ = hermitize(m);
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr << " differs from 1";
    throw ValidationError(os.str());
  }
  const double min_eig = hermitian_eigenvalues(m_).minCoeff();
  if (min_eig < -tol.psd) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << min_eig;
    throw ValidationError(os.str());
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) { return DensityMatrix(psi.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim <= 0) throw StructuralError("DensityMatrix::maximally_mixed: dim must be positive");
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::normalized(const Matrix& m, const Tolerances& tol) {
  const double tr = m.trace().real();
  if (!(tr > 0.0)) throw ValidationError("DensityMatrix::normalized: non-positive trace");
  return DensityMatrix(m / tr, tol);
}

DensityMatrix DensityMatrix::tensor(const DensityMatrix& other) const {
  return DensityMatrix(kron(m_, other.m_));
}

Eigen::VectorXd DensityMatrix::eigenvalues() const { return hermitian_eigenvalues(m_); }

Matrix partial_trace(const Matrix& op, const SubsystemSplit& split) {
  const auto& dims = split.dims;
  if (dims.empty()) throw StructuralError("partial_trace: empty factor list");
  long total = 1;
  for (int d : dims) {
    if (d <= 0) throw StructuralError("partial_trace: factor dimensions must be positive");
    total *= d;
  }
  if (op.rows() != total || op.cols() != total)
    throw StructuralError(dim_message("partial_trace", op.rows(), total));

  std::vector<int> keep = split.keep;
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw StructuralError("partial_trace: repeated index in keep set");
  for (int k : keep)
    if (k < 0 || k >= static_cast<int>(dims.size())) throw StructuralError("partial_trace: keep index out of range");

  std::vector<int> traced;
  for (int f = 0; f < static_cast<int>(dims.size()); ++f)
    if (!std::binary_search(keep.begin(), keep.end(), f)) traced.push_back(f);

  // Row-major: the first factor is the most significant digit.
  std::vector<long> strides(dims.size());
  long stride = 1;
  for (int f = static_cast<int>(dims.size()) - 1; f >= 0; --f) {
    strides[f] = stride;
    stride *= dims[f];
  }
  const auto kept_off = offsets(dims, strides, keep);
  const auto traced_off = offsets(dims, strides, traced);

  const auto dk = static_cast<Eigen::Index>(kept_off.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      cplx acc = 0.0;
      for (long t : traced_off) acc += op(kept_off[a] + t, kept_off[b] + t);
      out(a, b) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const SubsystemSplit& split) {
  return DensityMatrix(partial_trace(rho.matrix(), split));
}

double von_neumann_entropy(const DensityMatrix& rho, LogBase base, double tol_psd) {
  const Eigen::VectorXd ev = rho.eigenvalues();
  double s = 0.0;
  for (double l : ev) {
    if (l < -tol_psd) throw ValidationError("von_neumann_entropy: state is not PSD");
    if (l <= tol_psd) continue;
    s -= l * std::log(l);
  }
  if (base == LogBase::two) s /= std::log(2.0);
  return std::max(s, 0.0);
}

double trace_norm(const Matrix& hermitian) {
  return hermitian_eigenvalues(hermitian).cwiseAbs().sum();
}

double error_probability(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) throw StructuralError(dim_message("error_probability", rho1.dim(), rho2.dim()));
  const double p = 0.5 - 0.25 * trace_norm(rho1.matrix() - rho2.matrix());
  return std::clamp(p, 0.0, 0.5);
}

DensityMatrix spin_flip(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw StructuralError(dim_message("spin_flip: expected two qubits", rho.dim(), 4));
  const Matrix yy = kron(pauli::y(), pauli::y());
  return DensityMatrix(yy * rho.matrix().conjugate() * yy);
}

double concurrence(const DensityMatrix& rho, double tol_psd) {
  if (rho.dim() != 4) throw StructuralError(dim_message("concurrence: expected two qubits", rho.dim(), 4));
  const Matrix sqrt_rho = psd_sqrt(rho.matrix(), tol_psd);
  const Matrix flipped = spin_flip(rho).matrix();
  // Eigenvalues of [sqrt(rho) rho~ sqrt(rho)]^{1/2} are square roots of the
  // (PSD) inner product's eigenvalues.
  Eigen::VectorXd mu = hermitian_eigenvalues(sqrt_rho * flipped * sqrt_rho);
  std::vector<double> lambda(mu.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i) lambda[i] = std::sqrt(std::max(mu(i), 0.0));
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
  return std::clamp(c, 0.0, 1.0);
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Matrix psd_sqrt(const Matrix& m, double tol_psd) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m));
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -tol_psd) throw ValidationError("psd_sqrt: matrix is not PSD");
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

namespace pauli {
Matrix identity() { return Matrix::Identity(2, 2); }
Matrix x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
Matrix y() {
  Matrix m(2, 2);
  m << 0.0, cplx(0, -1), cplx(0, 1), 0.0;
  return m;
}
Matrix z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

namespace bell {
namespace {
Vector two_qubit(double a00, double a01, double a10, double a11) {
  Vector v(4);
  v << a00, a01, a10, a11;
  return v / std::sqrt(2.0);
}
}  // namespace
Vector phi_plus() { return two_qubit(1, 0, 0, 1); }
Vector phi_minus() { return two_qubit(1, 0, 0, -1); }
Vector psi_plus() { return two_qubit(0, 1, 1, 0); }
Vector psi_minus() { return two_qubit(0, 1, -1, 0); }
}  // namespace bell

}  // namespace relqi
