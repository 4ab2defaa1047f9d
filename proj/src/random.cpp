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

#include "relqi/random.hpp"

#include <cmath>

namespace relqi::rng {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Engine engine_for(std::uint64_t seed, std::uint64_t stream) { return Engine(derive_seed(seed, stream)); }

Matrix ginibre(int rows, int cols, Engine& eng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = n(eng);
      const double im = n(eng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

Matrix haar_unitary(int dim, Engine& eng) {
  const Matrix g = ginibre(dim, dim, eng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const cplx d = r(i, i);
    const double a = std::abs(d);
    if (a > 0.0) q.col(i) *= d / a;
  }
  return q;
}

PureState haar_state(int dim, Engine& eng) {
  return PureState::normalized(ginibre(dim, 1, eng).col(0));
}

DensityMatrix random_density(int dim, Engine& eng, int rank) {
  const Matrix g = ginibre(dim, rank > 0 ? rank : dim, eng);
  return DensityMatrix::normalized(g * g.adjoint());
}

Eigen::Vector3d random_direction(Engine& eng) {
  std::normal_distribution<double> normal;
  Eigen::Vector3d v;
  do {
    v = Eigen::Vector3d(normal(eng), normal(eng), normal(eng));
  } while (v.norm() < 1e-12);
  return v.normalized();
}

}  // namespace relqi::rng
