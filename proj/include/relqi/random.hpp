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

#include <cstdint>
#include <random>

#include "relqi/qstate.hpp"

namespace relqi::rng {

using Engine = std::mt19937_64;

// SplitMix64 mixing of (seed, stream); gives every Monte-Carlo trial its own
// engine so results do not depend on iteration order or thread schedule.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);
Engine engine_for(std::uint64_t seed, std::uint64_t stream);

Matrix ginibre(int rows, int cols, Engine& eng);
// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
Matrix haar_unitary(int dim, Engine& eng);
PureState haar_state(int dim, Engine& eng);
// Hilbert-Schmidt random mixed state of rank `rank` (full rank when 0).
DensityMatrix random_density(int dim, Engine& eng, int rank = 0);
// Uniform on the unit sphere.
Eigen::Vector3d random_direction(Engine& eng);

}  // namespace relqi::rng
