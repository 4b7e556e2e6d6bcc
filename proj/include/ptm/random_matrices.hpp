// Copyright 2026 The ptmoments Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Counter-based random streams and Haar-distributed matrices.
 */

#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace ptm::rng {

using Engine = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/**
 * @brief Independent engine for sample `index` (and optional sub-stream)
 * of a run with master seed `seed`.
 */
Engine stream(std::uint64_t seed, std::uint64_t index, std::uint64_t sub = 0);

/// Standard complex normal entries, E|z|² = 1.
Eigen::VectorXcd complex_normal_vector(Eigen::Index n, Engine &eng);
Eigen::MatrixXcd complex_normal_matrix(Eigen::Index rows, Eigen::Index cols,
                                       Engine &eng);

/// Haar unitary from the phase-fixed QR of a complex Ginibre matrix.
Eigen::MatrixXcd haar_unitary(Eigen::Index dim, Engine &eng);

/// Haar SO(dim) from the sign-fixed QR of a real Gaussian matrix.
Eigen::MatrixXd haar_special_orthogonal(Eigen::Index dim, Engine &eng);

} // namespace ptm::rng
