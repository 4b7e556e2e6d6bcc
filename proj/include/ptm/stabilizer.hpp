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
 * Tripartite stabilizer states in GHZ/EPR canonical form.
 */

#pragma once

#include <vector>

#include "ptm/dense.hpp"
#include "ptm/random_matrices.hpp"

namespace ptm::stabilizer {

/**
 * @brief Local |0⟩ qubits s_X, GHZ triples g_abc and Bell pairs e_XY.
 *
 * Qubits of A are ordered [s_a | g_abc | e_ab | e_ac], of B
 * [s_b | g_abc | e_ab | e_bc] and of C [s_c | g_abc | e_ac | e_bc].
 */
struct StabilizerTriple {
    int s_a = 0;
    int s_b = 0;
    int s_c = 0;
    int g_abc = 0;
    int e_ab = 0;
    int e_ac = 0;
    int e_bc = 0;

    void validate() const;
    [[nodiscard]] Tripartition tripartition() const;
    /// g_abc + e_ac + e_bc.
    [[nodiscard]] int mixing() const { return g_abc + e_ac + e_bc; }
    bool operator==(const StabilizerTriple &) const = default;
};

/// p_1..p_4 as exact rationals.
MomentSet stab_pt_moments(const StabilizerTriple &t);

struct StabInvariants {
    double r2 = 1.0;
    double negativity = 0.0;
    double e3 = 0.0;
};

StabInvariants stab_invariants(const StabilizerTriple &t);

/// Nonzero PT eigenvalues ±2^{-(e_ab + mixing)} with their multiplicities.
struct StabSpectrum {
    double magnitude = 0.0;
    BigInt positive;
    BigInt negative;
};

StabSpectrum stab_spectrum(const StabilizerTriple &t);

/// Explicit tensor product of |0⟩s, GHZ triples and Bell pairs.
dense::PureState build_dense_state(const StabilizerTriple &t);

/// All triples with the given subsystem sizes.
std::vector<StabilizerTriple> enumerate_triples(const Tripartition &p);

/// Uniform over enumerate_triples(p).
StabilizerTriple random_triple(const Tripartition &p, rng::Engine &eng);

/// Random counts with 1 ≤ N ≤ max_qubits and N_A + N_B ≥ 1.
StabilizerTriple random_triple(int max_qubits, rng::Engine &eng);

} // namespace ptm::stabilizer
