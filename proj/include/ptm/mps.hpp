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
 * Random matrix-product states and their tripartite reduced states.
 */

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ptm/dense.hpp"
#include "ptm/random_matrices.hpp"
#include "ptm/stats.hpp"

namespace ptm::mps {

using dense::Matrix;
using dense::Vector;

/**
 * @brief ψ(s_1..s_N) = v_Lᵀ M_1^{s_1} ⋯ M_N^{s_N} v_R with χ×χ site
 * matrices. Site 0 is the most significant bit of a dense index.
 */
class MpsState {
  public:
    MpsState(std::vector<std::array<Matrix, 2>> sites, Vector vl, Vector vr);

    [[nodiscard]] int size() const { return static_cast<int>(sites_.size()); }
    [[nodiscard]] int chi() const { return static_cast<int>(vl_.size()); }
    [[nodiscard]] const Matrix &site(int i, int s) const { return sites_[i][s]; }
    [[nodiscard]] const Vector &vl() const { return vl_; }
    [[nodiscard]] const Vector &vr() const { return vr_; }

    [[nodiscard]] double norm_squared() const;
    /// Rescales v_L so that ⟨ψ|ψ⟩ = 1.
    void normalize();

    /// Direct contraction for one basis string.
    [[nodiscard]] std::complex<double> amplitude(std::uint64_t bits) const;
    /// All 2^N amplitudes (N ≤ dense limit).
    [[nodiscard]] Vector to_dense() const;

  private:
    std::vector<std::array<Matrix, 2>> sites_;
    Vector vl_;
    Vector vr_;
};

/**
 * @brief Site matrices [M^σ]_{l,l'} = U_{l, l'+χσ} of independent Haar
 * unitaries on dimension 2χ, complex Gaussian boundaries, normalized.
 */
MpsState sample_rmps(int n, int chi, rng::Engine &eng);

/// Sites ordered [C_left | A | B | C_right].
struct MpsLayout {
    int n_c_left = 0;
    int n_a = 0;
    int n_b = 0;
    int n_c_right = 0;

    /// C split as ⌈N_C/2⌉ left and ⌊N_C/2⌋ right.
    static MpsLayout centered(const Tripartition &t);
    [[nodiscard]] int n() const { return n_c_left + n_a + n_b + n_c_right; }
    [[nodiscard]] Tripartition tripartition() const {
        return {n_a, n_b, n_c_left + n_c_right};
    }
};

/// Left environment Σ_s l_s l_s^H of the first `sites` sites.
Matrix left_environment(const MpsState &m, int sites);
/// Right environment Σ_s r_s r_s^H of the sites from `first` to the end.
Matrix right_environment(const MpsState &m, int first);

/// Number of single-site environment updates performed (for cost tests).
std::uint64_t environment_updates();

/// ρ_AB from contracting the C environments.
dense::DensityMatrix reduced_density_matrix(const MpsState &m,
                                            const MpsLayout &layout);

/// Rényi-2 entropy (base 2) of sites [0, cut).
double renyi2_entropy(const MpsState &m, int cut);

/**
 * @brief Per-realization record. With N_C = 0 the Schmidt spectrum is used;
 * otherwise moments come from ρ^Γ and its square, and the negativity is
 * only computed (by diagonalization) when requested.
 */
stats::SampleRecord sample_record(const MpsState &m, const MpsLayout &layout,
                                  bool with_negativity);

/// p_2, p_3, p_4 of ρ^Γ using one matrix product.
std::array<double, 3> pt_moments_gemm(const dense::DensityMatrix &rho);

struct GridRow {
    Tripartition partition;
    stats::EnsembleStats stats;
};

/**
 * @brief r̃₂ and mean negativity over K realizations at each (N_A, N_C) with
 * N_B = n_ab - N_A.
 */
std::vector<GridRow> mps_phase_diagram(int n_ab, int chi,
                                       const std::vector<std::pair<int, int>> &grid,
                                       int k, std::uint64_t seed,
                                       bool with_negativity);

} // namespace ptm::mps
