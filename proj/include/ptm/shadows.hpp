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
 * Simulated randomized measurements with local Haar rotations, classical
 * shadows and U-statistic estimators of PT moments.
 */

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ptm/dense.hpp"
#include "ptm/random_matrices.hpp"
#include "ptm/stats.hpp"

namespace ptm::shadows {

struct CampaignConfig {
    int n_states = 64;
    int n_unitaries = 100;
    int n_shots = 10;
    std::size_t tuple_budget = 100000;
    std::uint64_t seed = 0;

    void validate() const;
};

/// One shot: the rotation is stored once per unitary in StateMeasurements.
struct ShadowRecord {
    int state_index = 0;
    int unitary_index = 0;
    std::uint32_t bits = 0;
};

/// All records of one state, n_shots consecutive records per unitary.
struct StateMeasurements {
    int state_index = 0;
    int n_qubits = 0;
    int n_shots = 0;
    std::vector<std::vector<Eigen::Matrix2cd>> rotations;
    std::vector<ShadowRecord> records;

    [[nodiscard]] int n_unitaries() const {
        return static_cast<int>(rotations.size());
    }
    /// 3 u†|b⟩⟨b|u - 1 for qubit q of record r.
    [[nodiscard]] Eigen::Matrix2cd shadow_factor(std::size_t r, int q) const;
};

/// 3 u†|b⟩⟨b|u - 1.
Eigen::Matrix2cd shadow_factor(const Eigen::Matrix2cd &u, int bit);

/// Born sampling after independent Haar rotations of every qubit.
StateMeasurements simulate_measurements(const dense::PureState &psi,
                                        const CampaignConfig &cfg,
                                        int state_index, rng::Engine &eng);
StateMeasurements simulate_measurements(const dense::DensityMatrix &rho,
                                        const CampaignConfig &cfg,
                                        int state_index, rng::Engine &eng);

/// Tensor product of the shadow factors of record r on the first k qubits.
dense::Matrix reconstruct_shadow(const StateMeasurements &m, std::size_t r,
                                 int k);

/// tr(ρ̂_1^Γ ⋯ ρ̂_n^Γ) for product shadows, qubit by qubit.
double tuple_value(const StateMeasurements &m, std::span<const std::size_t> recs,
                   int n_a, int n_b);

struct MomentEstimate {
    double value = 0.0;
    double error = 0.0;
    /// Estimate with unitary j removed, j = 0..N_u-1.
    std::vector<double> leave_one_out;
    std::size_t tuples = 0;
    bool exhaustive = false;
};

/// Largest N_AB handled with dense shot-averaged shadows.
inline constexpr int kMaxDenseShadowQubits = 7;

/**
 * @brief U-statistic of tr(ρ̂_{r1}^Γ ⋯ ρ̂_{rn}^Γ) over ordered tuples of
 * pairwise distinct unitaries, ρ̂_r being the shot average of the shadows of
 * unitary r. Orders 2 and 3 are always exact; order 4 is exact when its N_u²/2
 * matrix products cost no more than `budget` sampled tuples, otherwise
 * `budget` uniformly sampled tuples are used. Jackknife leaves one unitary
 * out. A is qubits [0, n_a), B is [n_a, n_a + n_b).
 *
 * Above kMaxDenseShadowQubits the tuples are formed from single records
 * (all of them if within the budget) and evaluated qubit by qubit.
 *
 * @throws ValidationError when fewer than n unitaries are available.
 */
MomentEstimate estimate_pt_moments(const StateMeasurements &m, int n, int n_a,
                                   int n_b, std::size_t budget, rng::Engine &eng);

struct CampaignResult {
    std::array<stats::Estimate, 3> moments;
    stats::Estimate r2_tilde;
    std::array<double, 3> dense_moments{};
    double dense_r2_tilde = 0.0;
    std::size_t records = 0;
};

using StateSampler = std::function<dense::PureState(int, rng::Engine &)>;

/**
 * @brief Estimates E[p_2..4] and r̃₂ over n_states sampled states. Errors
 * combine leave-one-unitary-out jackknives of every state. The dense
 * moments of the same states are reported for reference.
 */
CampaignResult campaign_r2(const CampaignConfig &cfg, const StateSampler &sampler,
                           const Tripartition &t);

/// campaign_r2 over Haar states with layout t.
CampaignResult campaign_r2_haar(const CampaignConfig &cfg, const Tripartition &t);

} // namespace ptm::shadows
