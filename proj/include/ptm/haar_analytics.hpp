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
 * Haar-ensemble averages of PT moments from symmetric-group sums.
 */

#pragma once

#include <string_view>

#include "ptm/core.hpp"

namespace ptm::haar {

inline constexpr int kDefaultMaxMoment = 6;
inline constexpr int kDefaultMaxProductOrder = 8;

enum class Phase { PPT, ME, ES, Boundary };

std::string_view to_string(Phase p);

/**
 * @brief PPT if N_C > N_AB; for N_C < N_AB, ME if N_A > N/2 or N_B > N/2
 * and ES if both are below N/2. Any equality gives Boundary.
 */
Phase classify_phase(const Tripartition &t);

/**
 * @brief E[p_n] = Σ_τ L_A^{c(σ₊τ)} L_B^{c(σ₋τ)} L_C^{c(τ)} / L(L+1)⋯(L+n-1).
 * @throws CapabilityError if n > nmax.
 */
Rational exact_mean_pt_moment(const Tripartition &t, int n,
                              int nmax = kDefaultMaxMoment);

/// Same sum divided by L^n, accumulated in the log domain.
LogReal leading_order_mean_pt_moment(const Tripartition &t, int n,
                                     int nmax = kDefaultMaxMoment);

/// Closed-form large-L value inside a phase; throws on Boundary.
LogReal asymptotic_mean_pt_moment(const Tripartition &t, int n);

/// Moments 1..nmax in each of the three approximations.
MomentSet exact_mean_moments(const Tripartition &t, int nmax = 4);
MomentSet leading_order_mean_moments(const Tripartition &t, int nmax = 4);
MomentSet asymptotic_mean_moments(const Tripartition &t, int nmax = 4);

/// r̃_n = E[p_n]E[p_{n+1}] / (E[p_{n+2}]E[p_{n-1}]).
double tilde_r(int n, const MomentSet &m);

/// ½ log2(E[p_2]² / E[p_3]).
double tilde_e3(const MomentSet &m);

/// E[p_n p_m] summed over S_{n+m}, normalized by Σ_σ L^{c(σ)}.
Rational mean_product_pt_moments(const Tripartition &t, int n, int m,
                                 int max_order = kDefaultMaxProductOrder);

/// E[p_n p_m] - E[p_n] E[p_m].
Rational covariance_pt_moments(const Tripartition &t, int n, int m,
                               int max_order = kDefaultMaxProductOrder);

/// Linearized relative variance of r̃₂ estimated from k_states samples.
double linearized_var_r2(const Tripartition &t, int k_states);

/**
 * @brief Moments of (1-ε)ρ + ε 1/L_AB from the moments of ρ, with
 * p_0 = L_AB = 2^n_ab inserted internally. Orders 1..m.max_order().
 */
MomentSet white_noise_moments(const MomentSet &m, double epsilon, int n_ab);

} // namespace ptm::haar
