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
 * Seeded ensembles of random states and phase-diagram scans.
 */

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "ptm/dense.hpp"
#include "ptm/haar_analytics.hpp"
#include "ptm/pxp.hpp"
#include "ptm/random_matrices.hpp"
#include "ptm/stats.hpp"

namespace ptm::ensembles {

enum class Family {
    Haar,
    NoisyHaar,
    Stabilizer,
    RandomMps,
    Fermion,
    DopedMatchgate,
    PxpWindow
};

std::string_view to_string(Family f);
Family family_from_string(std::string_view s);

struct FamilyParams {
    double epsilon = 0.0;
    int chi = 8;
    int n_swap = 0;
    /// Diagonalize ρ^Γ for the negativity where the family allows skipping it.
    bool with_negativity = true;
    pxp::InitialState initial = pxp::InitialState::Polarized;
    pxp::ChainLayout layout = pxp::ChainLayout::Block;
    double t_lo = 20.0;
    double t_hi = 50.0;
};

struct EnsembleSpec {
    Family family = Family::Haar;
    Tripartition partition{1, 1, 0};
    int count = 1;
    std::uint64_t seed = 0;
    FamilyParams params;
};

/// Normalized complex Gaussian amplitudes.
dense::PureState sample_haar_state(const Tripartition &layout, rng::Engine &eng);

/// Sampled records of the ensemble, in sample order.
std::vector<stats::SampleRecord> sample_ensemble(const EnsembleSpec &spec);

stats::EnsembleStats run_ensemble(const EnsembleSpec &spec);

struct ScanRow {
    Tripartition partition;
    stats::EnsembleStats stats;
};

/// run_ensemble at every grid point with the same seed.
std::vector<ScanRow> phase_diagram_scan(Family family, const FamilyParams &params,
                                        const std::vector<Tripartition> &grid,
                                        int count, std::uint64_t seed);

enum class Method { Exact, LeadingOrder, Asymptotic };

Method method_from_string(std::string_view s);

struct AnalyticRow {
    Tripartition partition;
    haar::Phase phase;
    MomentSet moments;
    double r2_tilde = 0.0;
    double e3_tilde = 0.0;
};

/// Haar averages of p_1..p_4 at every grid point, optionally with white noise.
std::vector<AnalyticRow> analytic_scan(const std::vector<Tripartition> &grid,
                                       Method method, double epsilon = 0.0);

/// N_A = 1..n_ab-1 and N_C = 0..nc_max.
std::vector<Tripartition> full_grid(int n_ab, int nc_max);

/**
 * @brief rows x cols points: N_A ≈ i n_ab/(rows+1) for i = 1..rows and
 * N_C ≈ f N_AB/(1-f) with f = j max_fraction/(cols-1), j = 0..cols-1.
 * Duplicates from rounding are kept so the grid shape is fixed.
 */
std::vector<Tripartition> fraction_grid(int n_ab, int rows, int cols,
                                        double max_fraction);

} // namespace ptm::ensembles
