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
 * Per-sample records, ensemble summaries and jackknife errors.
 */

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ptm/dense.hpp"

namespace ptm::stats {

enum class Quantity { P2 = 0, P3, P4, R2, Negativity, E3 };
inline constexpr int kQuantityCount = 6;

std::string_view to_string(Quantity q);

/// One sampled state; unavailable quantities are NaN.
struct SampleRecord {
    std::array<double, kQuantityCount> values{};

    [[nodiscard]] double operator[](Quantity q) const {
        return values[static_cast<int>(q)];
    }
    double &operator[](Quantity q) { return values[static_cast<int>(q)]; }

    static SampleRecord from(const dense::StateQuantities &q);
    /// Moments only; negativity and e3 derived where defined.
    static SampleRecord from_moments(double p2, double p3, double p4,
                                     double negativity);
};

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

/**
 * @brief Means, variances, covariance and standard errors over the six
 * quantities, plus r̃₂ = mean(p2)mean(p3)/mean(p4) with a jackknife error.
 */
struct EnsembleStats {
    int count = 0;
    std::uint64_t seed = 0;
    std::array<double, kQuantityCount> mean{};
    std::array<double, kQuantityCount> variance{};
    std::array<double, kQuantityCount> std_error{};
    Eigen::Matrix<double, kQuantityCount, kQuantityCount> covariance;
    Estimate r2_tilde;
    Estimate e3_tilde;

    [[nodiscard]] double mean_of(Quantity q) const {
        return mean[static_cast<int>(q)];
    }
    [[nodiscard]] double error_of(Quantity q) const {
        return std_error[static_cast<int>(q)];
    }
};

EnsembleStats summarize(std::span<const SampleRecord> samples,
                        std::uint64_t seed = 0);

/**
 * @brief Delete-one jackknife of a statistic of column means. `columns`
 * holds one vector per input variable, all of equal length.
 */
Estimate jackknife(const std::vector<std::vector<double>> &columns,
                   const std::function<double(std::span<const double>)> &stat);

/**
 * @brief Jackknife from precomputed leave-one-out values θ_j of a statistic
 * whose full-sample value is `full`.
 */
Estimate jackknife_from_leave_one_out(double full,
                                      std::span<const double> leave_one_out);

/// Worker count used by parallel loops (0 means the OpenMP default).
void set_threads(int threads);
int threads();

/**
 * @brief Evaluates f(0..count-1) in parallel and returns results in index
 * order. Results depend only on the index, never on scheduling.
 */
std::vector<SampleRecord>
collect(int count, const std::function<SampleRecord(std::uint64_t)> &f);

/// Generic ordered parallel for.
void parallel_for(int count, const std::function<void(int)> &f);

} // namespace ptm::stats
