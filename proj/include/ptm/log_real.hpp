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
 * Signed real numbers stored as sign and log2 magnitude.
 */

#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace ptm {

/**
 * @brief Real number x represented by sign(x) and log2|x|.
 *
 * Haar moments at a few hundred qubits are far below the smallest double,
 * but their ratios are of order one.
 */
class LogReal {
  public:
    constexpr LogReal() = default;

    static LogReal from_double(double x);
    static LogReal from_log2(double log2_abs, int sign = 1);
    static LogReal zero() { return {}; }

    [[nodiscard]] int sign() const { return sign_; }
    [[nodiscard]] double log2_abs() const { return log2_abs_; }
    [[nodiscard]] bool is_zero() const { return sign_ == 0; }

    /// Value as a double; underflows to 0 or overflows to inf when needed.
    [[nodiscard]] double to_double() const;

    LogReal operator-() const;
    friend LogReal operator*(const LogReal &a, const LogReal &b);
    friend LogReal operator/(const LogReal &a, const LogReal &b);
    friend LogReal operator+(const LogReal &a, const LogReal &b);
    friend LogReal operator-(const LogReal &a, const LogReal &b);

    /// Exact integer power.
    [[nodiscard]] LogReal pow(int k) const;

  private:
    int sign_ = 0;
    double log2_abs_ = -std::numeric_limits<double>::infinity();
};

/// Sum of same-sign or mixed-sign terms with a single rescaling.
LogReal log_sum(std::span<const LogReal> terms);

} // namespace ptm
