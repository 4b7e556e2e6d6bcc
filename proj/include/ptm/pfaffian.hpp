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
 * Pfaffians of complex skew-symmetric matrices in log-magnitude form.
 */

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace ptm::linalg {

/// z = phase · exp(log_abs); zero is phase = 0.
struct LogComplex {
    double log_abs = 0.0;
    std::complex<double> phase = 1.0;

    [[nodiscard]] bool is_zero() const { return phase == 0.0; }
    [[nodiscard]] std::complex<double> value() const {
        return is_zero() ? 0.0 : phase * std::exp(log_abs);
    }
};

/// Parlett-Reid tridiagonalization with partial pivoting.
LogComplex log_pfaffian(Eigen::MatrixXcd a);

std::complex<double> pfaffian(const Eigen::MatrixXcd &a);

} // namespace ptm::linalg
