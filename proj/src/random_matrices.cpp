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

#include "ptm/random_matrices.hpp"

#include <cmath>
#include <complex>

#include "ptm/errors.hpp"

namespace ptm::rng {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Engine stream(std::uint64_t seed, std::uint64_t index, std::uint64_t sub) {
    const std::uint64_t h =
        splitmix64(splitmix64(splitmix64(seed) ^ index) ^ (sub + 0x51ed27ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(h),
                      static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(sub)};
    return Engine(seq);
}

Eigen::VectorXcd complex_normal_vector(Eigen::Index n, Engine &eng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = normal(eng);
        const double im = normal(eng);
        v[i] = {re, im};
    }
    return v;
}

Eigen::MatrixXcd complex_normal_matrix(Eigen::Index rows, Eigen::Index cols,
                                       Engine &eng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(eng);
            const double im = normal(eng);
            m(i, j) = {re, im};
        }
    }
    return m;
}

Eigen::MatrixXcd haar_unitary(Eigen::Index dim, Engine &eng) {
    if (dim < 1) {
        throw ValidationError("haar_unitary: dimension must be >= 1");
    }
    const Eigen::MatrixXcd z = complex_normal_matrix(dim, dim, eng);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const std::complex<double> d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= a > 0 ? d / a : std::complex<double>(1.0);
    }
    return q;
}

Eigen::MatrixXd haar_special_orthogonal(Eigen::Index dim, Engine &eng) {
    if (dim < 1) {
        throw ValidationError("haar_special_orthogonal: dimension must be >= 1");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd z(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            z(i, j) = normal(eng);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < dim; ++j) {
        if (r(j, j) < 0) {
            q.col(j) *= -1.0;
        }
    }
    if (q.determinant() < 0) {
        q.col(0) *= -1.0;
    }
    return q;
}

} // namespace ptm::rng
