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

#include "ptm/pfaffian.hpp"

#include "ptm/errors.hpp"

namespace ptm::linalg {

LogComplex log_pfaffian(Eigen::MatrixXcd a) {
    const Eigen::Index m = a.rows();
    if (a.cols() != m) {
        throw ValidationError("log_pfaffian: matrix is not square");
    }
    LogComplex out;
    if (m % 2 != 0) {
        out.phase = 0.0;
        return out;
    }
    for (Eigen::Index k = 0; k + 1 < m; k += 2) {
        Eigen::Index kp = 0;
        a.col(k).tail(m - k - 1).cwiseAbs().maxCoeff(&kp);
        kp += k + 1;
        if (kp != k + 1) {
            a.row(k + 1).swap(a.row(kp));
            a.col(k + 1).swap(a.col(kp));
            out.phase = -out.phase;
        }
        const std::complex<double> pivot = a(k, k + 1);
        if (pivot == 0.0) {
            out.phase = 0.0;
            out.log_abs = 0.0;
            return out;
        }
        out.log_abs += std::log(std::abs(pivot));
        out.phase *= pivot / std::abs(pivot);
        const Eigen::Index rest = m - k - 2;
        if (rest > 0) {
            const Eigen::VectorXcd tau =
                a.row(k).tail(rest).transpose() / pivot;
            const Eigen::VectorXcd col = a.col(k + 1).tail(rest);
            a.bottomRightCorner(rest, rest) +=
                tau * col.transpose() - col * tau.transpose();
        }
    }
    return out;
}

std::complex<double> pfaffian(const Eigen::MatrixXcd &a) {
    return log_pfaffian(a).value();
}

} // namespace ptm::linalg
