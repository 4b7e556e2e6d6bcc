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

#include "ptm/log_real.hpp"

#include <algorithm>

#include "ptm/errors.hpp"

namespace ptm {

LogReal LogReal::from_double(double x) {
    if (std::isnan(x)) {
        throw NumericError("LogReal: NaN input");
    }
    LogReal r;
    if (x == 0.0) {
        return r;
    }
    r.sign_ = x > 0 ? 1 : -1;
    r.log2_abs_ = std::log2(std::abs(x));
    return r;
}

LogReal LogReal::from_log2(double log2_abs, int sign) {
    LogReal r;
    if (sign == 0 || log2_abs == -std::numeric_limits<double>::infinity()) {
        return r;
    }
    r.sign_ = sign > 0 ? 1 : -1;
    r.log2_abs_ = log2_abs;
    return r;
}

double LogReal::to_double() const {
    if (sign_ == 0) {
        return 0.0;
    }
    return sign_ * std::exp2(log2_abs_);
}

LogReal LogReal::operator-() const {
    LogReal r = *this;
    r.sign_ = -sign_;
    return r;
}

LogReal operator*(const LogReal &a, const LogReal &b) {
    if (a.is_zero() || b.is_zero()) {
        return LogReal{};
    }
    return LogReal::from_log2(a.log2_abs_ + b.log2_abs_, a.sign_ * b.sign_);
}

LogReal operator/(const LogReal &a, const LogReal &b) {
    if (b.is_zero()) {
        throw SingularInputError("LogReal: division by zero");
    }
    if (a.is_zero()) {
        return LogReal{};
    }
    return LogReal::from_log2(a.log2_abs_ - b.log2_abs_, a.sign_ * b.sign_);
}

LogReal operator+(const LogReal &a, const LogReal &b) {
    if (a.is_zero()) {
        return b;
    }
    if (b.is_zero()) {
        return a;
    }
    const LogReal &hi = a.log2_abs_ >= b.log2_abs_ ? a : b;
    const LogReal &lo = a.log2_abs_ >= b.log2_abs_ ? b : a;
    const double ratio = std::exp2(lo.log2_abs_ - hi.log2_abs_);
    const double s = 1.0 + (hi.sign_ == lo.sign_ ? ratio : -ratio);
    if (s == 0.0) {
        return LogReal{};
    }
    return LogReal::from_log2(hi.log2_abs_ + std::log2(std::abs(s)),
                              s > 0 ? hi.sign_ : -hi.sign_);
}

LogReal operator-(const LogReal &a, const LogReal &b) { return a + (-b); }

LogReal LogReal::pow(int k) const {
    if (k == 0) {
        return from_log2(0.0, 1);
    }
    if (is_zero()) {
        if (k < 0) {
            throw SingularInputError("LogReal: negative power of zero");
        }
        return LogReal{};
    }
    const int s = (k % 2 == 0) ? 1 : sign_;
    return from_log2(log2_abs_ * k, s);
}

LogReal log_sum(std::span<const LogReal> terms) {
    double top = -std::numeric_limits<double>::infinity();
    for (const auto &t : terms) {
        if (!t.is_zero()) {
            top = std::max(top, t.log2_abs());
        }
    }
    if (top == -std::numeric_limits<double>::infinity()) {
        return LogReal{};
    }
    double acc = 0.0;
    for (const auto &t : terms) {
        if (!t.is_zero()) {
            acc += t.sign() * std::exp2(t.log2_abs() - top);
        }
    }
    if (acc == 0.0) {
        return LogReal{};
    }
    return LogReal::from_log2(top + std::log2(std::abs(acc)), acc > 0 ? 1 : -1);
}

} // namespace ptm
