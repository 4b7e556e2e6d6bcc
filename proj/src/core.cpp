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

#include "ptm/core.hpp"

#include <cmath>

namespace ptm {

double log2_abs(const BigInt &x) {
    if (x == 0) {
        return -std::numeric_limits<double>::infinity();
    }
    BigInt a = boost::multiprecision::abs(x);
    const auto msb = static_cast<long>(boost::multiprecision::msb(a));
    if (msb < 60) {
        return std::log2(a.convert_to<double>());
    }
    const long shift = msb - 60;
    BigInt top = a >> shift;
    return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

LogReal to_log_real(const Rational &q) {
    if (q == 0) {
        return LogReal::zero();
    }
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    return LogReal::from_log2(log2_abs(num) - log2_abs(den), num < 0 ? -1 : 1);
}

double to_double(const Rational &q) { return to_log_real(q).to_double(); }

BigInt pow2(unsigned k) { return BigInt(1) << k; }

Tripartition::Tripartition(int n_a, int n_b, int n_c)
    : n_a_(n_a), n_b_(n_b), n_c_(n_c) {
    if (n_a < 0 || n_b < 0 || n_c < 0) {
        throw ValidationError("Tripartition: negative qubit count");
    }
    if (n_a + n_b < 1) {
        throw ValidationError("Tripartition: N_A + N_B must be at least 1");
    }
}

std::size_t Tripartition::dim(int k) {
    if (k < 0 || k > 62) {
        throw CapabilityError("dimension 2^" + std::to_string(k) +
                              " does not fit a machine integer");
    }
    return std::size_t{1} << k;
}

std::string Tripartition::to_string() const {
    return "(" + std::to_string(n_a_) + "," + std::to_string(n_b_) + "," +
           std::to_string(n_c_) + ")";
}

void MomentSet::set(int n, LogReal value) {
    if (n < 0) {
        throw ValidationError("MomentSet: negative order");
    }
    values_[n] = value;
    exact_.erase(n);
}

void MomentSet::set_exact(int n, const Rational &value) {
    if (n < 0) {
        throw ValidationError("MomentSet: negative order");
    }
    values_[n] = to_log_real(value);
    exact_[n] = value;
}

LogReal MomentSet::at(int n) const {
    auto it = values_.find(n);
    if (it == values_.end()) {
        throw ValidationError("MomentSet: moment p_" + std::to_string(n) +
                              " not available");
    }
    return it->second;
}

std::optional<Rational> MomentSet::exact(int n) const {
    auto it = exact_.find(n);
    if (it == exact_.end()) {
        return std::nullopt;
    }
    return it->second;
}

int MomentSet::max_order() const {
    return values_.empty() ? 0 : values_.rbegin()->first;
}

double ratio_r(const MomentSet &m, int n) {
    if (n < 1) {
        throw ValidationError("ratio_r: n must be at least 1");
    }
    const LogReal den = m.at(n + 2) * m.at(n - 1);
    if (den.is_zero()) {
        throw SingularInputError("ratio_r: zero denominator");
    }
    return (m.at(n) * m.at(n + 1) / den).to_double();
}

} // namespace ptm
