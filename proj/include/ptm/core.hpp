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
 * Tripartition sizes, exact arithmetic aliases and moment containers.
 */

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "ptm/errors.hpp"
#include "ptm/log_real.hpp"

namespace ptm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// log2|x| of a nonzero big integer, accurate to double precision.
double log2_abs(const BigInt &x);

/// Exact rational converted to sign and log2 magnitude.
LogReal to_log_real(const Rational &q);

/// Nearest double (may underflow to zero).
double to_double(const Rational &q);

/// 2^k as an exact integer.
BigInt pow2(unsigned k);

/**
 * @brief Qubit counts of subsystems A, B and C.
 *
 * Amplitudes of a pure state are indexed big-endian with qubit 0 the most
 * significant bit, A first, then B, then C.
 */
class Tripartition {
  public:
    Tripartition(int n_a, int n_b, int n_c);

    [[nodiscard]] int n_a() const { return n_a_; }
    [[nodiscard]] int n_b() const { return n_b_; }
    [[nodiscard]] int n_c() const { return n_c_; }
    [[nodiscard]] int n_ab() const { return n_a_ + n_b_; }
    [[nodiscard]] int n() const { return n_a_ + n_b_ + n_c_; }

    [[nodiscard]] BigInt l_a() const { return pow2(n_a_); }
    [[nodiscard]] BigInt l_b() const { return pow2(n_b_); }
    [[nodiscard]] BigInt l_c() const { return pow2(n_c_); }
    [[nodiscard]] BigInt l_ab() const { return pow2(n_ab()); }
    [[nodiscard]] BigInt l() const { return pow2(n()); }

    /// Machine-sized dimension 2^k; throws for k > 62.
    static std::size_t dim(int k);

    [[nodiscard]] std::string to_string() const;

    bool operator==(const Tripartition &) const = default;

  private:
    int n_a_;
    int n_b_;
    int n_c_;
};

/**
 * @brief PT moments p_1..p_nmax, each stored as a LogReal and optionally
 * as an exact rational.
 */
class MomentSet {
  public:
    enum class Representation { Exact, Float };

    explicit MomentSet(Representation rep = Representation::Float)
        : rep_(rep) {}

    void set(int n, LogReal value);
    void set(int n, double value) { set(n, LogReal::from_double(value)); }
    void set_exact(int n, const Rational &value);

    [[nodiscard]] bool has(int n) const { return values_.count(n) != 0; }
    [[nodiscard]] LogReal at(int n) const;
    [[nodiscard]] double value(int n) const { return at(n).to_double(); }
    [[nodiscard]] std::optional<Rational> exact(int n) const;
    [[nodiscard]] Representation representation() const { return rep_; }
    [[nodiscard]] int max_order() const;
    [[nodiscard]] const std::map<int, LogReal> &values() const {
        return values_;
    }

  private:
    Representation rep_;
    std::map<int, LogReal> values_;
    std::map<int, Rational> exact_;
};

/// r_n = p_n p_{n+1} / (p_{n+2} p_{n-1}); n = 1 needs p_0 in the set.
double ratio_r(const MomentSet &m, int n);

} // namespace ptm
