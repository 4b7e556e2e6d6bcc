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

#include "ptm/haar_analytics.hpp"

#include <cmath>
#include <vector>

#include "ptm/permutations.hpp"

namespace ptm::haar {

namespace {

void check_order(int n, int nmax, const char *what) {
    if (n < 1) {
        throw ValidationError(std::string(what) + ": order must be >= 1");
    }
    if (n > nmax) {
        throw CapabilityError(std::string(what) + ": order " +
                              std::to_string(n) + " exceeds configured max " +
                              std::to_string(nmax));
    }
}

unsigned exponent(const Tripartition &t, const perm::CycleProfile &c) {
    return static_cast<unsigned>(t.n_a() * c.c_a + t.n_b() * c.c_b +
                                 t.n_c() * c.c_c);
}

BigInt profile_sum(const Tripartition &t,
                   const std::vector<perm::CycleProfile> &profile) {
    BigInt sum = 0;
    for (const auto &c : profile) {
        sum += BigInt(c.multiplicity) << exponent(t, c);
    }
    return sum;
}

BigInt rising_factorial(const BigInt &l, int n) {
    BigInt den = 1;
    for (int k = 0; k < n; ++k) {
        den *= l + k;
    }
    return den;
}

LogReal catalan(int k) {
    double c = 1.0;
    for (int i = 0; i < k; ++i) {
        c = c * 2.0 * (2 * i + 1) / (i + 2);
    }
    return LogReal::from_double(c);
}

LogReal two_pow(double e) { return LogReal::from_log2(e, 1); }

} // namespace

std::string_view to_string(Phase p) {
    switch (p) {
    case Phase::PPT:
        return "PPT";
    case Phase::ME:
        return "ME";
    case Phase::ES:
        return "ES";
    case Phase::Boundary:
        return "Boundary";
    }
    return "?";
}

Phase classify_phase(const Tripartition &t) {
    const int n = t.n();
    if (t.n_c() > t.n_ab()) {
        return Phase::PPT;
    }
    if (t.n_c() == t.n_ab() || 2 * t.n_a() == n || 2 * t.n_b() == n) {
        return Phase::Boundary;
    }
    if (2 * t.n_a() > n || 2 * t.n_b() > n) {
        return Phase::ME;
    }
    return Phase::ES;
}

Rational exact_mean_pt_moment(const Tripartition &t, int n, int nmax) {
    check_order(n, nmax, "exact_mean_pt_moment");
    const BigInt num = profile_sum(t, perm::moment_profile(n));
    return Rational(num, rising_factorial(t.l(), n));
}

LogReal leading_order_mean_pt_moment(const Tripartition &t, int n, int nmax) {
    check_order(n, nmax, "leading_order_mean_pt_moment");
    const auto &profile = perm::moment_profile(n);
    std::vector<LogReal> terms;
    terms.reserve(profile.size());
    const double norm = static_cast<double>(t.n()) * n;
    for (const auto &c : profile) {
        terms.push_back(two_pow(std::log2(static_cast<double>(c.multiplicity)) +
                                exponent(t, c) - norm));
    }
    return log_sum(terms);
}

LogReal asymptotic_mean_pt_moment(const Tripartition &t, int n) {
    if (n < 1) {
        throw ValidationError("asymptotic_mean_pt_moment: order must be >= 1");
    }
    const double lab = t.n_ab();
    const double lc = t.n_c();
    switch (classify_phase(t)) {
    case Phase::Boundary:
        throw ValidationError("asymptotic_mean_pt_moment: partition " +
                              t.to_string() +
                              " lies on a phase boundary");
    case Phase::PPT:
        return two_pow(lab * (1 - n));
    case Phase::ES: {
        const int k = n / 2;
        if (n % 2 == 0) {
            return catalan(k) * two_pow(lab - k * (lab + lc));
        }
        return LogReal::from_double(2 * k + 1) * catalan(k) *
               two_pow(-k * (lab + lc));
    }
    case Phase::ME: {
        const double lo = 2 * t.n_a() > t.n() ? t.n_b() : t.n_a();
        if (n % 2 == 0) {
            return two_pow(lc * (1 - n) + lo * (2 - n));
        }
        return two_pow((lc + lo) * (1 - n));
    }
    }
    return LogReal::zero();
}

MomentSet exact_mean_moments(const Tripartition &t, int nmax) {
    MomentSet m(MomentSet::Representation::Exact);
    for (int n = 1; n <= nmax; ++n) {
        m.set_exact(n, exact_mean_pt_moment(t, n, std::max(nmax, 1)));
    }
    return m;
}

MomentSet leading_order_mean_moments(const Tripartition &t, int nmax) {
    MomentSet m;
    for (int n = 1; n <= nmax; ++n) {
        m.set(n, leading_order_mean_pt_moment(t, n, std::max(nmax, 1)));
    }
    return m;
}

MomentSet asymptotic_mean_moments(const Tripartition &t, int nmax) {
    MomentSet m;
    for (int n = 1; n <= nmax; ++n) {
        m.set(n, asymptotic_mean_pt_moment(t, n));
    }
    return m;
}

double tilde_r(int n, const MomentSet &m) { return ratio_r(m, n); }

double tilde_e3(const MomentSet &m) {
    const LogReal p2 = m.at(2);
    const LogReal p3 = m.at(3);
    if (p3.sign() <= 0 || p2.is_zero()) {
        throw SingularInputError("tilde_e3: requires p2 != 0 and p3 > 0");
    }
    return 0.5 * (2.0 * p2.log2_abs() - p3.log2_abs());
}

Rational mean_product_pt_moments(const Tripartition &t, int n, int m,
                                 int max_order) {
    if (n < 1 || m < 1) {
        throw ValidationError("mean_product_pt_moments: orders must be >= 1");
    }
    if (n + m > max_order) {
        throw CapabilityError("mean_product_pt_moments: n+m = " +
                              std::to_string(n + m) + " exceeds " +
                              std::to_string(max_order));
    }
    const BigInt num = profile_sum(t, perm::product_profile(n, m));
    return Rational(num, rising_factorial(t.l(), n + m));
}

Rational covariance_pt_moments(const Tripartition &t, int n, int m,
                               int max_order) {
    const Rational joint = mean_product_pt_moments(t, n, m, max_order);
    const int nmax = std::max({n, m, kDefaultMaxMoment});
    return joint - exact_mean_pt_moment(t, n, nmax) *
                       exact_mean_pt_moment(t, m, nmax);
}

double linearized_var_r2(const Tripartition &t, int k_states) {
    if (k_states < 1) {
        throw ValidationError("linearized_var_r2: k_states must be >= 1");
    }
    const int orders[3] = {2, 3, 4};
    const int sign[3] = {1, 1, -1};
    Rational mean[3];
    for (int i = 0; i < 3; ++i) {
        mean[i] = exact_mean_pt_moment(t, orders[i]);
    }
    Rational total = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            const Rational cov = covariance_pt_moments(t, orders[i], orders[j]);
            const Rational term = cov / (mean[i] * mean[j]);
            if (i == j) {
                total += term;
            } else {
                total += 2 * sign[i] * sign[j] * term;
            }
        }
    }
    return to_double(total) / k_states;
}

MomentSet white_noise_moments(const MomentSet &m, double epsilon, int n_ab) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw ValidationError("white_noise_moments: epsilon must lie in [0,1]");
    }
    if (n_ab < 1) {
        throw ValidationError("white_noise_moments: n_ab must be >= 1");
    }
    const int nmax = m.max_order();
    const LogReal keep = LogReal::from_double(1.0 - epsilon);
    const LogReal mix = epsilon == 0.0 ? LogReal::zero()
                                       : two_pow(std::log2(epsilon) - n_ab);
    MomentSet out;
    for (int n = 1; n <= nmax; ++n) {
        std::vector<LogReal> terms;
        double binom = 1.0;
        for (int k = 0; k <= n; ++k) {
            const LogReal pk = k == 0 ? two_pow(n_ab) : m.at(k);
            terms.push_back(LogReal::from_double(binom) * keep.pow(k) * pk *
                            mix.pow(n - k));
            binom = binom * (n - k) / (k + 1);
        }
        out.set(n, log_sum(terms));
    }
    return out;
}

} // namespace ptm::haar
