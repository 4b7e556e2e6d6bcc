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

#include "ptm/stabilizer.hpp"

#include <cmath>

namespace ptm::stabilizer {

namespace {

Rational inv_pow2(int k) { return Rational(BigInt(1), pow2(k)); }

} // namespace

void StabilizerTriple::validate() const {
    if (s_a < 0 || s_b < 0 || s_c < 0 || g_abc < 0 || e_ab < 0 || e_ac < 0 ||
        e_bc < 0) {
        throw ValidationError("StabilizerTriple: counts must be nonnegative");
    }
}

Tripartition StabilizerTriple::tripartition() const {
    validate();
    return {s_a + g_abc + e_ab + e_ac, s_b + g_abc + e_ab + e_bc,
            s_c + g_abc + e_ac + e_bc};
}

MomentSet stab_pt_moments(const StabilizerTriple &t) {
    t.validate();
    const int k = t.mixing();
    MomentSet m(MomentSet::Representation::Exact);
    m.set_exact(1, Rational(1));
    m.set_exact(2, inv_pow2(k));
    m.set_exact(3, inv_pow2(2 * t.e_ab + 2 * k));
    m.set_exact(4, inv_pow2(2 * t.e_ab + 3 * k));
    return m;
}

StabInvariants stab_invariants(const StabilizerTriple &t) {
    t.validate();
    const int k = t.mixing();
    const int log_p2 = -k;
    const int log_p3 = -2 * t.e_ab - 2 * k;
    const int log_p4 = -2 * t.e_ab - 3 * k;
    StabInvariants inv;
    inv.r2 = std::exp2(log_p2 + log_p3 - log_p4);
    inv.negativity = t.e_ab;
    inv.e3 = 0.5 * (2 * log_p2 - log_p3);
    return inv;
}

StabSpectrum stab_spectrum(const StabilizerTriple &t) {
    t.validate();
    StabSpectrum s;
    s.magnitude = std::exp2(-(t.e_ab + t.mixing()));
    const BigInt four = pow2(2 * t.e_ab);
    const BigInt two = pow2(t.e_ab);
    const BigInt scale = pow2(t.mixing());
    s.positive = (four + two) / 2 * scale;
    s.negative = (four - two) / 2 * scale;
    return s;
}

dense::PureState build_dense_state(const StabilizerTriple &t) {
    const Tripartition p = t.tripartition();
    if (p.n() > dense::kMaxStateQubits) {
        throw CapabilityError("build_dense_state: too many qubits");
    }
    const int n = p.n();
    const int a0 = 0;
    const int b0 = p.n_a();
    const int c0 = p.n_ab();
    std::vector<std::vector<int>> groups;
    for (int j = 0; j < t.g_abc; ++j) {
        groups.push_back({a0 + t.s_a + j, b0 + t.s_b + j, c0 + t.s_c + j});
    }
    for (int j = 0; j < t.e_ab; ++j) {
        groups.push_back({a0 + t.s_a + t.g_abc + j, b0 + t.s_b + t.g_abc + j});
    }
    for (int j = 0; j < t.e_ac; ++j) {
        groups.push_back({a0 + t.s_a + t.g_abc + t.e_ab + j,
                          c0 + t.s_c + t.g_abc + j});
    }
    for (int j = 0; j < t.e_bc; ++j) {
        groups.push_back({b0 + t.s_b + t.g_abc + t.e_ab + j,
                          c0 + t.s_c + t.g_abc + t.e_ac + j});
    }
    const auto m = static_cast<int>(groups.size());
    dense::Vector amps = dense::Vector::Zero(
        static_cast<Eigen::Index>(Tripartition::dim(n)));
    const double amp = std::exp2(-0.5 * m);
    for (std::size_t x = 0; x < (std::size_t{1} << m); ++x) {
        std::size_t idx = 0;
        for (int j = 0; j < m; ++j) {
            if ((x >> j) & 1U) {
                for (int q : groups[j]) {
                    idx |= std::size_t{1} << (n - 1 - q);
                }
            }
        }
        amps[static_cast<Eigen::Index>(idx)] = amp;
    }
    return dense::PureState::normalized(std::move(amps), p);
}

std::vector<StabilizerTriple> enumerate_triples(const Tripartition &p) {
    std::vector<StabilizerTriple> out;
    const int na = p.n_a();
    const int nb = p.n_b();
    const int nc = p.n_c();
    for (int g = 0; g <= std::min({na, nb, nc}); ++g) {
        for (int eab = 0; eab <= std::min(na, nb) - g; ++eab) {
            for (int eac = 0; eac <= std::min(na - g - eab, nc - g); ++eac) {
                for (int ebc = 0; ebc <= std::min(nb - g - eab, nc - g - eac);
                     ++ebc) {
                    StabilizerTriple t;
                    t.g_abc = g;
                    t.e_ab = eab;
                    t.e_ac = eac;
                    t.e_bc = ebc;
                    t.s_a = na - g - eab - eac;
                    t.s_b = nb - g - eab - ebc;
                    t.s_c = nc - g - eac - ebc;
                    out.push_back(t);
                }
            }
        }
    }
    return out;
}

StabilizerTriple random_triple(const Tripartition &p, rng::Engine &eng) {
    const auto all = enumerate_triples(p);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    return all[pick(eng)];
}

StabilizerTriple random_triple(int max_qubits, rng::Engine &eng) {
    if (max_qubits < 1) {
        throw ValidationError("random_triple: max_qubits must be >= 1");
    }
    std::uniform_int_distribution<int> count(0, 3);
    for (;;) {
        StabilizerTriple t;
        t.s_a = count(eng);
        t.s_b = count(eng);
        t.s_c = count(eng);
        t.g_abc = count(eng);
        t.e_ab = count(eng);
        t.e_ac = count(eng);
        t.e_bc = count(eng);
        const int n = t.s_a + t.s_b + t.s_c + 3 * t.g_abc +
                      2 * (t.e_ab + t.e_ac + t.e_bc);
        const int nab = t.s_a + t.s_b + 2 * t.g_abc + 2 * t.e_ab + t.e_ac +
                        t.e_bc;
        if (n <= max_qubits && nab >= 1) {
            return t;
        }
    }
}

} // namespace ptm::stabilizer
