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

#include "ptm/pxp.hpp"

#include <cmath>
#include <complex>

#include "ptm/stats.hpp"

namespace ptm::pxp {

namespace {

bool allowed(std::uint32_t bits) { return (bits & (bits >> 1)) == 0; }

} // namespace

ConstrainedBasis::ConstrainedBasis(int n) : n_(n) {
    if (n < 1 || n > kMaxChain) {
        throw CapabilityError("ConstrainedBasis: chain length must be in 1.." +
                              std::to_string(kMaxChain));
    }
    const std::uint32_t full = 1U << n;
    lookup_.assign(full, -1);
    for (std::uint32_t b = 0; b < full; ++b) {
        if (allowed(b)) {
            lookup_[b] = static_cast<std::int32_t>(states_.size());
            states_.push_back(b);
        }
    }
}

Eigen::Index ConstrainedBasis::index_of(std::uint32_t bits) const {
    if (bits >= lookup_.size()) {
        return -1;
    }
    return lookup_[bits];
}

std::uint64_t constrained_dimension(int n) {
    if (n < 1) {
        throw ValidationError("constrained_dimension: n must be >= 1");
    }
    std::uint64_t a = 2;
    std::uint64_t b = 3;
    if (n == 1) {
        return a;
    }
    for (int k = 3; k <= n; ++k) {
        const std::uint64_t c = a + b;
        a = b;
        b = c;
    }
    return b;
}

Eigen::MatrixXd build_pxp(const ConstrainedBasis &basis, double omega) {
    const Eigen::Index d = basis.dim();
    const int n = basis.sites();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const std::uint32_t b = basis.state(i);
        for (int site = 0; site < n; ++site) {
            const std::uint32_t flipped = b ^ (1U << (n - 1 - site));
            const Eigen::Index j = basis.index_of(flipped);
            if (j >= 0) {
                h(j, i) = omega;
            }
        }
    }
    return h;
}

std::string_view to_string(InitialState s) {
    return s == InitialState::Z2 ? "z2" : "polarized";
}

InitialState initial_state_from_string(std::string_view s) {
    if (s == "z2" || s == "Z2") {
        return InitialState::Z2;
    }
    if (s == "polarized") {
        return InitialState::Polarized;
    }
    throw ValidationError("unknown initial state '" + std::string(s) + "'");
}

std::uint32_t initial_bits(int n, InitialState s) {
    if (s == InitialState::Polarized) {
        return 0;
    }
    std::uint32_t b = 0;
    for (int site = 0; site < n; site += 2) {
        b |= 1U << (n - 1 - site);
    }
    return b;
}

std::vector<double> uniform_times(double t0, double t1, int count) {
    if (count < 1) {
        throw ValidationError("uniform_times: count must be >= 1");
    }
    std::vector<double> t(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        t[static_cast<std::size_t>(i)] =
            count == 1 ? t0 : t0 + (t1 - t0) * i / (count - 1);
    }
    return t;
}

QuenchRun evolve_from_bits(int n, std::uint32_t bits,
                           const std::vector<double> &times) {
    const ConstrainedBasis basis(n);
    const Eigen::Index i0 = basis.index_of(bits);
    if (i0 < 0) {
        throw ValidationError("evolve_quench: initial state violates the "
                              "blockade constraint");
    }
    const Eigen::MatrixXd h = build_pxp(basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) {
        throw NumericError("evolve_quench: eigensolver failed");
    }
    const Eigen::VectorXd &e = es.eigenvalues();
    const Eigen::MatrixXd &v = es.eigenvectors();
    const Eigen::VectorXd overlap = v.row(i0).transpose();
    QuenchRun run;
    run.n = n;
    run.times = times;
    run.energy = h(i0, i0);
    run.snapshots.resize(basis.dim(), static_cast<Eigen::Index>(times.size()));
    for (std::size_t k = 0; k < times.size(); ++k) {
        Eigen::VectorXcd c(e.size());
        for (Eigen::Index j = 0; j < e.size(); ++j) {
            c[j] = overlap[j] * std::exp(std::complex<double>(0.0, -e[j] * times[k]));
        }
        run.snapshots.col(static_cast<Eigen::Index>(k)) = v.cast<std::complex<double>>() * c;
    }
    return run;
}

QuenchRun evolve_quench(int n, InitialState initial,
                        const std::vector<double> &times) {
    QuenchRun run = evolve_from_bits(n, initial_bits(n, initial), times);
    run.initial = initial;
    return run;
}

dense::Vector embed(const ConstrainedBasis &basis, const Eigen::VectorXcd &coeffs) {
    if (coeffs.size() != basis.dim()) {
        throw ValidationError("embed: coefficient count differs from basis");
    }
    dense::Vector out = dense::Vector::Zero(
        static_cast<Eigen::Index>(Tripartition::dim(basis.sites())));
    for (Eigen::Index i = 0; i < basis.dim(); ++i) {
        out[static_cast<Eigen::Index>(basis.state(i))] = coeffs[i];
    }
    return out;
}

double entanglement_entropy(const dense::Vector &psi, int n, int cut) {
    if (cut <= 0 || cut >= n) {
        return 0.0;
    }
    const auto left = static_cast<Eigen::Index>(Tripartition::dim(cut));
    const auto right = static_cast<Eigen::Index>(Tripartition::dim(n - cut));
    const Eigen::Map<const dense::Matrix> m(psi.data(), right, left);
    Eigen::BDCSVD<dense::Matrix> svd(m);
    double s = 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        const double p = svd.singularValues()[i] * svd.singularValues()[i];
        if (p > 1e-300) {
            s -= p * std::log2(p);
        }
    }
    return s;
}

std::vector<Tripartition> contiguous_tripartitions(int n) {
    std::vector<Tripartition> out;
    for (int nc = 0; nc <= n - 2; ++nc) {
        for (int na = 1; na <= n - nc - 1; ++na) {
            out.emplace_back(na, n - nc - na, nc);
        }
    }
    return out;
}

std::string_view to_string(ChainLayout l) {
    return l == ChainLayout::Block ? "block" : "split";
}

ChainLayout chain_layout_from_string(std::string_view s) {
    if (s == "block") {
        return ChainLayout::Block;
    }
    if (s == "split") {
        return ChainLayout::Split;
    }
    throw ValidationError("unknown chain layout '" + std::string(s) + "'");
}

dense::PureState chain_state(const dense::Vector &psi, const Tripartition &t,
                             ChainLayout layout) {
    const int n = t.n();
    if (psi.size() != (Eigen::Index{1} << n)) {
        throw ValidationError("chain_state: size does not match the tripartition");
    }
    if (layout == ChainLayout::Block || t.n_c() == 0) {
        return dense::PureState(psi, t);
    }
    // Chain [C_L | A | B | C_R] to [A | B | C_L | C_R]: rotate C_L to the end.
    const int left = (t.n_c() + 1) / 2;
    const int ab = t.n_ab();
    const std::uint64_t ab_mask = (std::uint64_t{1} << ab) - 1;
    const int right = n - left - ab;
    dense::Vector out(psi.size());
    for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(psi.size()); ++x) {
        const std::uint64_t cl = x >> (ab + right);
        const std::uint64_t mid = (x >> right) & ab_mask;
        const std::uint64_t cr = x & ((std::uint64_t{1} << right) - 1);
        const std::uint64_t y = (mid << (left + right)) | (cl << right) | cr;
        out[static_cast<Eigen::Index>(y)] = psi[static_cast<Eigen::Index>(x)];
    }
    return dense::PureState(std::move(out), t);
}

std::vector<TripartitionRow> tripartition_scan(const QuenchRun &run, double t_lo,
                                               double t_hi, ChainLayout layout) {
    const ConstrainedBasis basis(run.n);
    std::vector<dense::PureState> states;
    for (std::size_t k = 0; k < run.times.size(); ++k) {
        if (run.times[k] >= t_lo && run.times[k] <= t_hi) {
            states.push_back(dense::PureState::normalized(
                embed(basis, run.snapshots.col(static_cast<Eigen::Index>(k))),
                Tripartition(run.n, 0, 0)));
        }
    }
    if (states.empty()) {
        throw ValidationError("tripartition_scan: no snapshot in the window");
    }
    const auto parts = contiguous_tripartitions(run.n);
    std::vector<TripartitionRow> rows(parts.size(), TripartitionRow{parts[0]});
    stats::parallel_for(static_cast<int>(parts.size()), [&](int p) {
        const Tripartition &t = parts[static_cast<std::size_t>(p)];
        TripartitionRow row{t};
        for (const auto &s : states) {
            const dense::PureState ps = chain_state(s.amplitudes(), t, layout);
            const auto q = dense::quantities(dense::negativity_spectrum(ps));
            row.mean_negativity += q.negativity;
            row.p2 += q.p2;
            row.p3 += q.p3;
            row.p4 += q.p4;
        }
        const double k = static_cast<double>(states.size());
        row.mean_negativity /= k;
        row.p2 /= k;
        row.p3 /= k;
        row.p4 /= k;
        row.r2_tilde = row.p2 * row.p3 / row.p4;
        row.snapshots = static_cast<int>(states.size());
        rows[static_cast<std::size_t>(p)] = row;
    });
    return rows;
}

} // namespace ptm::pxp
