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

#include "ptm/fermion_gaussian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

namespace ptm::fermion {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

RealMatrix cayley_shift(int k) {
    RealMatrix p = RealMatrix::Zero(k, k);
    for (int j = 1; j < k; ++j) {
        p(j - 1, j) = 1.0;
    }
    p(k - 1, 0) = -1.0;
    const RealMatrix id = RealMatrix::Identity(k, k);
    return (id + p).lu().solve(id - p);
}

ComplexMatrix kron_identity(const RealMatrix &c, Eigen::Index d) {
    const Eigen::Index k = c.rows();
    ComplexMatrix out = ComplexMatrix::Zero(k * d, k * d);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            if (c(i, j) != 0.0) {
                out.block(i * d, j * d, d, d).diagonal().setConstant(c(i, j));
            }
        }
    }
    return out;
}

// Sum of coefficient * trace terms rescaled by the largest magnitude.
struct ScaledSum {
    std::vector<std::pair<cd, linalg::LogComplex>> terms;

    void add(cd coef, const linalg::LogComplex &t) { terms.emplace_back(coef, t); }

    [[nodiscard]] cd value() const {
        double top = -std::numeric_limits<double>::infinity();
        for (const auto &[c, t] : terms) {
            if (!t.is_zero() && c != 0.0) {
                top = std::max(top, t.log_abs);
            }
        }
        if (!std::isfinite(top)) {
            return 0.0;
        }
        cd s = 0.0;
        for (const auto &[c, t] : terms) {
            if (!t.is_zero()) {
                s += c * t.phase * std::exp(t.log_abs - top);
            }
        }
        return s * std::exp(top);
    }
};

double relative_imag(cd z) {
    const double re = std::abs(z.real());
    return re > 0.0 ? std::abs(z.imag()) / re : std::abs(z.imag());
}

std::pair<cd, std::uint64_t> majorana_on_basis(std::uint64_t x, int j, int n) {
    const int k = j / 2;
    const int shift = n - 1 - k;
    const int parity = std::popcount(x >> (shift + 1)) & 1;
    cd phase = parity != 0 ? -1.0 : 1.0;
    const bool bit = ((x >> shift) & 1U) != 0;
    if (j % 2 == 1) {
        phase *= bit ? -kI : kI;
    }
    return {phase, x ^ (std::uint64_t{1} << shift)};
}

void check_dense_modes(int n) {
    if (n < 1 || n > kMaxDenseModes) {
        throw CapabilityError("dense fermion oracle supports 1.." +
                              std::to_string(kMaxDenseModes) + " modes");
    }
}

void apply_two_qubit(dense::Vector &psi, int n, int q, const Gate4 &g) {
    const std::size_t dim = std::size_t{1} << n;
    const int s0 = n - 1 - q;
    const int s1 = n - 2 - q;
    const std::size_t m0 = std::size_t{1} << s0;
    const std::size_t m1 = std::size_t{1} << s1;
    for (std::size_t x = 0; x < dim; ++x) {
        if ((x & m0) != 0 || (x & m1) != 0) {
            continue;
        }
        const std::size_t idx[4] = {x, x | m1, x | m0, x | m0 | m1};
        cd in[4];
        for (int a = 0; a < 4; ++a) {
            in[a] = psi[static_cast<Eigen::Index>(idx[a])];
        }
        for (int a = 0; a < 4; ++a) {
            cd acc = 0.0;
            for (int b = 0; b < 4; ++b) {
                acc += g(a, b) * in[b];
            }
            psi[static_cast<Eigen::Index>(idx[a])] = acc;
        }
    }
}

} // namespace

CovarianceMatrix::CovarianceMatrix(ComplexMatrix g) : g_(std::move(g)) {
    if (g_.rows() != g_.cols() || g_.rows() % 2 != 0 || g_.rows() == 0) {
        throw ValidationError("CovarianceMatrix: must be square of even size");
    }
    if ((g_ + g_.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
        throw ValidationError("CovarianceMatrix: not antisymmetric");
    }
}

bool CovarianceMatrix::is_pure(double tol) const {
    const ComplexMatrix sq = g_ * g_;
    return (sq - ComplexMatrix::Identity(g_.rows(), g_.cols()))
               .cwiseAbs()
               .maxCoeff() <= tol;
}

CovarianceMatrix vacuum_covariance(int n_modes) {
    if (n_modes < 1) {
        throw ValidationError("vacuum_covariance: n_modes must be >= 1");
    }
    ComplexMatrix g = ComplexMatrix::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        g(2 * k, 2 * k + 1) = kI;
        g(2 * k + 1, 2 * k) = -kI;
    }
    return CovarianceMatrix(std::move(g));
}

RealMatrix sample_special_orthogonal(int dim, rng::Engine &eng) {
    if (dim < 2 || dim % 2 != 0) {
        throw ValidationError("sample_special_orthogonal: dim must be even");
    }
    return rng::haar_special_orthogonal(dim, eng);
}

CovarianceMatrix rotate(const CovarianceMatrix &g, const RealMatrix &r) {
    if (r.rows() != g.matrix().rows() || r.cols() != r.rows()) {
        throw ValidationError("rotate: dimension mismatch");
    }
    const ComplexMatrix rc = r.cast<cd>();
    ComplexMatrix out = rc * g.matrix() * rc.transpose();
    out = 0.5 * (out - out.transpose());
    return CovarianceMatrix(std::move(out));
}

RestrictedPair restrict_and_gplus(const CovarianceMatrix &g, ModeSplit split,
                                  std::span<const int> keep) {
    if (split.n_a < 0 || split.n_b < 0 || split.n_a + split.n_b < 1) {
        throw ValidationError("restrict_and_gplus: invalid split");
    }
    const int n_ab = split.n_a + split.n_b;
    if (static_cast<int>(keep.size()) != n_ab) {
        throw ValidationError("restrict_and_gplus: keep size differs from split");
    }
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= g.modes()) {
            throw ValidationError("restrict_and_gplus: mode out of range");
        }
        if (i > 0 && keep[i] != keep[i - 1] + 1) {
            throw UnsupportedLayoutError(
                "restrict_and_gplus: kept modes must be one contiguous block");
        }
    }
    const Eigen::Index off = 2 * keep[0];
    const Eigen::Index d = 2 * n_ab;
    const ComplexMatrix gp = g.matrix().block(off, off, d, d);
    ComplexMatrix plus = gp;
    const Eigen::Index da = 2 * split.n_a;
    const Eigen::Index db = 2 * split.n_b;
    plus.block(0, da, da, db) *= kI;
    plus.block(da, 0, db, da) *= kI;
    plus.block(da, da, db, db) *= -1.0;
    return {CovarianceMatrix(gp), plus};
}

RestrictedPair restrict_and_gplus(const CovarianceMatrix &g, ModeSplit split) {
    std::vector<int> keep(static_cast<std::size_t>(split.n_a + split.n_b));
    std::iota(keep.begin(), keep.end(), 0);
    return restrict_and_gplus(g, split, keep);
}

linalg::LogComplex trace_product(std::span<const ComplexMatrix> kernels) {
    if (kernels.empty()) {
        throw ValidationError("trace_product: empty product");
    }
    const Eigen::Index d = kernels[0].rows();
    std::vector<ComplexMatrix> gs(kernels.begin(), kernels.end());
    for (const auto &k : gs) {
        if (k.rows() != d || k.cols() != d || d % 2 != 0) {
            throw ValidationError("trace_product: kernel shape mismatch");
        }
    }
    const bool odd = gs.size() % 2 == 1;
    if (odd) {
        gs.push_back(ComplexMatrix::Zero(d, d));
    }
    const int k = static_cast<int>(gs.size());
    const double n = static_cast<double>(d) / 2.0;
    const RealMatrix c = cayley_shift(k);
    const ComplexMatrix base = kron_identity(c, d);
    ComplexMatrix lambda = base;
    for (int j = 0; j < k; ++j) {
        // Reversed list shifted by one: block j holds G_{(k - j) mod k}.
        const int src = (k - j) % k;
        lambda.block(j * d, j * d, d, d) -= gs[static_cast<std::size_t>(src)];
    }
    const linalg::LogComplex num = linalg::log_pfaffian(lambda);
    const linalg::LogComplex den = linalg::log_pfaffian(base);
    if (den.is_zero()) {
        throw NumericError("trace_product: singular reference Pfaffian");
    }
    linalg::LogComplex out;
    if (num.is_zero()) {
        out.phase = 0.0;
        return out;
    }
    out.phase = num.phase / den.phase;
    out.log_abs = num.log_abs - den.log_abs -
                  n * (k - 1) * std::log(2.0) + (odd ? n * std::log(2.0) : 0.0);
    return out;
}

std::complex<double> trace_product(std::span<const GaussianOp> ops) {
    std::vector<ComplexMatrix> kernels;
    cd pref = 1.0;
    for (const auto &o : ops) {
        kernels.push_back(o.kernel);
        pref *= o.prefactor;
    }
    return pref * trace_product(kernels).value();
}

GaussianMoments gaussian_pt_moments(const CovarianceMatrix &gprime,
                                    ModeSplit split) {
    const auto pair = restrict_and_gplus(gprime, split);
    const ComplexMatrix plus = pair.gplus;
    const ComplexMatrix minus = -plus.conjugate();
    const cd coef[2] = {cd(0.5, -0.5), cd(0.5, 0.5)};
    GaussianMoments out;
    double *dst[3] = {&out.p2, &out.p3, &out.p4};
    for (int q = 2; q <= 4; ++q) {
        ScaledSum sum;
        std::vector<ComplexMatrix> ks(static_cast<std::size_t>(q));
        for (int mask = 0; mask < (1 << q); ++mask) {
            cd c = 1.0;
            for (int i = 0; i < q; ++i) {
                const int s = (mask >> i) & 1;
                ks[static_cast<std::size_t>(i)] = s == 0 ? plus : minus;
                c *= coef[s];
            }
            sum.add(c, trace_product(ks));
        }
        const cd v = sum.value();
        *dst[q - 2] = v.real();
        out.max_relative_imag = std::max(out.max_relative_imag, relative_imag(v));
    }
    return out;
}

GaussianMoments gaussian_pt_moments_reduced(const CovarianceMatrix &gprime,
                                            ModeSplit split) {
    const auto pair = restrict_and_gplus(gprime, split);
    const ComplexMatrix &p = pair.gplus;
    const ComplexMatrix m = -p.conjugate();
    auto tr = [](std::initializer_list<ComplexMatrix> ks) {
        const std::vector<ComplexMatrix> v(ks);
        return trace_product(v);
    };
    GaussianMoments out;
    ScaledSum s2;
    s2.add(1.0, tr({p, m}));
    ScaledSum s3;
    s3.add(-0.5, tr({p, p, p}));
    s3.add(1.5, tr({p, p, m}));
    ScaledSum s4;
    s4.add(-0.5, tr({p, p, p, p}));
    s4.add(1.0, tr({p, p, m, m}));
    s4.add(0.5, tr({p, m, p, m}));
    const cd v[3] = {s2.value(), s3.value(), s4.value()};
    out.p2 = v[0].real();
    out.p3 = v[1].real();
    out.p4 = v[2].real();
    for (const cd &z : v) {
        out.max_relative_imag = std::max(out.max_relative_imag, relative_imag(z));
    }
    return out;
}

Gate4 MatchgateSpec::matrix() const {
    Gate4 g = Gate4::Zero();
    g(0, 0) = u(0, 0);
    g(0, 3) = u(0, 1);
    g(3, 0) = u(1, 0);
    g(3, 3) = u(1, 1);
    g(1, 1) = v(0, 0);
    g(1, 2) = v(0, 1);
    g(2, 1) = v(1, 0);
    g(2, 2) = v(1, 1);
    return g;
}

MatchgateSpec random_matchgate(rng::Engine &eng) {
    MatchgateSpec m;
    m.u = rng::haar_unitary(2, eng);
    m.v = rng::haar_unitary(2, eng);
    m.v *= std::sqrt(m.u.determinant() / m.v.determinant());
    return m;
}

Gate4 swap_gate() {
    Gate4 g = Gate4::Zero();
    g(0, 0) = 1.0;
    g(1, 2) = 1.0;
    g(2, 1) = 1.0;
    g(3, 3) = 1.0;
    return g;
}

int brickwork_gate_count(int n_qubits) {
    const int layers = 3 * n_qubits;
    const int even = n_qubits / 2;
    const int odd = (n_qubits - 1) / 2;
    return (layers + 1) / 2 * even + layers / 2 * odd;
}

Circuit brickwork_circuit(int n_qubits, int n_swap, rng::Engine &eng) {
    if (n_qubits < 2) {
        throw ValidationError("brickwork_circuit: need at least 2 qubits");
    }
    const int total = brickwork_gate_count(n_qubits);
    if (n_swap < 0 || n_swap > total) {
        throw ValidationError("brickwork_circuit: n_swap out of range");
    }
    std::vector<int> order(static_cast<std::size_t>(total));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), eng);
    std::vector<char> is_swap(static_cast<std::size_t>(total), 0);
    for (int i = 0; i < n_swap; ++i) {
        is_swap[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
    }
    Circuit c;
    c.n_qubits = n_qubits;
    int idx = 0;
    for (int layer = 0; layer < 3 * n_qubits; ++layer) {
        for (int q = layer % 2; q + 1 < n_qubits; q += 2) {
            Gate g;
            g.site = q;
            g.is_swap = is_swap[static_cast<std::size_t>(idx++)] != 0;
            g.matrix = g.is_swap ? swap_gate() : random_matchgate(eng).matrix();
            c.gates.push_back(g);
        }
    }
    return c;
}

dense::Vector apply_circuit(const Circuit &c, dense::Vector state) {
    check_dense_modes(c.n_qubits);
    if (static_cast<std::size_t>(state.size()) != (std::size_t{1} << c.n_qubits)) {
        throw ValidationError("apply_circuit: state size mismatch");
    }
    for (const auto &g : c.gates) {
        apply_two_qubit(state, c.n_qubits, g.site, g.matrix);
    }
    return state;
}

RealMatrix gate_rotation(const Gate4 &g) {
    dense::Matrix c[4];
    for (int j = 0; j < 4; ++j) {
        c[j] = dense::Matrix::Zero(4, 4);
        for (std::uint64_t x = 0; x < 4; ++x) {
            const auto [ph, y] = majorana_on_basis(x, j, 2);
            c[j](static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = ph;
        }
    }
    RealMatrix r(4, 4);
    for (int i = 0; i < 4; ++i) {
        const dense::Matrix hi = g.adjoint() * c[i] * g;
        for (int j = 0; j < 4; ++j) {
            const cd v = (c[j] * hi).trace() / 4.0;
            if (std::abs(v.imag()) > 1e-10) {
                throw ValidationError("gate_rotation: gate is not a matchgate");
            }
            r(i, j) = v.real();
        }
    }
    return r;
}

RealMatrix circuit_rotation(const Circuit &c) {
    const int d = 2 * c.n_qubits;
    RealMatrix r = RealMatrix::Identity(d, d);
    for (const auto &g : c.gates) {
        if (g.is_swap) {
            throw ValidationError("circuit_rotation: SWAP is not Gaussian");
        }
        RealMatrix full = RealMatrix::Identity(d, d);
        full.block(2 * g.site, 2 * g.site, 4, 4) = gate_rotation(g.matrix);
        r = full * r;
    }
    return r;
}

dense::Vector apply_majorana(const dense::Vector &psi, int j, int n_modes) {
    check_dense_modes(n_modes);
    if (j < 0 || j >= 2 * n_modes) {
        throw ValidationError("apply_majorana: index out of range");
    }
    dense::Vector out = dense::Vector::Zero(psi.size());
    for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(psi.size()); ++x) {
        const auto [ph, y] = majorana_on_basis(x, j, n_modes);
        out[static_cast<Eigen::Index>(y)] += ph * psi[static_cast<Eigen::Index>(x)];
    }
    return out;
}

CovarianceMatrix dense_covariance(const dense::Vector &psi, int n_modes) {
    const int d = 2 * n_modes;
    std::vector<dense::Vector> cv;
    cv.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        cv.push_back(apply_majorana(psi, j, n_modes));
    }
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (i != j) {
                g(i, j) = cv[static_cast<std::size_t>(i)].dot(
                    cv[static_cast<std::size_t>(j)]);
            }
        }
    }
    g = 0.5 * (g - g.transpose()).eval();
    return CovarianceMatrix(std::move(g));
}

dense::Vector dense_gaussian_state(const CovarianceMatrix &g) {
    const int n = g.modes();
    if (n > 12) {
        throw CapabilityError("dense_gaussian_state: at most 12 modes");
    }
    if (!g.is_pure()) {
        throw ValidationError("dense_gaussian_state: covariance is not pure");
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    const int d = 2 * n;
    dense::Matrix h = dense::Matrix::Zero(dim, dim);
    const ComplexMatrix &gm = g.matrix();
    for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(dim); ++x) {
        for (int k = 0; k < d; ++k) {
            const auto [p1, y] = majorana_on_basis(x, k, n);
            for (int j = 0; j < d; ++j) {
                if (j == k || gm(j, k) == 0.0) {
                    continue;
                }
                const auto [p2, z] = majorana_on_basis(y, j, n);
                h(static_cast<Eigen::Index>(z), static_cast<Eigen::Index>(x)) +=
                    gm(j, k) * p1 * p2;
            }
        }
    }
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<dense::Matrix> es(h);
    if (es.info() != Eigen::Success) {
        throw NumericError("dense_gaussian_state: eigensolver failed");
    }
    if (es.eigenvalues()[1] - es.eigenvalues()[0] < 1.0) {
        throw NumericError("dense_gaussian_state: ground state not isolated");
    }
    return es.eigenvectors().col(0);
}

dense::Vector dense_circuit_state(const Circuit &c) {
    check_dense_modes(c.n_qubits);
    dense::Vector psi = dense::Vector::Zero(
        static_cast<Eigen::Index>(std::size_t{1} << c.n_qubits));
    psi[0] = 1.0;
    return apply_circuit(c, std::move(psi));
}

dense::DensityMatrix dense_fermion_oracle(const dense::Vector &psi,
                                          const Tripartition &t) {
    check_dense_modes(t.n());
    return dense::reduce_to_ab(dense::PureState::normalized(psi, t));
}

stats::SampleRecord gaussian_sample(const Tripartition &t, rng::Engine &eng) {
    const CovarianceMatrix g =
        rotate(vacuum_covariance(t.n()), sample_special_orthogonal(2 * t.n(), eng));
    const auto pair = restrict_and_gplus(g, {t.n_a(), t.n_b()});
    const GaussianMoments m = gaussian_pt_moments(pair.gprime, {t.n_a(), t.n_b()});
    if (m.max_relative_imag > 1e-8) {
        throw NumericError("gaussian_sample: moments have imaginary parts");
    }
    return stats::SampleRecord::from_moments(
        m.p2, m.p3, m.p4, std::numeric_limits<double>::quiet_NaN());
}

stats::EnsembleStats gaussian_ensemble(const Tripartition &t, int k,
                                       std::uint64_t seed) {
    const auto samples = stats::collect(k, [&](std::uint64_t i) {
        rng::Engine eng = rng::stream(seed, i);
        return gaussian_sample(t, eng);
    });
    return stats::summarize(samples, seed);
}

stats::SampleRecord doped_sample(const Tripartition &t, int n_swap,
                                 rng::Engine &eng) {
    check_dense_modes(t.n());
    const Circuit c = brickwork_circuit(t.n(), n_swap, eng);
    const dense::PureState ps =
        dense::PureState::normalized(dense_circuit_state(c), t);
    return stats::SampleRecord::from(
        dense::quantities(dense::negativity_spectrum(ps)));
}

stats::EnsembleStats doped_circuit_ensemble(const Tripartition &t, int n_swap,
                                            int k, std::uint64_t seed) {
    const auto samples = stats::collect(k, [&](std::uint64_t i) {
        rng::Engine eng = rng::stream(seed, i);
        return doped_sample(t, n_swap, eng);
    });
    return stats::summarize(samples, seed);
}

} // namespace ptm::fermion
