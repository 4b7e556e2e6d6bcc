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

#include "ptm/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ptm::dense {

namespace {

void check_density_size(int n_ab) {
    if (n_ab > kMaxDensityQubits) {
        throw CapabilityError("dense density matrix on " +
                              std::to_string(n_ab) +
                              " qubits exceeds the limit of " +
                              std::to_string(kMaxDensityQubits));
    }
}

void check_keep(std::span<const int> keep, int n_total, int n_a) {
    std::vector<char> seen(n_total, 0);
    for (int q : keep) {
        if (q < 0 || q >= n_total || seen[q]) {
            throw ValidationError("partial_trace: invalid kept qubit list");
        }
        seen[q] = 1;
    }
    if (n_a < 0 || n_a > static_cast<int>(keep.size()) || keep.empty()) {
        throw ValidationError("partial_trace: invalid split of kept qubits");
    }
}

// Maps a full index to (kept index, traced index) for big-endian qubits.
struct IndexSplit {
    std::vector<int> kept;
    std::vector<int> traced;
    int n;

    IndexSplit(std::span<const int> keep, int n_total) : n(n_total) {
        kept.assign(keep.begin(), keep.end());
        std::vector<char> in(n_total, 0);
        for (int q : keep) {
            in[q] = 1;
        }
        for (int q = 0; q < n_total; ++q) {
            if (!in[q]) {
                traced.push_back(q);
            }
        }
    }

    static std::size_t gather(std::size_t full, const std::vector<int> &qs,
                              int n) {
        std::size_t out = 0;
        for (int q : qs) {
            out = (out << 1) | ((full >> (n - 1 - q)) & 1U);
        }
        return out;
    }

    static std::size_t scatter(std::size_t part, const std::vector<int> &qs,
                               int n) {
        std::size_t out = 0;
        const int k = static_cast<int>(qs.size());
        for (int i = 0; i < k; ++i) {
            out |= ((part >> (k - 1 - i)) & 1U) << (n - 1 - qs[i]);
        }
        return out;
    }

    [[nodiscard]] bool is_prefix() const {
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (kept[i] != static_cast<int>(i)) {
                return false;
            }
        }
        return true;
    }
};

} // namespace

PureState::PureState(Vector amplitudes, Tripartition layout)
    : amps_(std::move(amplitudes)), layout_(layout) {
    if (layout_.n() > kMaxStateQubits) {
        throw CapabilityError("PureState: " + std::to_string(layout_.n()) +
                              " qubits exceed the dense limit");
    }
    if (static_cast<std::size_t>(amps_.size()) != Tripartition::dim(layout_.n())) {
        throw ValidationError("PureState: amplitude count does not match layout");
    }
    if (std::abs(amps_.norm() - 1.0) > 1e-12) {
        throw ValidationError("PureState: state is not normalized");
    }
}

PureState PureState::normalized(Vector amplitudes, Tripartition layout) {
    const double nrm = amplitudes.norm();
    if (nrm == 0.0 || !std::isfinite(nrm)) {
        throw SingularInputError("PureState::normalized: zero or non-finite norm");
    }
    amplitudes /= nrm;
    return PureState(std::move(amplitudes), layout);
}

DensityMatrix::DensityMatrix(const Matrix &m, int n_a, int n_b)
    : n_a_(n_a), n_b_(n_b) {
    if (n_a < 0 || n_b < 0 || n_a + n_b < 1) {
        throw ValidationError("DensityMatrix: invalid split");
    }
    check_density_size(n_a + n_b);
    const auto d = static_cast<Eigen::Index>(Tripartition::dim(n_a + n_b));
    if (m.rows() != d || m.cols() != d) {
        throw ValidationError("DensityMatrix: shape does not match split");
    }
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kMatrixTolerance) {
        throw ValidationError("DensityMatrix: matrix is not Hermitian");
    }
    if (std::abs(m.trace() - 1.0) > kMatrixTolerance) {
        throw ValidationError("DensityMatrix: trace differs from 1");
    }
    m_ = 0.5 * (m + m.adjoint());
}

bool DensityMatrix::is_positive(double tol) const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericError("DensityMatrix::is_positive: eigensolver failed");
    }
    return es.eigenvalues().minCoeff() >= -tol;
}

DensityMatrix partial_trace(const PureState &s, std::span<const int> keep,
                            int n_a) {
    const int n = s.layout().n();
    check_keep(keep, n, n_a);
    const int n_keep = static_cast<int>(keep.size());
    check_density_size(n_keep);
    const IndexSplit split(keep, n);
    const auto lk = static_cast<Eigen::Index>(Tripartition::dim(n_keep));
    const auto lt = static_cast<Eigen::Index>(Tripartition::dim(n - n_keep));
    const Vector &amps = s.amplitudes();
    Matrix psi(lt, lk);
    if (split.is_prefix()) {
        psi = Eigen::Map<const Matrix>(amps.data(), lt, lk);
    } else {
        for (Eigen::Index k = 0; k < lk; ++k) {
            const std::size_t base = IndexSplit::scatter(k, split.kept, n);
            for (Eigen::Index t = 0; t < lt; ++t) {
                psi(t, k) = amps[static_cast<Eigen::Index>(
                    base | IndexSplit::scatter(t, split.traced, n))];
            }
        }
    }
    Matrix rho = (psi.adjoint() * psi).transpose();
    rho /= rho.trace().real();
    return {rho, n_a, n_keep - n_a};
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep,
                            int n_a) {
    const int n = rho.n_ab();
    check_keep(keep, n, n_a);
    const int n_keep = static_cast<int>(keep.size());
    const IndexSplit split(keep, n);
    const auto lk = static_cast<Eigen::Index>(Tripartition::dim(n_keep));
    const auto lt = static_cast<Eigen::Index>(Tripartition::dim(n - n_keep));
    std::vector<std::size_t> kbase(lk);
    std::vector<std::size_t> tbase(lt);
    for (Eigen::Index k = 0; k < lk; ++k) {
        kbase[k] = IndexSplit::scatter(k, split.kept, n);
    }
    for (Eigen::Index t = 0; t < lt; ++t) {
        tbase[t] = IndexSplit::scatter(t, split.traced, n);
    }
    Matrix out = Matrix::Zero(lk, lk);
    const Matrix &m = rho.matrix();
    for (Eigen::Index j = 0; j < lk; ++j) {
        for (Eigen::Index i = 0; i < lk; ++i) {
            std::complex<double> acc = 0.0;
            for (Eigen::Index t = 0; t < lt; ++t) {
                acc += m(static_cast<Eigen::Index>(kbase[i] | tbase[t]),
                         static_cast<Eigen::Index>(kbase[j] | tbase[t]));
            }
            out(i, j) = acc;
        }
    }
    return {out, n_a, n_keep - n_a};
}

DensityMatrix reduce_to_ab(const PureState &s) {
    std::vector<int> keep(s.layout().n_ab());
    std::iota(keep.begin(), keep.end(), 0);
    return partial_trace(s, keep, s.layout().n_a());
}

Matrix partial_transpose(const Matrix &m, int n_a, int n_b) {
    const auto la = static_cast<Eigen::Index>(Tripartition::dim(n_a));
    const auto lb = static_cast<Eigen::Index>(Tripartition::dim(n_b));
    if (m.rows() != la * lb || m.cols() != la * lb) {
        throw ValidationError("partial_transpose: shape does not match split");
    }
    Matrix out(m.rows(), m.cols());
    for (Eigen::Index a = 0; a < la; ++a) {
        for (Eigen::Index ap = 0; ap < la; ++ap) {
            out.block(a * lb, ap * lb, lb, lb) =
                m.block(a * lb, ap * lb, lb, lb).transpose();
        }
    }
    return out;
}

Matrix partial_transpose(const DensityMatrix &rho) {
    return partial_transpose(rho.matrix(), rho.n_a(), rho.n_b());
}

NegativitySpectrum negativity_spectrum(const DensityMatrix &rho) {
    const Matrix pt = partial_transpose(rho);
    const Matrix herm = 0.5 * (pt + pt.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericError("negativity_spectrum: eigensolver failed");
    }
    NegativitySpectrum out;
    out.lambdas.assign(es.eigenvalues().data(),
                       es.eigenvalues().data() + es.eigenvalues().size());
    return out;
}

NegativitySpectrum negativity_spectrum(const PureState &s) {
    const Tripartition &t = s.layout();
    if (t.n_c() > 0) {
        return negativity_spectrum(reduce_to_ab(s));
    }
    const auto la = static_cast<Eigen::Index>(Tripartition::dim(t.n_a()));
    const auto lb = static_cast<Eigen::Index>(Tripartition::dim(t.n_b()));
    const Eigen::Map<const Matrix> psi(s.amplitudes().data(), lb, la);
    Eigen::BDCSVD<Matrix> svd(psi);
    const Eigen::VectorXd sv = svd.singularValues();
    std::vector<double> mu;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        mu.push_back(sv[i] * sv[i]);
    }
    NegativitySpectrum out;
    out.lambdas.reserve(static_cast<std::size_t>(la * lb));
    for (std::size_t i = 0; i < mu.size(); ++i) {
        out.lambdas.push_back(mu[i]);
        for (std::size_t j = i + 1; j < mu.size(); ++j) {
            const double x = std::sqrt(mu[i] * mu[j]);
            out.lambdas.push_back(x);
            out.lambdas.push_back(-x);
        }
    }
    out.lambdas.resize(static_cast<std::size_t>(la * lb), 0.0);
    std::sort(out.lambdas.begin(), out.lambdas.end());
    return out;
}

MomentSet pt_moments(const NegativitySpectrum &spec, int nmax) {
    if (nmax < 1) {
        throw ValidationError("pt_moments: nmax must be >= 1");
    }
    MomentSet m;
    std::vector<double> acc(static_cast<std::size_t>(nmax) + 1, 0.0);
    for (double l : spec.lambdas) {
        double p = 1.0;
        for (int n = 1; n <= nmax; ++n) {
            p *= l;
            acc[n] += p;
        }
    }
    for (int n = 1; n <= nmax; ++n) {
        m.set(n, acc[n]);
    }
    return m;
}

MomentSet pt_moments(const DensityMatrix &rho, int nmax) {
    return pt_moments(negativity_spectrum(rho), nmax);
}

double negativity(const NegativitySpectrum &spec) {
    double s = 0.0;
    for (double l : spec.lambdas) {
        s += std::abs(l);
    }
    return std::max(0.0, std::log2(s));
}

double negativity(const DensityMatrix &rho) {
    return negativity(negativity_spectrum(rho));
}

double r2(const MomentSet &m) { return ratio_r(m, 2); }

double r_n(const MomentSet &m, int n) { return ratio_r(m, n); }

double e3(const MomentSet &m) {
    const double p2 = m.value(2);
    const double p3 = m.value(3);
    if (p3 <= 0.0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return 0.5 * std::log2(p2 * p2 / p3);
}

RescaledSpectrum rescaled_spectrum(const NegativitySpectrum &spec, double p3,
                                   int bins, double lo, double hi) {
    if (bins < 1 || !(hi > lo)) {
        throw ValidationError("rescaled_spectrum: invalid histogram range");
    }
    RescaledSpectrum out;
    out.scaled = p3 > 0.0;
    const double scale = out.scaled ? 1.0 / std::sqrt(p3) : 1.0;
    out.histogram.lo = lo;
    out.histogram.hi = hi;
    out.histogram.density.assign(static_cast<std::size_t>(bins), 0.0);
    const double width = (hi - lo) / bins;
    for (double l : spec.lambdas) {
        const double x = l * scale;
        out.epsilons.push_back(x * x);
        const double pos = (x - lo) / width;
        if (pos < 0.0 || pos > bins) {
            ++out.histogram.outside;
            continue;
        }
        const auto b = std::min(static_cast<std::size_t>(pos),
                                static_cast<std::size_t>(bins - 1));
        out.histogram.density[b] += 1.0;
    }
    const double total = static_cast<double>(spec.lambdas.size()) * width;
    if (total > 0.0) {
        for (double &d : out.histogram.density) {
            d /= total;
        }
    }
    return out;
}

DetectionReport detect(const NegativitySpectrum &spec) {
    const MomentSet m = pt_moments(spec, 4);
    const double p1 = m.value(1);
    const double p2 = m.value(2);
    const double p3 = m.value(3);
    const double p4 = m.value(4);
    DetectionReport rep;
    const double ratio = r2(m);
    rep.alpha2 = p4 * p1 * (1.0 - ratio);
    rep.r2_violated = ratio > 1.0 + kDetectionTolerance;
    rep.p3_ppt_violated = p3 < p2 * p2 * (1.0 - kDetectionTolerance);
    rep.e3 = e3(m);
    rep.negativity = negativity(spec);
    return rep;
}

DetectionReport detect(const DensityMatrix &rho) {
    return detect(negativity_spectrum(rho));
}

DensityMatrix depolarize(const DensityMatrix &rho, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw ValidationError("depolarize: epsilon must lie in [0,1]");
    }
    const Eigen::Index d = rho.dim();
    Matrix m = (1.0 - epsilon) * rho.matrix();
    m.diagonal().array() += epsilon / static_cast<double>(d);
    return {m, rho.n_a(), rho.n_b()};
}

StateQuantities quantities(const NegativitySpectrum &spec) {
    const MomentSet m = pt_moments(spec, 4);
    StateQuantities q;
    q.p2 = m.value(2);
    q.p3 = m.value(3);
    q.p4 = m.value(4);
    q.r2 = q.p2 * q.p3 / q.p4;
    q.negativity = negativity(spec);
    q.e3 = e3(m);
    return q;
}

double purity(const DensityMatrix &rho) {
    return rho.matrix().cwiseAbs2().sum();
}

} // namespace ptm::dense
