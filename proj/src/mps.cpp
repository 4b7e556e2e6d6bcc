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

#include "ptm/mps.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>

namespace ptm::mps {

namespace {

std::atomic<std::uint64_t> g_updates{0};

Matrix left_step(const MpsState &m, int site, const Matrix &x) {
    ++g_updates;
    const Matrix &m0 = m.site(site, 0);
    const Matrix &m1 = m.site(site, 1);
    return m0.transpose() * x * m0.conjugate() +
           m1.transpose() * x * m1.conjugate();
}

Matrix right_step(const MpsState &m, int site, const Matrix &y) {
    ++g_updates;
    const Matrix &m0 = m.site(site, 0);
    const Matrix &m1 = m.site(site, 1);
    return m0 * y * m0.adjoint() + m1 * y * m1.adjoint();
}

// F with F F^H = X for Hermitian PSD X, dropping negligible directions.
Matrix psd_factor(const Matrix &x) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (x + x.adjoint()));
    if (es.info() != Eigen::Success) {
        throw NumericError("mps: environment eigensolver failed");
    }
    const Eigen::VectorXd &d = es.eigenvalues();
    const double top = std::max(d.maxCoeff(), 0.0);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (d[i] > 1e-14 * top) {
            keep.push_back(i);
        }
    }
    Matrix f(x.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) {
        f.col(static_cast<Eigen::Index>(j)) =
            es.eigenvectors().col(keep[j]) * std::sqrt(d[keep[j]]);
    }
    return f;
}

} // namespace

MpsState::MpsState(std::vector<std::array<Matrix, 2>> sites, Vector vl,
                   Vector vr)
    : sites_(std::move(sites)), vl_(std::move(vl)), vr_(std::move(vr)) {
    const Eigen::Index chi = vl_.size();
    if (sites_.empty() || chi < 1 || vr_.size() != chi) {
        throw ValidationError("MpsState: inconsistent boundary vectors");
    }
    for (const auto &s : sites_) {
        for (const auto &mat : s) {
            if (mat.rows() != chi || mat.cols() != chi) {
                throw ValidationError("MpsState: site matrix is not chi x chi");
            }
        }
    }
}

double MpsState::norm_squared() const {
    const Matrix x = left_environment(*this, size());
    return (vr_.transpose() * x * vr_.conjugate())(0, 0).real();
}

void MpsState::normalize() {
    const double n2 = norm_squared();
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
        throw SingularInputError("MpsState::normalize: vanishing norm");
    }
    vl_ /= std::sqrt(n2);
}

std::complex<double> MpsState::amplitude(std::uint64_t bits) const {
    const int n = size();
    Eigen::RowVectorXcd row = vl_.transpose();
    for (int i = 0; i < n; ++i) {
        const int s = static_cast<int>((bits >> (n - 1 - i)) & 1U);
        row = row * sites_[i][s];
    }
    return (row * vr_)(0, 0);
}

Vector MpsState::to_dense() const {
    const int n = size();
    if (n > dense::kMaxStateQubits) {
        throw CapabilityError("MpsState::to_dense: too many sites");
    }
    Vector out(static_cast<Eigen::Index>(Tripartition::dim(n)));
    std::function<void(int, std::uint64_t, const Eigen::RowVectorXcd &)> rec =
        [&](int i, std::uint64_t prefix, const Eigen::RowVectorXcd &row) {
            if (i == n) {
                out[static_cast<Eigen::Index>(prefix)] = (row * vr_)(0, 0);
                return;
            }
            for (int s = 0; s < 2; ++s) {
                rec(i + 1, (prefix << 1) | static_cast<std::uint64_t>(s),
                    row * sites_[i][s]);
            }
        };
    rec(0, 0, vl_.transpose());
    return out;
}

MpsState sample_rmps(int n, int chi, rng::Engine &eng) {
    if (n < 1 || chi < 1) {
        throw ValidationError("sample_rmps: n and chi must be >= 1");
    }
    std::vector<std::array<Matrix, 2>> sites(static_cast<std::size_t>(n));
    for (auto &s : sites) {
        const Matrix u = rng::haar_unitary(2 * chi, eng);
        s[0] = u.block(0, 0, chi, chi);
        s[1] = u.block(0, chi, chi, chi);
    }
    Vector vl = rng::complex_normal_vector(chi, eng);
    Vector vr = rng::complex_normal_vector(chi, eng);
    MpsState st(std::move(sites), std::move(vl), std::move(vr));
    st.normalize();
    return st;
}

MpsLayout MpsLayout::centered(const Tripartition &t) {
    MpsLayout l;
    l.n_a = t.n_a();
    l.n_b = t.n_b();
    l.n_c_left = (t.n_c() + 1) / 2;
    l.n_c_right = t.n_c() / 2;
    return l;
}

Matrix left_environment(const MpsState &m, int sites) {
    Matrix x = m.vl() * m.vl().adjoint();
    for (int i = 0; i < sites; ++i) {
        x = left_step(m, i, x);
    }
    return x;
}

Matrix right_environment(const MpsState &m, int first) {
    Matrix y = m.vr() * m.vr().adjoint();
    for (int i = m.size() - 1; i >= first; --i) {
        y = right_step(m, i, y);
    }
    return y;
}

std::uint64_t environment_updates() { return g_updates.load(); }

dense::DensityMatrix reduced_density_matrix(const MpsState &m,
                                            const MpsLayout &layout) {
    if (layout.n() != m.size() || layout.n_a < 0 || layout.n_b < 0 ||
        layout.n_c_left < 0 || layout.n_c_right < 0) {
        throw ValidationError("reduced_density_matrix: layout does not match");
    }
    const int n_ab = layout.n_a + layout.n_b;
    if (n_ab < 1) {
        throw ValidationError("reduced_density_matrix: empty AB block");
    }
    if (n_ab > dense::kMaxDensityQubits) {
        throw CapabilityError("reduced_density_matrix: N_AB exceeds dense limit");
    }
    const int first = layout.n_c_left;
    const Matrix fa = psd_factor(left_environment(m, first));
    const Matrix fb = psd_factor(right_environment(m, first + n_ab));
    const Eigen::Index rl = fa.cols();
    const Eigen::Index rr = fb.cols();
    const auto lab = static_cast<Eigen::Index>(Tripartition::dim(n_ab));
    Matrix w(lab, rl * rr);
    std::function<void(int, Eigen::Index, const Matrix &)> rec =
        [&](int depth, Eigen::Index prefix, const Matrix &p) {
            if (depth == n_ab) {
                const Matrix g = p * fb;
                w.row(prefix) = Eigen::Map<const Eigen::RowVectorXcd>(
                    g.data(), rl * rr);
                return;
            }
            for (int s = 0; s < 2; ++s) {
                rec(depth + 1, (prefix << 1) | s, p * m.site(first + depth, s));
            }
        };
    rec(0, 0, fa.transpose());
    Matrix rho = w * w.adjoint();
    rho /= rho.trace().real();
    return {rho, layout.n_a, layout.n_b};
}

double renyi2_entropy(const MpsState &m, int cut) {
    if (cut < 0 || cut > m.size()) {
        throw ValidationError("renyi2_entropy: cut out of range");
    }
    const Matrix x = left_environment(m, cut).conjugate();
    const Matrix y = right_environment(m, cut);
    const Matrix yx = y * x;
    const double tr = yx.trace().real();
    const double p2 = (yx * yx).trace().real();
    return -std::log2(p2 / (tr * tr));
}

std::array<double, 3> pt_moments_gemm(const dense::DensityMatrix &rho) {
    const Matrix x = dense::partial_transpose(rho);
    // x is Hermitian, so x² = x x† and only one triangle is needed.
    Matrix x2 = Matrix::Zero(x.rows(), x.cols());
    x2.selfadjointView<Eigen::Lower>().rankUpdate(x);
    x2.triangularView<Eigen::StrictlyUpper>() = x2.adjoint();
    const double p2 = x2.trace().real();
    const double p3 = x2.cwiseProduct(x.transpose()).sum().real();
    const double p4 = x2.squaredNorm();
    return {p2, p3, p4};
}

stats::SampleRecord sample_record(const MpsState &m, const MpsLayout &layout,
                                  bool with_negativity) {
    const Tripartition t = layout.tripartition();
    if (t.n_c() == 0) {
        const dense::PureState ps = dense::PureState::normalized(m.to_dense(), t);
        return stats::SampleRecord::from(
            dense::quantities(dense::negativity_spectrum(ps)));
    }
    const dense::DensityMatrix rho = reduced_density_matrix(m, layout);
    if (with_negativity) {
        return stats::SampleRecord::from(
            dense::quantities(dense::negativity_spectrum(rho)));
    }
    const auto p = pt_moments_gemm(rho);
    return stats::SampleRecord::from_moments(
        p[0], p[1], p[2], std::numeric_limits<double>::quiet_NaN());
}

std::vector<GridRow> mps_phase_diagram(int n_ab, int chi,
                                       const std::vector<std::pair<int, int>> &grid,
                                       int k, std::uint64_t seed,
                                       bool with_negativity) {
    std::vector<GridRow> rows;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const auto [n_a, n_c] = grid[g];
        const Tripartition t(n_a, n_ab - n_a, n_c);
        const MpsLayout layout = MpsLayout::centered(t);
        const auto samples = stats::collect(k, [&](std::uint64_t i) {
            rng::Engine eng = rng::stream(seed, i);
            const MpsState st = sample_rmps(t.n(), chi, eng);
            return sample_record(st, layout, with_negativity);
        });
        rows.push_back({t, stats::summarize(samples, seed)});
    }
    return rows;
}

} // namespace ptm::mps
