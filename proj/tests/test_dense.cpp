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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

#include "ptm/dense.hpp"
#include "ptm/ensembles.hpp"
#include "ptm/errors.hpp"
#include "ptm/haar_analytics.hpp"
#include "ptm/random_matrices.hpp"

using Catch::Approx;
using ptm::Tripartition;
namespace dense = ptm::dense;

namespace {

dense::PureState bell() {
    dense::Vector v = dense::Vector::Zero(4);
    v[0] = v[3] = 1.0 / std::sqrt(2.0);
    return {v, Tripartition(1, 1, 0)};
}

dense::DensityMatrix random_mixed(int n_a, int n_b, int n_c, std::uint64_t seed) {
    auto eng = ptm::rng::stream(seed, 0);
    return dense::reduce_to_ab(
        ptm::ensembles::sample_haar_state(Tripartition(n_a, n_b, n_c), eng));
}

} // namespace

TEST_CASE("Partial traces of small states") {
    const auto b = bell();
    const int keep0[] = {0};
    const auto r = dense::partial_trace(b, keep0, 1);
    CHECK(r.matrix().isApprox(dense::Matrix::Identity(2, 2) / 2.0));

    dense::Vector prod = dense::Vector::Zero(4);
    prod[0] = 0.6;
    prod[1] = std::complex<double>(0.0, 0.8);
    const int keep1[] = {1};
    const auto rp = dense::partial_trace(dense::PureState(prod, {1, 1, 0}), keep1, 1);
    CHECK(dense::purity(rp) == Approx(1.0));

    dense::Vector ghz = dense::Vector::Zero(8);
    ghz[0] = ghz[7] = 1.0 / std::sqrt(2.0);
    const auto rg = dense::reduce_to_ab(dense::PureState(ghz, {1, 1, 1}));
    dense::Matrix expect = dense::Matrix::Zero(4, 4);
    expect(0, 0) = expect(3, 3) = 0.5;
    CHECK(rg.matrix().isApprox(expect));

    const auto rho = random_mixed(2, 1, 2, 3);
    const int keep_b[] = {2};
    const auto via_state = dense::partial_trace(rho, keep_b, 0);
    CHECK(via_state.dim() == 2);
    CHECK(via_state.matrix().trace().real() == Approx(1.0));
}

TEST_CASE("Validation of states") {
    CHECK_THROWS_AS(dense::PureState(dense::Vector::Ones(4), {1, 1, 0}),
                    ptm::ValidationError);
    CHECK_THROWS_AS(dense::PureState(dense::Vector::Ones(3), {1, 1, 0}),
                    ptm::ValidationError);
    CHECK_THROWS_AS(dense::DensityMatrix(dense::Matrix::Identity(4, 4), 1, 1),
                    ptm::ValidationError);
}

TEST_CASE("Partial transpose") {
    const auto rho = random_mixed(1, 2, 0, 4);
    const auto sa = random_mixed(1, 0, 1, 5).matrix();
    const auto sb = random_mixed(2, 0, 1, 6).matrix();
    dense::Matrix prod(8, 8);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            prod.block(4 * i, 4 * j, 4, 4) = sa(i, j) * sb;
        }
    }
    dense::Matrix expect(8, 8);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            expect.block(4 * i, 4 * j, 4, 4) = sa(i, j) * sb.transpose();
        }
    }
    CHECK(dense::partial_transpose(prod, 1, 2).isApprox(expect));
    const dense::DensityMatrix dp(prod, 1, 2);
    const auto spec = dense::negativity_spectrum(dp);
    Eigen::SelfAdjointEigenSolver<dense::Matrix> es(prod);
    for (int i = 0; i < 8; ++i) {
        CHECK(spec.lambdas[i] == Approx(es.eigenvalues()[i]).margin(1e-12));
    }
    const dense::Matrix mixed = dense::Matrix::Identity(8, 8) / 8.0;
    CHECK(dense::partial_transpose(mixed, 2, 1).isApprox(mixed));
    const dense::Matrix twice = dense::partial_transpose(
        dense::partial_transpose(rho.matrix(), 1, 2), 1, 2);
    CHECK(twice.isApprox(rho.matrix()));
}

TEST_CASE("Bell state spectrum, moments, negativity and detection") {
    const auto b = bell();
    const auto rho = dense::reduce_to_ab(b);
    const auto spec = dense::negativity_spectrum(rho);
    const std::vector<double> expect = {-0.5, 0.5, 0.5, 0.5};
    for (int i = 0; i < 4; ++i) {
        CHECK(spec.lambdas[i] == Approx(expect[i]));
    }
    const auto fast = dense::negativity_spectrum(b);
    for (int i = 0; i < 4; ++i) {
        CHECK(fast.lambdas[i] == Approx(expect[i]));
    }
    const auto m = dense::pt_moments(spec, 4);
    CHECK(m.value(1) == Approx(1.0));
    CHECK(m.value(2) == Approx(1.0));
    CHECK(m.value(3) == Approx(0.25));
    CHECK(m.value(4) == Approx(0.25));
    CHECK(dense::negativity(spec) == Approx(1.0));
    CHECK(dense::r2(m) == Approx(1.0));
    const auto rep = dense::detect(spec);
    CHECK(rep.p3_ppt_violated);
    CHECK_FALSE(rep.r2_violated);
    const auto rs = dense::rescaled_spectrum(spec, m.value(3));
    REQUIRE(rs.scaled);
    for (double e : rs.epsilons) {
        CHECK(e == Approx(1.0));
    }
}

TEST_CASE("Product and separable states") {
    dense::Vector v = dense::Vector::Zero(8);
    v[0] = 1.0;
    const dense::PureState prod(v, {1, 1, 1});
    const auto m = dense::pt_moments(dense::negativity_spectrum(prod), 4);
    for (int n = 1; n <= 4; ++n) {
        CHECK(m.value(n) == Approx(1.0));
    }
    dense::Matrix diag = dense::Matrix::Zero(4, 4);
    diag(0, 0) = 0.1;
    diag(1, 1) = 0.2;
    diag(2, 2) = 0.3;
    diag(3, 3) = 0.4;
    const dense::DensityMatrix sep(diag, 1, 1);
    CHECK(dense::negativity(sep) == Approx(0.0).margin(1e-14));
    const auto rep = dense::detect(sep);
    CHECK(rep.alpha2 >= 0.0);
    CHECK_FALSE(rep.r2_violated);
    CHECK_FALSE(rep.p3_ppt_violated);
}

TEST_CASE("Pure-state fast path equals the density-matrix path") {
    for (std::uint64_t s = 0; s < 5; ++s) {
        auto eng = ptm::rng::stream(77, s);
        const auto psi = ptm::ensembles::sample_haar_state({2, 3, 0}, eng);
        const auto a = dense::negativity_spectrum(psi).lambdas;
        const auto b = dense::negativity_spectrum(dense::reduce_to_ab(psi)).lambdas;
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i] == Approx(b[i]).margin(1e-12));
        }
    }
}

TEST_CASE("Moment identities on random states") {
    for (std::uint64_t s = 0; s < 40; ++s) {
        const auto rho = random_mixed(2, 2, static_cast<int>(s % 5), s);
        const auto spec = dense::negativity_spectrum(rho);
        const auto m = dense::pt_moments(spec, 5);
        CHECK(m.value(1) == Approx(1.0));
        CHECK(m.value(2) == Approx(dense::purity(rho)));
        const double p2 = m.value(2);
        const double p3 = m.value(3);
        const double p4 = m.value(4);
        CHECK(p2 * p4 >= p3 * p3 * (1 - 1e-12));
        const auto rep = dense::detect(spec);
        if (rep.r2_violated) {
            CHECK(rep.p3_ppt_violated);
        }
        const auto rs = dense::rescaled_spectrum(spec, p3);
        if (rs.scaled) {
            double s2 = 0.0;
            double s3 = 0.0;
            double s4 = 0.0;
            for (double l : spec.lambdas) {
                s2 += l * l / p3;
                s3 += l * l * l / p3;
                s4 += l * l * l * l / (p3 * p3);
            }
            double e1 = 0.0;
            double e2 = 0.0;
            for (double e : rs.epsilons) {
                e1 += e;
                e2 += e * e;
            }
            CHECK(e1 == Approx(s2));
            CHECK(e2 == Approx(s4));
            CHECK(p2 * p3 / p4 == Approx(e1 * s3 / e2).epsilon(1e-10));
            double mass = 0.0;
            const double width = (rs.histogram.hi - rs.histogram.lo) /
                                 static_cast<double>(rs.histogram.density.size());
            for (double d : rs.histogram.density) {
                mass += d * width;
            }
            CHECK(mass + static_cast<double>(rs.histogram.outside) /
                             static_cast<double>(spec.lambdas.size()) ==
                  Approx(1.0));
        }
    }
}

TEST_CASE("Depolarizing channel") {
    const auto rho = random_mixed(2, 2, 1, 9);
    CHECK(dense::depolarize(rho, 0.0).matrix().isApprox(rho.matrix()));
    const auto mixed = dense::depolarize(rho, 1.0);
    const auto mm = dense::pt_moments(mixed, 4);
    for (int n = 1; n <= 4; ++n) {
        CHECK(mm.value(n) == Approx(std::pow(16.0, 1 - n)));
    }
    const double eps = 0.37;
    const auto direct = dense::pt_moments(dense::depolarize(rho, eps), 4);
    const auto via = ptm::haar::white_noise_moments(dense::pt_moments(rho, 4), eps, 4);
    for (int n = 1; n <= 4; ++n) {
        CHECK(direct.value(n) == Approx(via.value(n)));
    }
    CHECK_THROWS_AS(dense::depolarize(rho, -0.1), ptm::ValidationError);
}

TEST_CASE("Haar states: normalization, determinism and mean purity") {
    const Tripartition t(1, 1, 1);
    auto e1 = ptm::rng::stream(3, 14);
    auto e2 = ptm::rng::stream(3, 14);
    const auto a = ptm::ensembles::sample_haar_state(t, e1);
    const auto b = ptm::ensembles::sample_haar_state(t, e2);
    CHECK(a.amplitudes() == b.amplitudes());
    CHECK(a.amplitudes().norm() == Approx(1.0).epsilon(1e-12));
    const int k = 10000;
    double s = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < k; ++i) {
        auto eng = ptm::rng::stream(21, static_cast<std::uint64_t>(i));
        const double p = dense::purity(
            dense::reduce_to_ab(ptm::ensembles::sample_haar_state(t, eng)));
        s += p;
        s2 += p * p;
    }
    const double mean = s / k;
    const double se = std::sqrt((s2 / k - mean * mean) / k);
    CHECK(std::abs(mean - 6.0 / 9.0) < 3.0 * se);
}

TEST_CASE("Haar unitaries are unitary") {
    auto eng = ptm::rng::stream(1, 2);
    const auto u = ptm::rng::haar_unitary(6, eng);
    CHECK((u.adjoint() * u).isApprox(Eigen::MatrixXcd::Identity(6, 6), 1e-12));
    const auto o = ptm::rng::haar_special_orthogonal(5, eng);
    CHECK((o.transpose() * o).isApprox(Eigen::MatrixXd::Identity(5, 5), 1e-12));
    CHECK(o.determinant() == Approx(1.0));
}
