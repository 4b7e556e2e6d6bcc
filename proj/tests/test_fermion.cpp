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

#include <boost/math/distributions/beta.hpp>

#include "ptm/dense.hpp"
#include "ptm/errors.hpp"
#include "ptm/fermion_gaussian.hpp"
#include "ptm/pfaffian.hpp"
#include "ptm/random_matrices.hpp"

using Catch::Approx;
using ptm::Tripartition;
namespace fer = ptm::fermion;
namespace dense = ptm::dense;
using cd = std::complex<double>;

namespace {

fer::CovarianceMatrix random_pure(int modes, std::uint64_t seed) {
    auto eng = ptm::rng::stream(seed, 0);
    return fer::rotate(fer::vacuum_covariance(modes),
                       fer::sample_special_orthogonal(2 * modes, eng));
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace

TEST_CASE("Pfaffian of a fixed integer matrix") {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(6, 6);
    const double up[6][6] = {{0, 1, -2, 3, 0, 4},  {0, 0, 5, -1, 2, 0},
                             {0, 0, 0, 2, -3, 1}, {0, 0, 0, 0, 1, 2},
                             {0, 0, 0, 0, 0, -1}, {0, 0, 0, 0, 0, 0}};
    for (int i = 0; i < 6; ++i) {
        for (int j = i + 1; j < 6; ++j) {
            a(i, j) = up[i][j];
            a(j, i) = -up[i][j];
        }
    }
    // Laplace expansion in tests/oracles/oracle.py.
    CHECK(std::abs(ptm::linalg::pfaffian(a) - cd(2.0)) < 1e-12);
    CHECK(ptm::linalg::pfaffian(Eigen::MatrixXcd::Zero(4, 4)) == cd(0.0));
    CHECK(ptm::linalg::pfaffian(Eigen::MatrixXcd(0, 0)) == cd(1.0));
}

TEST_CASE("Pfaffian squared equals the determinant") {
    auto eng = ptm::rng::stream(2, 0);
    for (int n : {2, 8, 40}) {
        Eigen::MatrixXcd x = ptm::rng::complex_normal_matrix(n, n, eng);
        const Eigen::MatrixXcd a = x - x.transpose();
        const auto lp = ptm::linalg::log_pfaffian(a);
        const cd det = a.determinant();
        CHECK(2.0 * lp.log_abs == Approx(std::log(std::abs(det))).epsilon(1e-10));
        const cd ratio = lp.phase * lp.phase / (det / std::abs(det));
        CHECK(std::abs(ratio - 1.0) < 1e-8);
    }
}

TEST_CASE("Vacuum covariance and the dense oracle") {
    const auto g = fer::vacuum_covariance(3);
    CHECK(g.matrix().transpose() == -g.matrix());
    CHECK(g.is_pure());
    dense::Vector vac = dense::Vector::Zero(2);
    vac[0] = 1.0;
    const auto gd = fer::dense_covariance(vac, 1);
    CHECK(std::abs(gd.matrix()(0, 1) - cd(0.0, 1.0)) < 1e-14);
    CHECK_THROWS_AS(fer::CovarianceMatrix(Eigen::MatrixXcd::Ones(2, 2)),
                    ptm::ValidationError);
}

TEST_CASE("Haar orthogonal rotations") {
    auto eng = ptm::rng::stream(3, 0);
    const auto r = fer::sample_special_orthogonal(8, eng);
    CHECK((r * r.transpose()).isApprox(Eigen::MatrixXd::Identity(8, 8), 1e-12));
    CHECK(r.determinant() == Approx(1.0));
    CHECK(fer::rotate(fer::vacuum_covariance(4), r).is_pure(1e-10));
}

TEST_CASE("First column of Haar SO(d) is uniform on the sphere") {
    const int d = 6;
    const int k = 2000;
    std::vector<double> x(k);
    for (int i = 0; i < k; ++i) {
        auto eng = ptm::rng::stream(4, static_cast<std::uint64_t>(i));
        const double v = fer::sample_special_orthogonal(d, eng)(0, 0);
        x[static_cast<std::size_t>(i)] = v * v;
    }
    std::sort(x.begin(), x.end());
    const boost::math::beta_distribution<double> beta(0.5, 0.5 * (d - 1));
    double dmax = 0.0;
    for (int i = 0; i < k; ++i) {
        const double f = boost::math::cdf(beta, x[static_cast<std::size_t>(i)]);
        dmax = std::max({dmax, f - static_cast<double>(i) / k,
                         static_cast<double>(i + 1) / k - f});
    }
    const double lam = dmax * std::sqrt(static_cast<double>(k));
    double p = 0.0;
    for (int j = 1; j <= 100; ++j) {
        p += 2.0 * ((j % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lam * lam);
    }
    CHECK(p > 0.01);
}

TEST_CASE("Restriction and the transposed-block covariance") {
    const auto g = random_pure(5, 7);
    const auto onlya = fer::restrict_and_gplus(g, {3, 0});
    CHECK(onlya.gplus.isApprox(onlya.gprime.matrix()));
    const auto onlyb = fer::restrict_and_gplus(g, {0, 3});
    CHECK(onlyb.gplus.isApprox(-onlyb.gprime.matrix()));
    const auto both = fer::restrict_and_gplus(g, {2, 2});
    CHECK((both.gplus + both.gplus.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const int shifted[] = {1, 2, 3};
    CHECK(fer::restrict_and_gplus(g, {1, 2}, shifted).gprime.matrix().isApprox(
        g.matrix().block(2, 2, 6, 6)));
    const int gap[] = {0, 2};
    CHECK_THROWS_AS(fer::restrict_and_gplus(g, {1, 1}, gap), ptm::UnsupportedLayoutError);
}

TEST_CASE("Trace of Gaussian products matches dense overlaps") {
    const int modes = 4;
    const auto g1 = random_pure(modes, 11);
    const auto g2 = random_pure(modes, 12);
    const auto g3 = random_pure(modes, 13);
    const auto p1 = fer::dense_gaussian_state(g1);
    const auto p2 = fer::dense_gaussian_state(g2);
    const auto p3 = fer::dense_gaussian_state(g3);
    CHECK(fer::dense_covariance(p1, modes).matrix().isApprox(g1.matrix(), 1e-10));
    const Eigen::MatrixXcd ks1[] = {g1.matrix()};
    CHECK(std::abs(fer::trace_product(ks1).value() - 1.0) < 1e-12);
    const Eigen::MatrixXcd ks2[] = {g1.matrix(), g2.matrix()};
    const double ov = std::norm(p1.dot(p2));
    CHECK(std::abs(fer::trace_product(ks2).value() - ov) < 1e-12);
    const Eigen::MatrixXcd ks3[] = {g1.matrix(), g2.matrix(), g3.matrix()};
    const cd tr3 = p1.dot(p2) * p2.dot(p3) * p3.dot(p1);
    CHECK(std::abs(fer::trace_product(ks3).value() - tr3) < 1e-12);
}

TEST_CASE("Gaussian PT moments match the dense oracle") {
    auto eng = ptm::rng::stream(21, 0);
    std::uniform_int_distribution<int> pick(0, 3);
    int checked = 0;
    for (int i = 0; i < 30; ++i) {
        int na = 1 + pick(eng);
        int nb = 1 + pick(eng);
        int nc = pick(eng);
        while (na + nb + nc > 8) {
            nc > 0 ? --nc : --na;
        }
        const Tripartition t(na, nb, nc);
        const auto g = random_pure(t.n(), 100 + static_cast<std::uint64_t>(i));
        const auto pair = fer::restrict_and_gplus(g, {na, nb});
        const auto gm = fer::gaussian_pt_moments(pair.gprime, {na, nb});
        const auto rm = fer::gaussian_pt_moments_reduced(pair.gprime, {na, nb});
        const auto rho = fer::dense_fermion_oracle(fer::dense_gaussian_state(g), t);
        const auto dm = dense::pt_moments(dense::negativity_spectrum(rho), 4);
        INFO(t.to_string());
        CHECK(rel(gm.p2, dm.value(2)) < 1e-8);
        CHECK(rel(gm.p3, dm.value(3)) < 1e-8);
        CHECK(rel(gm.p4, dm.value(4)) < 1e-8);
        CHECK(rel(rm.p2, gm.p2) < 1e-8);
        CHECK(rel(rm.p3, gm.p3) < 1e-8);
        CHECK(rel(rm.p4, gm.p4) < 1e-8);
        CHECK(gm.p2 * gm.p4 >= gm.p3 * gm.p3 * (1 - 1e-12));
        ++checked;
    }
    CHECK(checked == 30);
}

TEST_CASE("Vacuum on AB gives unit moments") {
    const auto pair = fer::restrict_and_gplus(fer::vacuum_covariance(6), {2, 2});
    const auto m = fer::gaussian_pt_moments(pair.gprime, {2, 2});
    CHECK(m.p2 == Approx(1.0));
    CHECK(m.p3 == Approx(1.0));
    CHECK(m.p4 == Approx(1.0));
}

TEST_CASE("Matchgate circuits are Gaussian") {
    auto eng = ptm::rng::stream(31, 0);
    const auto mg = fer::random_matchgate(eng);
    CHECK(std::abs(mg.u.determinant() - mg.v.determinant()) < 1e-12);
    const auto gm = mg.matrix();
    CHECK((gm.adjoint() * gm).isApprox(Eigen::Matrix4cd::Identity(), 1e-12));
    const auto r = fer::gate_rotation(gm);
    CHECK((r * r.transpose()).isApprox(Eigen::MatrixXd::Identity(4, 4), 1e-10));

    CHECK(fer::brickwork_gate_count(10) == 135);
    const auto c = fer::brickwork_circuit(6, 0, eng);
    CHECK(static_cast<int>(c.gates.size()) == fer::brickwork_gate_count(6));
    const auto psi = fer::dense_circuit_state(c);
    const auto rot = fer::circuit_rotation(c);
    const auto g = fer::rotate(fer::vacuum_covariance(6), rot);
    CHECK(fer::dense_covariance(psi, 6).matrix().isApprox(g.matrix(), 1e-8));

    const Tripartition t(2, 2, 2);
    const auto pair = fer::restrict_and_gplus(g, {2, 2});
    const auto m = fer::gaussian_pt_moments(pair.gprime, {2, 2});
    const auto dm = dense::pt_moments(
        dense::negativity_spectrum(fer::dense_fermion_oracle(psi, t)), 4);
    CHECK(rel(m.p2, dm.value(2)) < 1e-8);

    fer::Circuit empty;
    empty.n_qubits = 3;
    const auto v = fer::dense_circuit_state(empty);
    CHECK(std::abs(v[0] - 1.0) < 1e-15);
    CHECK(fer::circuit_rotation(empty).isIdentity());

    const auto full = fer::brickwork_circuit(4, fer::brickwork_gate_count(4), eng);
    CHECK(std::all_of(full.gates.begin(), full.gates.end(),
                      [](const fer::Gate &x) { return x.is_swap; }));
    CHECK_THROWS_AS(fer::circuit_rotation(full), ptm::ValidationError);
}

TEST_CASE("Gaussian and doped ensembles") {
    const auto st = fer::gaussian_ensemble({2, 2, 2}, 40, 5);
    CHECK(st.count == 40);
    CHECK(st.r2_tilde.value > 0.0);
    auto eng = ptm::rng::stream(6, 0);
    const auto rec = fer::doped_sample({2, 2, 2}, 3, eng);
    CHECK(rec[ptm::stats::Quantity::P2] > 0.0);
    CHECK(rec[ptm::stats::Quantity::P2] * rec[ptm::stats::Quantity::P4] >=
          rec[ptm::stats::Quantity::P3] * rec[ptm::stats::Quantity::P3] * (1 - 1e-12));
}
