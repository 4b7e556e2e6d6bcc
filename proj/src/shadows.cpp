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

#include "ptm/shadows.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "ptm/ensembles.hpp"
#include "ptm/errors.hpp"

namespace ptm::shadows {

namespace {

using cd = std::complex<double>;

void apply_1q(dense::Vector &v, const Eigen::Matrix2cd &u, int q, int n) {
    const Eigen::Index stride = Eigen::Index{1} << (n - 1 - q);
    const Eigen::Index dim = v.size();
    for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
        for (Eigen::Index i = base; i < base + stride; ++i) {
            const cd a = v[i];
            const cd b = v[i + stride];
            v[i] = u(0, 0) * a + u(0, 1) * b;
            v[i + stride] = u(1, 0) * a + u(1, 1) * b;
        }
    }
}

void apply_1q_left(dense::Matrix &m, const Eigen::Matrix2cd &u, int q, int n) {
    const Eigen::Index stride = Eigen::Index{1} << (n - 1 - q);
    const Eigen::Index dim = m.rows();
    for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
        for (Eigen::Index i = base; i < base + stride; ++i) {
            const Eigen::RowVectorXcd a = m.row(i);
            const Eigen::RowVectorXcd b = m.row(i + stride);
            m.row(i) = u(0, 0) * a + u(0, 1) * b;
            m.row(i + stride) = u(1, 0) * a + u(1, 1) * b;
        }
    }
}

std::vector<Eigen::Matrix2cd> random_rotations(int n, rng::Engine &eng) {
    std::vector<Eigen::Matrix2cd> us(static_cast<std::size_t>(n));
    for (auto &u : us) {
        u = rng::haar_unitary(2, eng);
    }
    return us;
}

void draw_shots(StateMeasurements &m, const Eigen::VectorXd &probs, int unitary,
                int shots, rng::Engine &eng) {
    std::discrete_distribution<std::uint32_t> dist(probs.data(),
                                                   probs.data() + probs.size());
    for (int s = 0; s < shots; ++s) {
        m.records.push_back({m.state_index, unitary, dist(eng)});
    }
}

// Shadow factors of every record, flattened as [record][qubit].
struct FactorTable {
    int n_qubits;
    std::vector<Eigen::Matrix2cd> f;

    FactorTable(const StateMeasurements &m, int k) : n_qubits(k) {
        f.resize(m.records.size() * static_cast<std::size_t>(k));
        for (std::size_t r = 0; r < m.records.size(); ++r) {
            for (int q = 0; q < k; ++q) {
                f[r * static_cast<std::size_t>(k) + static_cast<std::size_t>(q)] =
                    m.shadow_factor(r, q);
            }
        }
    }
    const Eigen::Matrix2cd &at(std::size_t r, int q) const {
        return f[r * static_cast<std::size_t>(n_qubits) + static_cast<std::size_t>(q)];
    }
};

double tuple_value(const FactorTable &ft, std::span<const std::size_t> recs,
                   int n_a, int n_b) {
    cd prod = 1.0;
    const std::size_t n = recs.size();
    for (int q = 0; q < n_a; ++q) {
        Eigen::Matrix2cd x = ft.at(recs[0], q);
        for (std::size_t i = 1; i < n; ++i) {
            x = x * ft.at(recs[i], q);
        }
        prod *= x.trace();
    }
    for (int q = n_a; q < n_a + n_b; ++q) {
        Eigen::Matrix2cd x = ft.at(recs[n - 1], q);
        for (std::size_t i = n - 1; i-- > 0;) {
            x = x * ft.at(recs[i], q);
        }
        prod *= x.trace();
    }
    return prod.real();
}

struct Accumulator {
    double sum = 0.0;
    std::size_t count = 0;
    std::vector<double> unit_sum;
    std::vector<std::size_t> unit_count;

    explicit Accumulator(int n_u)
        : unit_sum(static_cast<std::size_t>(n_u), 0.0),
          unit_count(static_cast<std::size_t>(n_u), 0) {}

    void add(double v, std::span<const int> units) {
        sum += v;
        ++count;
        for (int j : units) {
            unit_sum[static_cast<std::size_t>(j)] += v;
            ++unit_count[static_cast<std::size_t>(j)];
        }
    }
};

void finish(MomentEstimate &out, const Accumulator &acc) {
    out.value = acc.sum / static_cast<double>(acc.count);
    out.leave_one_out.resize(acc.unit_sum.size());
    for (std::size_t j = 0; j < out.leave_one_out.size(); ++j) {
        const std::size_t rest = acc.count - acc.unit_count[j];
        out.leave_one_out[j] =
            rest == 0 ? out.value
                      : (acc.sum - acc.unit_sum[j]) / static_cast<double>(rest);
    }
    out.error = stats::jackknife_from_leave_one_out(out.value, out.leave_one_out).error;
}

// Shot average of the shadows of each unitary, partially transposed on B.
std::vector<dense::Matrix> averaged_pt_shadows(const StateMeasurements &m, int n_a,
                                               int n_b) {
    const int k = n_a + n_b;
    const Eigen::Index dim = Eigen::Index{1} << k;
    const FactorTable ft(m, k);
    std::vector<dense::Matrix> ys(static_cast<std::size_t>(m.n_unitaries()),
                                  dense::Matrix::Zero(dim, dim));
    dense::Matrix cur;
    dense::Matrix next;
    for (std::size_t r = 0; r < m.records.size(); ++r) {
        cur = dense::Matrix::Ones(1, 1);
        for (int q = 0; q < k; ++q) {
            const Eigen::Matrix2cd f = q < n_a ? ft.at(r, q) : Eigen::Matrix2cd(ft.at(r, q).transpose());
            next.resize(cur.rows() * 2, cur.cols() * 2);
            for (Eigen::Index i = 0; i < cur.rows(); ++i) {
                for (Eigen::Index j = 0; j < cur.cols(); ++j) {
                    next.block<2, 2>(2 * i, 2 * j) = cur(i, j) * f;
                }
            }
            cur.swap(next);
        }
        ys[static_cast<std::size_t>(m.records[r].unitary_index)] += cur;
    }
    for (auto &y : ys) {
        y /= static_cast<double>(m.n_shots);
    }
    return ys;
}

double tr_prod(const dense::Matrix &a, const dense::Matrix &b) {
    return a.cwiseProduct(b.transpose()).sum().real();
}

double falling(double n, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) {
        out *= n - i;
    }
    return out;
}

// Sums of tr(Y_{r1} ⋯ Y_{rn}) over ordered distinct tuples, by Möbius
// inversion over the coincidence patterns of the indices.
struct PowerSums {
    dense::Matrix s;
    dense::Matrix t2;
    dense::Matrix t3;
    double t4 = 0.0;
};

double distinct_sum(int n, const PowerSums &p, double c1, double c2) {
    switch (n) {
    case 2:
        return p.s.squaredNorm() - p.t2.trace().real();
    case 3: {
        const dense::Matrix s2 = p.s * p.s;
        return tr_prod(s2, p.s) - 3.0 * tr_prod(p.t2, p.s) + 2.0 * p.t3.trace().real();
    }
    default: {
        const dense::Matrix s2 = p.s * p.s;
        return s2.squaredNorm() - 4.0 * tr_prod(p.t2, s2) - 2.0 * c1 +
               2.0 * p.t2.squaredNorm() + c2 + 8.0 * tr_prod(p.t3, p.s) - 6.0 * p.t4;
    }
    }
}

MomentEstimate exact_u_statistic(const std::vector<dense::Matrix> &ys, int n) {
    const auto n_u = ys.size();
    const Eigen::Index dim = ys[0].rows();
    PowerSums all{dense::Matrix::Zero(dim, dim), dense::Matrix::Zero(dim, dim),
                  dense::Matrix::Zero(dim, dim), 0.0};
    std::vector<dense::Matrix> y2(n_u);
    for (std::size_t j = 0; j < n_u; ++j) {
        y2[j] = ys[j] * ys[j];
        all.s += ys[j];
        all.t2 += y2[j];
        if (n >= 3) {
            all.t3 += y2[j] * ys[j];
        }
        all.t4 += y2[j].squaredNorm();
    }
    // Terms with the pattern r1 = r3 (c1) and r1 = r3, r2 = r4 (c2).
    double c1 = 0.0;
    double c2 = 0.0;
    dense::Matrix r;
    std::vector<double> row(n_u, 0.0);
    if (n == 4) {
        r = dense::Matrix::Zero(dim, dim);
        for (std::size_t a = 0; a < n_u; ++a) {
            r.noalias() += ys[a] * all.s * ys[a];
        }
        c1 = tr_prod(r, all.s);
        dense::Matrix prod(dim, dim);
        for (std::size_t a = 0; a < n_u; ++a) {
            const double diag = y2[a].squaredNorm();
            c2 += diag;
            row[a] += diag;
            for (std::size_t b = a + 1; b < n_u; ++b) {
                prod.noalias() = ys[a] * ys[b];
                const double v = tr_prod(prod, prod);
                c2 += 2.0 * v;
                row[a] += v;
                row[b] += v;
            }
        }
    }
    MomentEstimate out;
    out.exhaustive = true;
    out.tuples = static_cast<std::size_t>(falling(static_cast<double>(n_u), n));
    out.value = distinct_sum(n, all, c1, c2) / falling(static_cast<double>(n_u), n);
    out.leave_one_out.resize(n_u);
    const double rest = falling(static_cast<double>(n_u) - 1.0, n);
    for (std::size_t j = 0; j < n_u; ++j) {
        const dense::Matrix &y = ys[j];
        PowerSums p{all.s - y, all.t2 - y2[j], dense::Matrix(), all.t4 - y2[j].squaredNorm()};
        double c1j = 0.0;
        double c2j = 0.0;
        if (n >= 3) {
            p.t3 = all.t3 - y2[j] * y;
        }
        if (n == 4) {
            const dense::Matrix ysy = y * all.s;
            c1j = (c1 - tr_prod(ysy, ysy)) - 2.0 * (tr_prod(y, r) - tr_prod(y2[j] * y, all.s)) +
                  (row[j] - y2[j].squaredNorm());
            c2j = c2 - 2.0 * row[j] + y2[j].squaredNorm();
        }
        out.leave_one_out[j] = rest > 0.0 ? distinct_sum(n, p, c1j, c2j) / rest : out.value;
    }
    out.error = stats::jackknife_from_leave_one_out(out.value, out.leave_one_out).error;
    return out;
}

MomentEstimate sampled_u_statistic(const std::vector<dense::Matrix> &ys, int n,
                                   std::size_t budget, rng::Engine &eng) {
    const int n_u = static_cast<int>(ys.size());
    Accumulator acc(n_u);
    std::uniform_int_distribution<int> pick(0, n_u - 1);
    std::vector<int> units(static_cast<std::size_t>(n));
    dense::Matrix left;
    dense::Matrix right;
    for (std::size_t t = 0; t < budget; ++t) {
        for (int d = 0; d < n; ++d) {
            int j = 0;
            do {
                j = pick(eng);
            } while (std::find(units.begin(), units.begin() + d, j) != units.begin() + d);
            units[static_cast<std::size_t>(d)] = j;
        }
        const auto &y = [&](int d) -> const dense::Matrix & {
            return ys[static_cast<std::size_t>(units[static_cast<std::size_t>(d)])];
        };
        left.noalias() = y(0) * y(1);
        right.noalias() = y(2) * y(3);
        acc.add(tr_prod(left, right), units);
    }
    MomentEstimate out;
    out.tuples = acc.count;
    finish(out, acc);
    return out;
}

// Shot-level U-statistic with per-qubit factorized tuple values.
MomentEstimate estimate_factorized(const StateMeasurements &m, int n, int n_a, int n_b,
                                   std::size_t budget, rng::Engine &eng) {
    const int n_u = m.n_unitaries();
    const int n_m = m.n_shots;
    const FactorTable ft(m, n_a + n_b);
    double total = 1.0;
    for (int i = 0; i < n; ++i) {
        total *= static_cast<double>(n_u - i) * static_cast<double>(n_m);
    }
    Accumulator acc(n_u);
    std::vector<int> units(static_cast<std::size_t>(n));
    std::vector<std::size_t> recs(static_cast<std::size_t>(n));
    MomentEstimate out;
    out.exhaustive = total <= static_cast<double>(budget);

    if (out.exhaustive) {
        std::vector<int> shots(static_cast<std::size_t>(n));
        std::function<void(int)> rec_units;
        std::function<void(int)> rec_shots = [&](int d) {
            if (d == n) {
                acc.add(tuple_value(ft, recs, n_a, n_b), units);
                return;
            }
            for (int s = 0; s < n_m; ++s) {
                recs[static_cast<std::size_t>(d)] =
                    static_cast<std::size_t>(units[static_cast<std::size_t>(d)]) *
                        static_cast<std::size_t>(n_m) +
                    static_cast<std::size_t>(s);
                rec_shots(d + 1);
            }
        };
        rec_units = [&](int d) {
            if (d == n) {
                rec_shots(0);
                return;
            }
            for (int j = 0; j < n_u; ++j) {
                if (std::find(units.begin(), units.begin() + d, j) !=
                    units.begin() + d) {
                    continue;
                }
                units[static_cast<std::size_t>(d)] = j;
                rec_units(d + 1);
            }
        };
        rec_units(0);
    } else {
        std::uniform_int_distribution<int> pick_u(0, n_u - 1);
        std::uniform_int_distribution<int> pick_s(0, n_m - 1);
        for (std::size_t t = 0; t < budget; ++t) {
            for (int d = 0; d < n; ++d) {
                int j = 0;
                do {
                    j = pick_u(eng);
                } while (std::find(units.begin(), units.begin() + d, j) !=
                         units.begin() + d);
                units[static_cast<std::size_t>(d)] = j;
                recs[static_cast<std::size_t>(d)] =
                    static_cast<std::size_t>(j) * static_cast<std::size_t>(n_m) +
                    static_cast<std::size_t>(pick_s(eng));
            }
            acc.add(tuple_value(ft, recs, n_a, n_b), units);
        }
    }

    out.tuples = acc.count;
    finish(out, acc);
    return out;
}

} // namespace

void CampaignConfig::validate() const {
    if (n_states < 1 || n_unitaries < 1 || n_shots < 1 || tuple_budget < 1) {
        throw ValidationError("CampaignConfig: all counts must be >= 1");
    }
}

Eigen::Matrix2cd shadow_factor(const Eigen::Matrix2cd &u, int bit) {
    const Eigen::RowVector2cd row = u.row(bit);
    return 3.0 * (row.adjoint() * row) - Eigen::Matrix2cd::Identity();
}

Eigen::Matrix2cd StateMeasurements::shadow_factor(std::size_t r, int q) const {
    const ShadowRecord &rec = records.at(r);
    const int bit = static_cast<int>((rec.bits >> (n_qubits - 1 - q)) & 1U);
    return shadows::shadow_factor(
        rotations.at(static_cast<std::size_t>(rec.unitary_index))
            .at(static_cast<std::size_t>(q)),
        bit);
}

StateMeasurements simulate_measurements(const dense::PureState &psi,
                                        const CampaignConfig &cfg,
                                        int state_index, rng::Engine &eng) {
    cfg.validate();
    const int n = psi.layout().n();
    StateMeasurements m;
    m.state_index = state_index;
    m.n_qubits = n;
    m.n_shots = cfg.n_shots;
    m.records.reserve(static_cast<std::size_t>(cfg.n_unitaries) *
                      static_cast<std::size_t>(cfg.n_shots));
    for (int j = 0; j < cfg.n_unitaries; ++j) {
        auto us = random_rotations(n, eng);
        dense::Vector v = psi.amplitudes();
        for (int q = 0; q < n; ++q) {
            apply_1q(v, us[static_cast<std::size_t>(q)], q, n);
        }
        draw_shots(m, v.cwiseAbs2(), j, cfg.n_shots, eng);
        m.rotations.push_back(std::move(us));
    }
    return m;
}

StateMeasurements simulate_measurements(const dense::DensityMatrix &rho,
                                        const CampaignConfig &cfg,
                                        int state_index, rng::Engine &eng) {
    cfg.validate();
    const int n = rho.n_ab();
    StateMeasurements m;
    m.state_index = state_index;
    m.n_qubits = n;
    m.n_shots = cfg.n_shots;
    for (int j = 0; j < cfg.n_unitaries; ++j) {
        auto us = random_rotations(n, eng);
        dense::Matrix x = rho.matrix();
        for (int q = 0; q < n; ++q) {
            apply_1q_left(x, us[static_cast<std::size_t>(q)], q, n);
        }
        dense::Matrix y = x.adjoint();
        for (int q = 0; q < n; ++q) {
            apply_1q_left(y, us[static_cast<std::size_t>(q)], q, n);
        }
        const Eigen::VectorXd probs = y.diagonal().real().cwiseMax(0.0);
        draw_shots(m, probs, j, cfg.n_shots, eng);
        m.rotations.push_back(std::move(us));
    }
    return m;
}

dense::Matrix reconstruct_shadow(const StateMeasurements &m, std::size_t r, int k) {
    if (k < 0 || k > m.n_qubits) {
        throw ValidationError("reconstruct_shadow: bad qubit count");
    }
    dense::Matrix out = dense::Matrix::Ones(1, 1);
    for (int q = 0; q < k; ++q) {
        const Eigen::Matrix2cd f = m.shadow_factor(r, q);
        dense::Matrix next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            for (Eigen::Index j = 0; j < out.cols(); ++j) {
                next.block<2, 2>(2 * i, 2 * j) = out(i, j) * f;
            }
        }
        out = std::move(next);
    }
    return out;
}

double tuple_value(const StateMeasurements &m, std::span<const std::size_t> recs,
                   int n_a, int n_b) {
    if (recs.empty() || n_a < 0 || n_b < 0 || n_a + n_b > m.n_qubits) {
        throw ValidationError("tuple_value: bad arguments");
    }
    cd prod = 1.0;
    const std::size_t n = recs.size();
    for (int q = 0; q < n_a + n_b; ++q) {
        Eigen::Matrix2cd x = Eigen::Matrix2cd::Identity();
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t r = q < n_a ? recs[i] : recs[n - 1 - i];
            x = x * m.shadow_factor(r, q);
        }
        prod *= x.trace();
    }
    return prod.real();
}

MomentEstimate estimate_pt_moments(const StateMeasurements &m, int n, int n_a,
                                   int n_b, std::size_t budget, rng::Engine &eng) {
    if (n < 2 || n > 4) {
        throw ValidationError("estimate_pt_moments: order must be in 2..4");
    }
    if (n_a < 0 || n_b < 0 || n_a + n_b > m.n_qubits || n_a + n_b == 0) {
        throw ValidationError("estimate_pt_moments: bad partition");
    }
    const int n_u = m.n_unitaries();
    if (n_u < n || m.records.size() != static_cast<std::size_t>(n_u) *
                                           static_cast<std::size_t>(m.n_shots)) {
        throw ValidationError("estimate_pt_moments: need at least " +
                              std::to_string(n) + " unitaries");
    }
    if (budget < 1) {
        throw ValidationError("estimate_pt_moments: budget must be >= 1");
    }
    if (n_a + n_b > kMaxDenseShadowQubits) {
        return estimate_factorized(m, n, n_a, n_b, budget, eng);
    }
    const auto ys = averaged_pt_shadows(m, n_a, n_b);
    const double nu = n_u;
    const auto pairs = nu * (nu - 1.0) / 2.0;
    if (n < 4 || pairs <= 2.0 * static_cast<double>(budget)) {
        return exact_u_statistic(ys, n);
    }
    return sampled_u_statistic(ys, n, budget, eng);
}

CampaignResult campaign_r2(const CampaignConfig &cfg, const StateSampler &sampler,
                           const Tripartition &t) {
    cfg.validate();
    const auto n_s = static_cast<std::size_t>(cfg.n_states);
    std::vector<std::array<MomentEstimate, 3>> est(n_s);
    std::vector<std::array<double, 3>> exact(n_s);
    stats::parallel_for(cfg.n_states, [&](int s) {
        const auto si = static_cast<std::uint64_t>(s);
        rng::Engine state_eng = rng::stream(cfg.seed, si, 0);
        const dense::PureState psi = sampler(s, state_eng);
        if (!(psi.layout() == t)) {
            throw ValidationError("campaign_r2: sampled state has layout " +
                                  psi.layout().to_string());
        }
        rng::Engine meas_eng = rng::stream(cfg.seed, si, 1);
        const StateMeasurements m = simulate_measurements(psi, cfg, s, meas_eng);
        for (int n = 2; n <= 4; ++n) {
            rng::Engine tuple_eng = rng::stream(cfg.seed, si, static_cast<std::uint64_t>(n));
            est[static_cast<std::size_t>(s)][static_cast<std::size_t>(n - 2)] =
                estimate_pt_moments(m, n, t.n_a(), t.n_b(), cfg.tuple_budget, tuple_eng);
        }
        const MomentSet p = dense::pt_moments(dense::negativity_spectrum(psi), 4);
        for (int n = 2; n <= 4; ++n) {
            exact[static_cast<std::size_t>(s)][static_cast<std::size_t>(n - 2)] =
                p.value(n);
        }
    });

    const double ns = static_cast<double>(n_s);
    std::array<double, 3> mean{};
    CampaignResult out;
    for (std::size_t s = 0; s < n_s; ++s) {
        for (std::size_t k = 0; k < 3; ++k) {
            mean[k] += est[s][k].value / ns;
            out.dense_moments[k] += exact[s][k] / ns;
        }
    }
    const auto ratio = [](const std::array<double, 3> &p) { return p[0] * p[1] / p[2]; };
    out.dense_r2_tilde = ratio(out.dense_moments);

    std::array<double, 4> var{};
    for (std::size_t s = 0; s < n_s; ++s) {
        const std::size_t n_u = est[s][0].leave_one_out.size();
        std::vector<std::array<double, 4>> theta(n_u);
        std::array<double, 4> bar{};
        for (std::size_t j = 0; j < n_u; ++j) {
            std::array<double, 3> p = mean;
            for (std::size_t k = 0; k < 3; ++k) {
                p[k] += (est[s][k].leave_one_out[j] - est[s][k].value) / ns;
                theta[j][k] = p[k];
            }
            theta[j][3] = ratio(p);
            for (std::size_t k = 0; k < 4; ++k) {
                bar[k] += theta[j][k] / static_cast<double>(n_u);
            }
        }
        const double f = static_cast<double>(n_u - 1) / static_cast<double>(n_u);
        for (std::size_t j = 0; j < n_u; ++j) {
            for (std::size_t k = 0; k < 4; ++k) {
                var[k] += f * (theta[j][k] - bar[k]) * (theta[j][k] - bar[k]);
            }
        }
    }
    for (std::size_t k = 0; k < 3; ++k) {
        out.moments[k] = {mean[k], std::sqrt(var[k])};
    }
    out.r2_tilde = {ratio(mean), std::sqrt(var[3])};
    out.records = n_s * static_cast<std::size_t>(cfg.n_unitaries) *
                  static_cast<std::size_t>(cfg.n_shots);
    return out;
}

CampaignResult campaign_r2_haar(const CampaignConfig &cfg, const Tripartition &t) {
    return campaign_r2(
        cfg, [&t](int, rng::Engine &eng) { return ensembles::sample_haar_state(t, eng); },
        t);
}

} // namespace ptm::shadows
