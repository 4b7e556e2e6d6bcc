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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ptm/core.hpp"
#include "ptm/dense.hpp"
#include "ptm/ensembles.hpp"
#include "ptm/fermion_gaussian.hpp"
#include "ptm/haar_analytics.hpp"
#include "ptm/mps.hpp"
#include "ptm/pxp.hpp"
#include "ptm/random_matrices.hpp"
#include "ptm/shadows.hpp"
#include "ptm/stabilizer.hpp"
#include "ptm/stats.hpp"

namespace {

using ptm::Rational;
using ptm::Tripartition;
using ptm::haar::Phase;
using ptm::stats::Quantity;
using ptm::stats::SampleRecord;

constexpr std::uint64_t kSeed = 20260101;

struct Outcome {
    bool pass = false;
    std::string detail;
};

// Every sampled state of every ensemble, for the global implication check.
std::vector<SampleRecord> g_records;
std::map<std::string, std::size_t> g_record_counts;

void keep(const std::string &family, const std::vector<SampleRecord> &r) {
    g_records.insert(g_records.end(), r.begin(), r.end());
    g_record_counts[family] += r.size();
}

std::string fmt(const char *f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char *f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double exact_r2(const Tripartition &t) {
    return ptm::haar::tilde_r(2, ptm::haar::exact_mean_moments(t, 4));
}

// Qubits between t and the nearest phase boundary of the Haar diagram.
int boundary_distance(const Tripartition &t) {
    const int n = t.n();
    return std::min({std::abs(t.n_c() - t.n_ab()), std::abs(2 * t.n_a() - n) / 2,
                     std::abs(2 * t.n_b() - n) / 2});
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

Outcome asymptotic_quantization() {
    const int n_ab = 256;
    const int margin = n_ab / 16;
    const auto rows = ptm::ensembles::analytic_scan(
        ptm::ensembles::fraction_grid(n_ab, 64, 64, 0.75),
        ptm::ensembles::Method::Exact);
    std::map<Phase, std::pair<int, double>> worst;
    for (const auto &r : rows) {
        if (r.phase == Phase::Boundary || boundary_distance(r.partition) < margin) {
            continue;
        }
        const double target = r.phase == Phase::ES ? 1.5 : 1.0;
        auto &w = worst[r.phase];
        ++w.first;
        w.second = std::max(w.second, std::abs(r.r2_tilde - target));
    }
    bool ok = worst.size() == 3;
    std::string d = fmt("%zu points, interior margin %d;", rows.size(), margin);
    for (const auto &[phase, w] : worst) {
        ok = ok && w.first > 0 && w.second < 1e-2;
        d += fmt(" %s: %d pts max dev %.2e", std::string(ptm::haar::to_string(phase)).c_str(),
                 w.first, w.second);
    }
    return {ok, d};
}

Outcome exact_purity() {
    int checked = 0;
    int bad = 0;
    for (int n = 1; n <= 12; ++n) {
        for (int n_a = 0; n_a <= n; ++n_a) {
            for (int n_b = 0; n_a + n_b <= n; ++n_b) {
                if (n_a + n_b == 0) {
                    continue;
                }
                const Tripartition t(n_a, n_b, n - n_a - n_b);
                const Rational lab(t.l_ab());
                const Rational lc(t.l_c());
                const Rational expected = (lab + lc) / (lab * lc + 1);
                ++checked;
                if (ptm::haar::exact_mean_pt_moment(t, 2) != expected) {
                    ++bad;
                }
            }
        }
    }
    return {bad == 0 && checked > 0,
            fmt("%d partitions with N <= 12, %d mismatches", checked, bad)};
}

Outcome finite_size_dip() {
    std::string d;
    bool symmetric_dip = false;
    int columns = 0;
    for (int n_a = 1; n_a <= 9; ++n_a) {
        double lowest = 1e9;
        int at = -1;
        for (int n_c = 10; n_c <= 12; ++n_c) {
            const double r = exact_r2({n_a, 10 - n_a, n_c});
            if (r < lowest) {
                lowest = r;
                at = n_c;
            }
        }
        if (lowest < 1.0) {
            ++columns;
            symmetric_dip = symmetric_dip || n_a == 5;
        }
        if (n_a == 5) {
            d += fmt("N_A=5 min r2=%.6f at N_C=%d; ", lowest, at);
        }
    }
    d += fmt("%d of 9 N_A columns dip below 1", columns);
    return {symmetric_dip, d};
}

Outcome monte_carlo_consistency() {
    bool ok = true;
    std::string d;
    for (const Tripartition t : {Tripartition(3, 3, 2), Tripartition(1, 5, 2),
                                 Tripartition(2, 2, 4)}) {
        ptm::ensembles::EnsembleSpec spec;
        spec.family = ptm::ensembles::Family::Haar;
        spec.partition = t;
        spec.count = 100;
        spec.seed = kSeed + 4;
        const auto samples = ptm::ensembles::sample_ensemble(spec);
        keep("haar", samples);
        const auto s = ptm::stats::summarize(samples, spec.seed);
        const double exact = exact_r2(t);
        const double z = std::abs(s.r2_tilde.value - exact) / s.r2_tilde.error;
        ok = ok && z <= 3.0;
        d += fmt("%s: mc %.4f +- %.4f vs %.4f (%.2f sigma); ", t.to_string().c_str(),
                 s.r2_tilde.value, s.r2_tilde.error, exact, z);
    }
    return {ok, d};
}

Outcome variance_scaling() {
    struct Pair {
        const char *phase;
        Tripartition small;
        Tripartition large;
    };
    const Pair pairs[] = {{"PPT", {1, 1, 4}, {2, 2, 6}},
                          {"ME", {4, 1, 1}, {7, 2, 1}},
                          {"ES", {2, 2, 2}, {3, 3, 4}}};
    bool ok = true;
    std::string d;
    for (const auto &p : pairs) {
        const auto rel = [](const Tripartition &t) {
            const double r = exact_r2(t);
            return ptm::haar::linearized_var_r2(t, 1) / (r * r);
        };
        const double a = rel(p.small);
        const double b = rel(p.large);
        ok = ok && a >= 4.0 * b;
        d += fmt("%s %s->%s: %.3e -> %.3e (x%.1f); ", p.phase, p.small.to_string().c_str(),
                 p.large.to_string().c_str(), a, b, a / b);
    }
    return {ok, d};
}

Outcome white_noise() {
    const int n_ab = 64;
    const double eps = 1.0 - 1e-4;
    const int nc_max = 3 * n_ab;
    const auto rows = ptm::ensembles::analytic_scan(
        ptm::ensembles::full_grid(n_ab, nc_max), ptm::ensembles::Method::Exact, eps);
    std::vector<double> me;
    std::map<int, double> column;
    for (const auto &r : rows) {
        if (r.phase == Phase::ME && boundary_distance(r.partition) >= n_ab / 16) {
            me.push_back(r.r2_tilde);
        }
        if (r.partition.n_a() == n_ab / 2) {
            column[r.partition.n_c()] = r.r2_tilde;
        }
    }
    const double me_value = median(me);
    const double rel = std::abs(me_value - (1.0 - eps)) / (1.0 - eps);
    // Lowest N_C above which the middle column stays on the r2 = 1 plateau.
    int edge = nc_max + 1;
    for (auto it = column.rbegin(); it != column.rend(); ++it) {
        if (std::abs(it->second - 1.0) >= 1e-2) {
            break;
        }
        edge = it->first;
    }
    const double fraction = static_cast<double>(edge) / (n_ab + edge);
    const bool ok = !me.empty() && rel < 0.1 && edge <= nc_max && fraction < 0.5;
    return {ok, fmt("deep-ME median r2=%.4e over %zu pts (rel dev %.3f from 1-eps); PPT plateau "
                    "from N_C=%d, N_C/N=%.3f",
                    me_value, me.size(), rel, edge, fraction)};
}

Outcome stabilizer_suite() {
    auto eng = ptm::rng::stream(kSeed + 7, 0);
    double worst = 0.0;
    int r2_bad = 0;
    int neg_bad = 0;
    int spec_bad = 0;
    std::vector<SampleRecord> records;
    for (int i = 0; i < 200; ++i) {
        const auto triple = ptm::stabilizer::random_triple(10, eng);
        const auto closed = ptm::stabilizer::stab_pt_moments(triple);
        const auto inv = ptm::stabilizer::stab_invariants(triple);
        const auto psi = ptm::stabilizer::build_dense_state(triple);
        const auto spec = ptm::dense::negativity_spectrum(psi);
        const auto dm = ptm::dense::pt_moments(spec, 4);
        for (int n = 2; n <= 4; ++n) {
            worst = std::max(worst, std::abs(closed.value(n) - dm.value(n)));
        }
        if (*closed.exact(2) * *closed.exact(3) != *closed.exact(4) || inv.r2 != 1.0) {
            ++r2_bad;
        }
        if (inv.negativity != triple.e_ab ||
            std::abs(ptm::dense::negativity(spec) - triple.e_ab) > 1e-9) {
            ++neg_bad;
        }
        const auto ss = ptm::stabilizer::stab_spectrum(triple);
        const double mag = std::sqrt(closed.value(3));
        long pos = 0;
        long neg = 0;
        bool clean = std::abs(ss.magnitude - mag) <= 1e-12 * mag;
        for (const double l : spec.lambdas) {
            if (std::abs(l) < 1e-9) {
                continue;
            }
            clean = clean && std::abs(std::abs(l) - mag) <= 1e-9 * mag;
            (l > 0 ? pos : neg) += 1;
        }
        if (!clean || ptm::BigInt(pos) != ss.positive || ptm::BigInt(neg) != ss.negative) {
            ++spec_bad;
        }
        records.push_back(SampleRecord::from(ptm::dense::quantities(spec)));
    }
    keep("stabilizer", records);
    const bool ok = worst <= 1e-12 && r2_bad == 0 && neg_bad == 0 && spec_bad == 0;
    return {ok, fmt("200 triples: max |closed-dense| %.2e, r2 != 1: %d, E != e_ab: %d, "
                    "spectrum mismatches: %d",
                    worst, r2_bad, neg_bad, spec_bad)};
}

Outcome mps_diagram() {
    const int n_ab = 10;
    const int chi = 8;
    const std::vector<int> n_as = {1, 3, 5, 7, 9};
    const std::vector<int> n_cs = {0, 2, 4, 8, 14};
    bool ok = true;
    double plateau = 0.0;
    std::string d;
    for (const int n_a : n_as) {
        std::vector<double> r;
        for (const int n_c : n_cs) {
            ptm::ensembles::EnsembleSpec spec;
            spec.family = ptm::ensembles::Family::RandomMps;
            spec.partition = Tripartition(n_a, n_ab - n_a, n_c);
            spec.count = 100;
            spec.seed = kSeed + 8;
            spec.params.chi = chi;
            spec.params.with_negativity = false;
            const auto samples = ptm::ensembles::sample_ensemble(spec);
            keep("rmps", samples);
            if (n_c == 0) {
                for (const auto &s : samples) {
                    plateau = std::max(plateau, s[Quantity::Negativity]);
                }
            }
            r.push_back(ptm::stats::summarize(samples, spec.seed).r2_tilde.value);
        }
        // r2 > 1 on a leading run of N_C values, below 1 afterwards.
        std::size_t run = 0;
        while (run < r.size() && r[run] > 1.0) {
            ++run;
        }
        const bool shaped = run > 0 && run < r.size() &&
                            std::all_of(r.begin() + static_cast<long>(run), r.end(),
                                        [](double v) { return v < 1.0; });
        ok = ok && shaped;
        d += fmt("N_A=%d:", n_a);
        for (const double v : r) {
            d += fmt(" %.3f", v);
        }
        d += "; ";
    }
    ok = ok && plateau <= std::log2(chi) + 1e-6;
    d += fmt("max pure-state negativity %.4f", plateau);
    return {ok, d};
}

Outcome fermion_cross_validation() {
    namespace fg = ptm::fermion;
    auto eng = ptm::rng::stream(kSeed + 9, 0);
    double worst = 0.0;
    int hamburger_bad = 0;
    std::vector<SampleRecord> records;
    for (int i = 0; i < 100; ++i) {
        const int n = std::uniform_int_distribution<int>(4, 8)(eng);
        const int n_a = std::uniform_int_distribution<int>(1, n - 1)(eng);
        const int n_b = std::uniform_int_distribution<int>(1, n - n_a)(eng);
        const Tripartition t(n_a, n_b, n - n_a - n_b);
        fg::CovarianceMatrix g = fg::vacuum_covariance(n);
        ptm::dense::Vector psi;
        if (i % 2 == 0) {
            g = fg::rotate(g, fg::sample_special_orthogonal(2 * n, eng));
            psi = fg::dense_gaussian_state(g);
        } else {
            const auto c = fg::brickwork_circuit(n, 0, eng);
            g = fg::rotate(g, fg::circuit_rotation(c));
            psi = fg::dense_circuit_state(c);
        }
        const auto pair = fg::restrict_and_gplus(g, {n_a, n_b});
        const auto gm = fg::gaussian_pt_moments(pair.gprime, {n_a, n_b});
        const auto dm = ptm::dense::pt_moments(fg::dense_fermion_oracle(psi, t), 4);
        const double got[] = {gm.p2, gm.p3, gm.p4};
        for (int k = 0; k < 3; ++k) {
            const double ref = dm.value(k + 2);
            worst = std::max(worst, std::abs(got[k] - ref) / std::abs(ref));
        }
        if (gm.p2 * gm.p4 - gm.p3 * gm.p3 < -1e-12 * gm.p3 * gm.p3) {
            ++hamburger_bad;
        }
        records.push_back(SampleRecord::from_moments(gm.p2, gm.p3, gm.p4,
                                                     std::nan("")));
    }
    keep("fermion", records);
    return {worst <= 1e-6 && hamburger_bad == 0,
            fmt("100 instances at 4-8 modes: max rel err %.2e, Hamburger violations %d",
                worst, hamburger_bad)};
}

Outcome doping_transition() {
    const Tripartition t(5, 5, 0);
    const int k = 100;
    const double haar = exact_r2(t);
    const auto gauss = ptm::fermion::gaussian_ensemble(t, k, kSeed + 10);
    std::vector<double> r;
    std::vector<double> e;
    std::string d = fmt("Haar %.4f, Gaussian %.4f +- %.4f; N_swap:", haar,
                        gauss.r2_tilde.value, gauss.r2_tilde.error);
    for (const int n_swap : {0, 4, 8, 16, 32, 64}) {
        ptm::ensembles::EnsembleSpec spec;
        spec.family = ptm::ensembles::Family::DopedMatchgate;
        spec.partition = t;
        spec.count = k;
        spec.seed = kSeed + 10;
        spec.params.n_swap = n_swap;
        const auto samples = ptm::ensembles::sample_ensemble(spec);
        keep("doped-mg", samples);
        const auto s = ptm::stats::summarize(samples, spec.seed);
        r.push_back(s.r2_tilde.value);
        e.push_back(s.r2_tilde.error);
        d += fmt(" %d: %.4f +- %.4f", n_swap, s.r2_tilde.value, s.r2_tilde.error);
    }
    const double dir = haar > r.front() ? 1.0 : -1.0;
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        monotone = monotone && dir * (r[i + 1] - r[i]) >= -(e[i] + e[i + 1]);
    }
    const bool starts_gaussian = std::abs(r.front() - gauss.r2_tilde.value) <=
                                 3.0 * std::hypot(e.front(), gauss.r2_tilde.error);
    const bool approaches = dir * (r.back() - r.front()) > e.front() + e.back() &&
                            std::abs(r.back() - haar) < std::abs(r.front() - haar);
    return {monotone && starts_gaussian && approaches, d};
}

Outcome pxp_quenches() {
    const int n = 10;
    const double t_lo = 20.0;
    const double t_hi = 50.0;
    const int snapshots = 300;
    const auto times = ptm::pxp::uniform_times(t_lo, t_hi, snapshots);
    const auto polarized = ptm::pxp::tripartition_scan(
        ptm::pxp::evolve_quench(n, ptm::pxp::InitialState::Polarized, times), t_lo, t_hi);
    const auto z2 = ptm::pxp::tripartition_scan(
        ptm::pxp::evolve_quench(n, ptm::pxp::InitialState::Z2, times), t_lo, t_hi);
    int agree = 0;
    for (const auto &row : polarized) {
        const double h = exact_r2(row.partition);
        agree += ((row.r2_tilde > 1.0) == (h > 1.0)) ? 1 : 0;
    }
    const double fraction = static_cast<double>(agree) / static_cast<double>(polarized.size());
    bool band = true;
    double band_min = 1e9;
    for (const auto &row : z2) {
        if (row.partition.n_c() == 0) {
            band = band && row.r2_tilde > 1.0;
            band_min = std::min(band_min, row.r2_tilde);
        }
    }
    for (const auto initial : {ptm::pxp::InitialState::Polarized, ptm::pxp::InitialState::Z2}) {
        for (const auto &t : ptm::pxp::contiguous_tripartitions(n)) {
            ptm::ensembles::EnsembleSpec spec;
            spec.family = ptm::ensembles::Family::PxpWindow;
            spec.partition = t;
            spec.count = 31;
            spec.params.initial = initial;
            spec.params.t_lo = t_lo;
            spec.params.t_hi = t_hi;
            keep("pxp-window", ptm::ensembles::sample_ensemble(spec));
        }
    }
    return {fraction >= 0.8 && band,
            fmt("polarized sign agreement %d/%zu (%.1f%%); Z2 min r2 at N_C=0: %.4f", agree,
                polarized.size(), 100.0 * fraction, band_min)};
}

Outcome shadows_campaign() {
    bool ok = true;
    std::string d;
    ptm::shadows::CampaignConfig cfg;
    cfg.n_states = 64;
    cfg.n_unitaries = 500;
    cfg.n_shots = 10;
    cfg.tuple_budget = 100000;
    cfg.seed = kSeed + 12;
    for (const Tripartition t : {Tripartition(1, 2, 5), Tripartition(1, 5, 2),
                                 Tripartition(3, 3, 2)}) {
        const auto res = ptm::shadows::campaign_r2_haar(cfg, t);
        const double z = std::abs(res.r2_tilde.value - res.dense_r2_tilde) / res.r2_tilde.error;
        ok = ok && z <= 3.0;
        d += fmt("%s %s: %.4f +- %.4f vs dense %.4f (%.2f sigma); ", t.to_string().c_str(),
                 std::string(ptm::haar::to_string(ptm::haar::classify_phase(t))).c_str(),
                 res.r2_tilde.value, res.r2_tilde.error, res.dense_r2_tilde, z);
    }
    d += fmt("%d states x %d unitaries x %d shots", cfg.n_states, cfg.n_unitaries, cfg.n_shots);
    return {ok, d};
}

Outcome global_implications() {
    // Extra ensembles not otherwise sampled by the run.
    for (const Tripartition t : {Tripartition(2, 2, 2), Tripartition(3, 1, 2),
                                 Tripartition(1, 1, 4)}) {
        ptm::ensembles::EnsembleSpec spec;
        spec.family = ptm::ensembles::Family::NoisyHaar;
        spec.partition = t;
        spec.count = 100;
        spec.seed = kSeed + 13;
        spec.params.epsilon = 0.3;
        keep("noisy-haar", ptm::ensembles::sample_ensemble(spec));
        spec.family = ptm::ensembles::Family::Fermion;
        keep("fermion", ptm::ensembles::sample_ensemble(spec));
    }
    std::size_t hamburger = 0;
    std::size_t implication = 0;
    for (const auto &s : g_records) {
        const double p2 = s[Quantity::P2];
        const double p3 = s[Quantity::P3];
        const double p4 = s[Quantity::P4];
        const double lhs = p2 * p4;
        const double rhs = p3 * p3;
        if (lhs - rhs < -1e-12 * std::max(lhs, rhs)) {
            ++hamburger;
        }
        if (p2 * p3 / p4 > 1.0 + 1e-10 && p3 >= p2 * p2) {
            ++implication;
        }
    }
    std::string d = fmt("%zu states (", g_records.size());
    for (const auto &[family, count] : g_record_counts) {
        d += fmt("%s %zu ", family.c_str(), count);
    }
    d.back() = ')';
    d += fmt("; Hamburger violations %zu, r2>1 with p3>=p2^2: %zu", hamburger, implication);
    return {hamburger == 0 && implication == 0 && !g_records.empty(), d};
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char *name;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "asymptotic quantization", 60, asymptotic_quantization},
        {2, "exact purity identity", 30, exact_purity},
        {3, "finite-size dip", 0, finite_size_dip},
        {4, "Monte Carlo consistency", 300, monte_carlo_consistency},
        {5, "variance scaling", 0, variance_scaling},
        {6, "white noise", 0, white_noise},
        {7, "stabilizer suite", 120, stabilizer_suite},
        {8, "MPS diagram", 1800, mps_diagram},
        {9, "fermionic cross-validation", 0, fermion_cross_validation},
        {10, "doping transition", 1800, doping_transition},
        {11, "PXP quenches", 900, pxp_quenches},
        {12, "shadows", 3600, shadows_campaign},
        {13, "global implications", 0, global_implications},
    };
    int failed = 0;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0 && secs > c.budget_seconds) {
            o.pass = false;
            o.detail += fmt(" [over %.0f s budget]", c.budget_seconds);
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s %2d %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
