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

#include "ptm/ensembles.hpp"

#include <cmath>
#include <limits>

#include "ptm/fermion_gaussian.hpp"
#include "ptm/mps.hpp"
#include "ptm/stabilizer.hpp"

namespace ptm::ensembles {

namespace {

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

stats::SampleRecord pxp_record(const pxp::QuenchRun &run, std::size_t k,
                               const Tripartition &t, pxp::ChainLayout layout) {
    const pxp::ConstrainedBasis basis(run.n);
    dense::Vector v = pxp::embed(basis, run.snapshots.col(static_cast<Eigen::Index>(k)));
    v.normalize();
    const dense::PureState ps = pxp::chain_state(v, t, layout);
    return stats::SampleRecord::from(
        dense::quantities(dense::negativity_spectrum(ps)));
}

} // namespace

std::string_view to_string(Family f) {
    switch (f) {
    case Family::Haar:
        return "haar";
    case Family::NoisyHaar:
        return "noisy-haar";
    case Family::Stabilizer:
        return "stabilizer";
    case Family::RandomMps:
        return "rmps";
    case Family::Fermion:
        return "fermion";
    case Family::DopedMatchgate:
        return "doped-mg";
    case Family::PxpWindow:
        return "pxp-window";
    }
    return "?";
}

Family family_from_string(std::string_view s) {
    for (Family f : {Family::Haar, Family::NoisyHaar, Family::Stabilizer,
                     Family::RandomMps, Family::Fermion, Family::DopedMatchgate,
                     Family::PxpWindow}) {
        if (to_string(f) == s) {
            return f;
        }
    }
    throw ValidationError("unknown ensemble family '" + std::string(s) + "'");
}

dense::PureState sample_haar_state(const Tripartition &layout, rng::Engine &eng) {
    if (layout.n() > dense::kMaxStateQubits) {
        throw CapabilityError("sample_haar_state: " + std::to_string(layout.n()) +
                              " qubits exceed the dense limit");
    }
    return dense::PureState::normalized(
        rng::complex_normal_vector(
            static_cast<Eigen::Index>(Tripartition::dim(layout.n())), eng),
        layout);
}

std::vector<stats::SampleRecord> sample_ensemble(const EnsembleSpec &spec) {
    if (spec.count < 1) {
        throw ValidationError("run_ensemble: count must be >= 1");
    }
    const Tripartition &t = spec.partition;
    const FamilyParams &p = spec.params;
    const std::uint64_t seed = spec.seed;
    switch (spec.family) {
    case Family::Haar:
        return stats::collect(spec.count, [&](std::uint64_t i) {
            rng::Engine eng = rng::stream(seed, i);
            return stats::SampleRecord::from(
                dense::quantities(dense::negativity_spectrum(sample_haar_state(t, eng))));
        });
    case Family::NoisyHaar:
        return stats::collect(spec.count, [&](std::uint64_t i) {
            rng::Engine eng = rng::stream(seed, i);
            const auto rho = dense::depolarize(
                dense::reduce_to_ab(sample_haar_state(t, eng)), p.epsilon);
            return stats::SampleRecord::from(
                dense::quantities(dense::negativity_spectrum(rho)));
        });
    case Family::Stabilizer:
        return stats::collect(spec.count, [&](std::uint64_t i) {
            rng::Engine eng = rng::stream(seed, i);
            const auto triple = stabilizer::random_triple(t, eng);
            const MomentSet m = stabilizer::stab_pt_moments(triple);
            return stats::SampleRecord::from_moments(m.value(2), m.value(3),
                                                     m.value(4), triple.e_ab);
        });
    case Family::RandomMps: {
        const mps::MpsLayout layout = mps::MpsLayout::centered(t);
        return stats::collect(spec.count, [&](std::uint64_t i) {
            rng::Engine eng = rng::stream(seed, i);
            const auto st = mps::sample_rmps(t.n(), p.chi, eng);
            return mps::sample_record(st, layout, p.with_negativity);
        });
    }
    case Family::Fermion:
        return stats::collect(spec.count, [&](std::uint64_t i) {
            rng::Engine eng = rng::stream(seed, i);
            return fermion::gaussian_sample(t, eng);
        });
    case Family::DopedMatchgate:
        return stats::collect(spec.count, [&](std::uint64_t i) {
            rng::Engine eng = rng::stream(seed, i);
            return fermion::doped_sample(t, p.n_swap, eng);
        });
    case Family::PxpWindow: {
        const auto times = pxp::uniform_times(p.t_lo, p.t_hi, spec.count);
        const auto run = pxp::evolve_quench(t.n(), p.initial, times);
        return stats::collect(spec.count, [&](std::uint64_t i) {
            return pxp_record(run, static_cast<std::size_t>(i), t, p.layout);
        });
    }
    }
    throw ValidationError("run_ensemble: unknown family");
}

stats::EnsembleStats run_ensemble(const EnsembleSpec &spec) {
    const auto samples = sample_ensemble(spec);
    return stats::summarize(samples, spec.seed);
}

std::vector<ScanRow> phase_diagram_scan(Family family, const FamilyParams &params,
                                        const std::vector<Tripartition> &grid,
                                        int count, std::uint64_t seed) {
    std::vector<ScanRow> rows;
    rows.reserve(grid.size());
    for (const auto &t : grid) {
        EnsembleSpec spec;
        spec.family = family;
        spec.partition = t;
        spec.count = count;
        spec.seed = seed;
        spec.params = params;
        rows.push_back({t, run_ensemble(spec)});
    }
    return rows;
}

Method method_from_string(std::string_view s) {
    if (s == "exact") {
        return Method::Exact;
    }
    if (s == "leading") {
        return Method::LeadingOrder;
    }
    if (s == "asymptotic") {
        return Method::Asymptotic;
    }
    throw ValidationError("unknown method '" + std::string(s) + "'");
}

std::vector<AnalyticRow> analytic_scan(const std::vector<Tripartition> &grid,
                                       Method method, double epsilon) {
    std::vector<AnalyticRow> rows(grid.size(),
                                  AnalyticRow{grid.empty() ? Tripartition(1, 0, 0)
                                                           : grid[0],
                                              haar::Phase::Boundary,
                                              MomentSet{}});
    stats::parallel_for(static_cast<int>(grid.size()), [&](int i) {
        const Tripartition &t = grid[static_cast<std::size_t>(i)];
        AnalyticRow row{t, haar::classify_phase(t), MomentSet{}};
        switch (method) {
        case Method::Exact:
            row.moments = haar::exact_mean_moments(t, 4);
            break;
        case Method::LeadingOrder:
            row.moments = haar::leading_order_mean_moments(t, 4);
            break;
        case Method::Asymptotic:
            row.moments = haar::asymptotic_mean_moments(t, 4);
            break;
        }
        if (epsilon > 0.0) {
            row.moments = haar::white_noise_moments(row.moments, epsilon, t.n_ab());
        }
        row.r2_tilde = haar::tilde_r(2, row.moments);
        row.e3_tilde = row.moments.at(3).sign() > 0 ? haar::tilde_e3(row.moments)
                                                    : nan();
        rows[static_cast<std::size_t>(i)] = std::move(row);
    });
    return rows;
}

std::vector<Tripartition> full_grid(int n_ab, int nc_max) {
    if (n_ab < 2 || nc_max < 0) {
        throw ValidationError("full_grid: need n_ab >= 2 and nc_max >= 0");
    }
    std::vector<Tripartition> out;
    for (int nc = 0; nc <= nc_max; ++nc) {
        for (int na = 1; na < n_ab; ++na) {
            out.emplace_back(na, n_ab - na, nc);
        }
    }
    return out;
}

std::vector<Tripartition> fraction_grid(int n_ab, int rows, int cols,
                                        double max_fraction) {
    if (n_ab < 2 || rows < 1 || cols < 1 || !(max_fraction >= 0.0 &&
                                              max_fraction < 1.0)) {
        throw ValidationError("fraction_grid: invalid arguments");
    }
    std::vector<Tripartition> out;
    for (int j = 0; j < cols; ++j) {
        const double f = cols == 1 ? 0.0 : max_fraction * j / (cols - 1);
        const int nc = static_cast<int>(std::lround(f * n_ab / (1.0 - f)));
        for (int i = 1; i <= rows; ++i) {
            int na = static_cast<int>(std::lround(static_cast<double>(i) * n_ab /
                                                  (rows + 1)));
            na = std::clamp(na, 1, n_ab - 1);
            out.emplace_back(na, n_ab - na, nc);
        }
    }
    return out;
}

} // namespace ptm::ensembles
