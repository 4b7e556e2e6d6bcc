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

#include "ptm/stats.hpp"

#include <algorithm>

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ptm::stats {

namespace {

std::atomic<int> g_threads{0};

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

template <class E> void rethrow_as(const std::string &ctx, const Error &e) {
    if (dynamic_cast<const E *>(&e) != nullptr) {
        throw E(ctx + e.what());
    }
}

[[noreturn]] void rethrow_with_context(const std::string &ctx, const Error &e) {
    rethrow_as<CapabilityError>(ctx, e);
    rethrow_as<ValidationError>(ctx, e);
    rethrow_as<SingularInputError>(ctx, e);
    rethrow_as<NumericError>(ctx, e);
    rethrow_as<UnsupportedLayoutError>(ctx, e);
    throw Error(ctx + e.what());
}

} // namespace

std::string_view to_string(Quantity q) {
    switch (q) {
    case Quantity::P2:
        return "p2";
    case Quantity::P3:
        return "p3";
    case Quantity::P4:
        return "p4";
    case Quantity::R2:
        return "r2";
    case Quantity::Negativity:
        return "negativity";
    case Quantity::E3:
        return "e3";
    }
    return "?";
}

SampleRecord SampleRecord::from(const dense::StateQuantities &q) {
    SampleRecord r;
    r.values = {q.p2, q.p3, q.p4, q.r2, q.negativity, q.e3};
    return r;
}

SampleRecord SampleRecord::from_moments(double p2, double p3, double p4,
                                        double negativity) {
    SampleRecord r;
    const double e3 = p3 > 0.0 ? 0.5 * std::log2(p2 * p2 / p3) : nan();
    r.values = {p2, p3, p4, p2 * p3 / p4, negativity, e3};
    return r;
}

EnsembleStats summarize(std::span<const SampleRecord> samples,
                        std::uint64_t seed) {
    if (samples.empty()) {
        throw ValidationError("summarize: no samples");
    }
    EnsembleStats st;
    st.count = static_cast<int>(samples.size());
    st.seed = seed;
    const double k = static_cast<double>(samples.size());
    for (int q = 0; q < kQuantityCount; ++q) {
        double s = 0.0;
        for (const auto &r : samples) {
            s += r.values[q];
        }
        st.mean[q] = s / k;
    }
    for (int q = 0; q < kQuantityCount; ++q) {
        for (int p = 0; p < kQuantityCount; ++p) {
            double s = 0.0;
            for (const auto &r : samples) {
                s += (r.values[q] - st.mean[q]) * (r.values[p] - st.mean[p]);
            }
            st.covariance(q, p) = samples.size() > 1 ? s / (k - 1.0) : 0.0;
        }
        st.variance[q] = st.covariance(q, q);
        st.std_error[q] = std::sqrt(st.variance[q] / k);
    }
    std::vector<std::vector<double>> cols(3);
    for (const auto &r : samples) {
        cols[0].push_back(r[Quantity::P2]);
        cols[1].push_back(r[Quantity::P3]);
        cols[2].push_back(r[Quantity::P4]);
    }
    st.r2_tilde = jackknife(cols, [](std::span<const double> m) {
        return m[0] * m[1] / m[2];
    });
    cols.pop_back();
    st.e3_tilde = jackknife(cols, [](std::span<const double> m) {
        return m[1] > 0.0 ? 0.5 * std::log2(m[0] * m[0] / m[1]) : nan();
    });
    return st;
}

Estimate jackknife(const std::vector<std::vector<double>> &columns,
                   const std::function<double(std::span<const double>)> &stat) {
    if (columns.empty() || columns[0].empty()) {
        throw ValidationError("jackknife: no data");
    }
    const std::size_t nv = columns.size();
    const std::size_t k = columns[0].size();
    std::vector<double> sums(nv, 0.0);
    for (std::size_t v = 0; v < nv; ++v) {
        if (columns[v].size() != k) {
            throw ValidationError("jackknife: ragged columns");
        }
        for (double x : columns[v]) {
            sums[v] += x;
        }
    }
    std::vector<double> means(nv);
    std::vector<bool> constant(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        constant[v] = std::all_of(columns[v].begin(), columns[v].end(),
                                  [&](double x) { return x == columns[v][0]; });
        means[v] = constant[v] ? columns[v][0] : sums[v] / static_cast<double>(k);
    }
    const double full = stat(means);
    if (k == 1) {
        return {full, 0.0};
    }
    std::vector<double> loo(k);
    std::vector<double> part(nv);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t v = 0; v < nv; ++v) {
            part[v] = constant[v] ? means[v]
                                  : (sums[v] - columns[v][j]) / static_cast<double>(k - 1);
        }
        loo[j] = stat(part);
    }
    return jackknife_from_leave_one_out(full, loo);
}

Estimate jackknife_from_leave_one_out(double full,
                                      std::span<const double> leave_one_out) {
    const std::size_t k = leave_one_out.size();
    if (k < 2 || std::all_of(leave_one_out.begin(), leave_one_out.end(),
                             [&](double x) { return x == leave_one_out[0]; })) {
        return {full, 0.0};
    }
    double mean = 0.0;
    for (double x : leave_one_out) {
        mean += x;
    }
    mean /= static_cast<double>(k);
    double ss = 0.0;
    for (double x : leave_one_out) {
        ss += (x - mean) * (x - mean);
    }
    const double var = ss * static_cast<double>(k - 1) / static_cast<double>(k);
    return {full, std::sqrt(var)};
}

void set_threads(int threads) { g_threads = threads < 0 ? 0 : threads; }

int threads() {
#ifdef _OPENMP
    return g_threads > 0 ? g_threads.load() : omp_get_max_threads();
#else
    return 1;
#endif
}

void parallel_for(int count, const std::function<void(int)> &f) {
    std::exception_ptr err;
    int err_index = count;
    std::mutex mu;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads())
#endif
    for (int i = 0; i < count; ++i) {
        try {
            f(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (i < err_index) {
                err = std::current_exception();
                err_index = i;
            }
        }
    }
    if (err) {
        std::rethrow_exception(err);
    }
}

std::vector<SampleRecord>
collect(int count, const std::function<SampleRecord(std::uint64_t)> &f) {
    if (count < 1) {
        throw ValidationError("collect: count must be >= 1");
    }
    std::vector<SampleRecord> out(static_cast<std::size_t>(count));
    parallel_for(count, [&](int i) {
        try {
            out[static_cast<std::size_t>(i)] = f(static_cast<std::uint64_t>(i));
        } catch (const Error &e) {
            rethrow_with_context("sample " + std::to_string(i) + ": ", e);
        }
    });
    return out;
}

} // namespace ptm::stats
