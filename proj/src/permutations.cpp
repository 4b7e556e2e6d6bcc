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

#include "ptm/permutations.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "ptm/errors.hpp"

namespace ptm::perm {

namespace {

std::vector<CycleProfile> build_profile(const Perm &alpha, const Perm &beta) {
    const int n = alpha.size();
    std::vector<int> tau(n);
    std::iota(tau.begin(), tau.end(), 0);
    std::vector<int> at(n);
    std::vector<int> bt(n);
    std::map<std::tuple<int, int, int>, std::uint64_t> counts;
    do {
        for (int i = 0; i < n; ++i) {
            at[i] = alpha(tau[i]);
            bt[i] = beta(tau[i]);
        }
        ++counts[{cycle_count(at.data(), n), cycle_count(bt.data(), n),
                  cycle_count(tau.data(), n)}];
    } while (std::next_permutation(tau.begin(), tau.end()));
    std::vector<CycleProfile> out;
    out.reserve(counts.size());
    for (const auto &[key, mult] : counts) {
        out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key),
                       mult});
    }
    return out;
}

} // namespace

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (int v : images_) {
        if (v < 0 || v >= static_cast<int>(images_.size()) || seen[v]) {
            throw ValidationError("Perm: images are not a bijection");
        }
        seen[v] = 1;
    }
}

Perm Perm::identity(int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    return Perm(std::move(img));
}

Perm Perm::cyclic(int n, int shift) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) {
        img[i] = ((i + shift) % n + n) % n;
    }
    return Perm(std::move(img));
}

Perm Perm::compose(const Perm &other) const {
    if (other.size() != size()) {
        throw ValidationError("Perm::compose: size mismatch");
    }
    std::vector<int> img(images_.size());
    for (int i = 0; i < size(); ++i) {
        img[i] = images_[other(i)];
    }
    return Perm(std::move(img));
}

Perm Perm::inverse() const {
    std::vector<int> img(images_.size());
    for (int i = 0; i < size(); ++i) {
        img[images_[i]] = i;
    }
    return Perm(std::move(img));
}

Perm Perm::direct_sum(const Perm &other) const {
    std::vector<int> img = images_;
    for (int i = 0; i < other.size(); ++i) {
        img.push_back(other(i) + size());
    }
    return Perm(std::move(img));
}

int cycle_count(const int *images, int n) {
    std::uint64_t seen_small = 0;
    std::vector<char> seen_big;
    const bool small = n <= 64;
    if (!small) {
        seen_big.assign(n, 0);
    }
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
        const bool visited =
            small ? ((seen_small >> i) & 1U) != 0 : seen_big[i] != 0;
        if (visited) {
            continue;
        }
        ++cycles;
        int j = i;
        do {
            if (small) {
                seen_small |= std::uint64_t{1} << j;
            } else {
                seen_big[j] = 1;
            }
            j = images[j];
        } while (j != i);
    }
    return cycles;
}

int cycle_count(const Perm &p) { return cycle_count(p.images().data(), p.size()); }

std::vector<Perm> enumerate(int n) {
    if (n < 0 || n > 10) {
        throw CapabilityError("perm::enumerate supports 0 <= n <= 10");
    }
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::vector<Perm> out;
    do {
        out.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

const std::vector<CycleProfile> &moment_profile(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<CycleProfile>> cache;
    if (n < 1 || n > 10) {
        throw CapabilityError("moment_profile supports 1 <= n <= 10");
    }
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache
                 .emplace(n, build_profile(Perm::cyclic(n, 1),
                                           Perm::cyclic(n, -1)))
                 .first;
    }
    return it->second;
}

const std::vector<CycleProfile> &product_profile(int n, int m) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<CycleProfile>> cache;
    if (n < 1 || m < 1 || n + m > 10) {
        throw CapabilityError("product_profile supports n, m >= 1, n+m <= 10");
    }
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, m});
    if (it == cache.end()) {
        const Perm alpha = Perm::cyclic(n, 1).direct_sum(Perm::cyclic(m, 1));
        const Perm beta = Perm::cyclic(n, -1).direct_sum(Perm::cyclic(m, -1));
        it = cache.emplace(std::make_pair(n, m), build_profile(alpha, beta))
                 .first;
    }
    return it->second;
}

} // namespace ptm::perm
