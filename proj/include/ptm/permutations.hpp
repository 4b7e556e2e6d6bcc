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

/**
 * @file
 * Permutations of {0..n-1} and cached cycle-count histograms used by the
 * Haar averages.
 */

#pragma once

#include <cstdint>
#include <vector>

namespace ptm::perm {

/// Bijection of {0..n-1} stored by its images.
class Perm {
  public:
    explicit Perm(std::vector<int> images);

    static Perm identity(int n);
    /// i -> i+1 mod n (shift = +1) or i -> i-1 mod n (shift = -1).
    static Perm cyclic(int n, int shift);

    [[nodiscard]] int size() const { return static_cast<int>(images_.size()); }
    [[nodiscard]] int operator()(int i) const { return images_[i]; }
    [[nodiscard]] const std::vector<int> &images() const { return images_; }

    /// (this ∘ other)(i) = this(other(i)).
    [[nodiscard]] Perm compose(const Perm &other) const;
    [[nodiscard]] Perm inverse() const;
    /// Acts as this on the first size() points and as other on the rest.
    [[nodiscard]] Perm direct_sum(const Perm &other) const;

    bool operator==(const Perm &) const = default;

  private:
    std::vector<int> images_;
};

/// Number of cycles, fixed points included.
int cycle_count(const Perm &p);
int cycle_count(const int *images, int n);

/// All n! permutations in lexicographic order of their image arrays.
std::vector<Perm> enumerate(int n);

/**
 * @brief Multiplicity of a triple of cycle counts
 * (c(α∘τ), c(β∘τ), c(τ)) over τ ∈ S_n.
 */
struct CycleProfile {
    int c_a;
    int c_b;
    int c_c;
    std::uint64_t multiplicity;
};

/// Histogram over S_n with α = σ₊ and β = σ₋ (cached, thread safe).
const std::vector<CycleProfile> &moment_profile(int n);

/// Histogram over S_{n+m} with α = σ₊⊕σ₊ and β = σ₋⊕σ₋ (cached).
const std::vector<CycleProfile> &product_profile(int n, int m);

} // namespace ptm::perm
