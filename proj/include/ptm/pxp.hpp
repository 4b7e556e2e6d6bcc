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
 * PXP chain on the Rydberg-blockade subspace: basis, Hamiltonian, quenches
 * and tripartition scans.
 */

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ptm/dense.hpp"

namespace ptm::pxp {

inline constexpr int kMaxChain = 16;

/// Open-chain bit strings without adjacent 1s; site 0 is the MSB.
class ConstrainedBasis {
  public:
    explicit ConstrainedBasis(int n);

    [[nodiscard]] int sites() const { return n_; }
    [[nodiscard]] Eigen::Index dim() const {
        return static_cast<Eigen::Index>(states_.size());
    }
    [[nodiscard]] std::uint32_t state(Eigen::Index i) const { return states_[i]; }
    /// Index of a full-space string, or -1 if it violates the constraint.
    [[nodiscard]] Eigen::Index index_of(std::uint32_t bits) const;
    [[nodiscard]] const std::vector<std::uint32_t> &states() const {
        return states_;
    }

  private:
    int n_;
    std::vector<std::uint32_t> states_;
    std::vector<std::int32_t> lookup_;
};

/// Fibonacci count d(N) = d(N-1) + d(N-2), d(1) = 2, d(2) = 3.
std::uint64_t constrained_dimension(int n);

/// H = Ω Σ_i P X_i P restricted to the basis.
Eigen::MatrixXd build_pxp(const ConstrainedBasis &basis, double omega = 1.0);

enum class InitialState { Z2, Polarized };

std::string_view to_string(InitialState s);
InitialState initial_state_from_string(std::string_view s);

/// |1010..⟩ (Z2) or |00..0⟩ (polarized).
std::uint32_t initial_bits(int n, InitialState s);

struct QuenchRun {
    int n = 0;
    InitialState initial = InitialState::Polarized;
    std::vector<double> times;
    /// Columns are snapshots in the constrained basis.
    Eigen::MatrixXcd snapshots;
    double energy = 0.0;
};

/// n uniformly spaced times in [t0, t1] (inclusive).
std::vector<double> uniform_times(double t0, double t1, int count);

/// e^{-iHt}|ψ_0⟩ by full diagonalization (Ω = 1).
QuenchRun evolve_quench(int n, InitialState initial,
                        const std::vector<double> &times);

/// Evolution from an arbitrary basis string.
QuenchRun evolve_from_bits(int n, std::uint32_t bits,
                           const std::vector<double> &times);

/// Snapshot j mapped into the full 2^N space.
dense::Vector embed(const ConstrainedBasis &basis, const Eigen::VectorXcd &coeffs);

/// Von Neumann entropy (base 2) of sites [0, cut).
double entanglement_entropy(const dense::Vector &psi, int n, int cut);

struct TripartitionRow {
    Tripartition partition;
    double mean_negativity = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
    double p4 = 0.0;
    double r2_tilde = 0.0;
    int snapshots = 0;
};

/// Contiguous [A|B|C] with N_A, N_B ≥ 1, N_C ≥ 0, in (N_C, N_A) order.
std::vector<Tripartition> contiguous_tripartitions(int n);

/// Placement of C on the chain: one block after B, or ⌈N_C/2⌉ sites before A
/// and ⌊N_C/2⌋ after B.
enum class ChainLayout { Block, Split };

std::string_view to_string(ChainLayout l);
ChainLayout chain_layout_from_string(std::string_view s);

/// Reorders the qubits of a chain state so that A, B, C are consecutive.
dense::PureState chain_state(const dense::Vector &psi, const Tripartition &t,
                             ChainLayout layout);

/**
 * @brief Time-averaged negativity and moments over the snapshots with times
 * in [t_lo, t_hi]; r̃₂ from the averaged moments.
 */
std::vector<TripartitionRow> tripartition_scan(const QuenchRun &run, double t_lo,
                                               double t_hi,
                                               ChainLayout layout = ChainLayout::Block);

} // namespace ptm::pxp
