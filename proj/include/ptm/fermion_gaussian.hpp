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
 * Fermionic Gaussian states: covariance matrices, the two-Gaussian partial
 * transpose, PT moments, matchgate circuits and a dense Jordan-Wigner
 * oracle.
 *
 * Majoranas follow c_{2k} = Z..Z X_k and c_{2k+1} = Z..Z Y_k (0-based) with
 * mode k on qubit k, and G_jk = ½ tr(ρ[c_j, c_k]).
 */

#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ptm/dense.hpp"
#include "ptm/pfaffian.hpp"
#include "ptm/random_matrices.hpp"
#include "ptm/stats.hpp"

namespace ptm::fermion {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Largest mode count accepted by the dense oracle.
inline constexpr int kMaxDenseModes = 20;

class CovarianceMatrix {
  public:
    /// @throws ValidationError unless square, even-sized and antisymmetric.
    explicit CovarianceMatrix(ComplexMatrix g);

    [[nodiscard]] const ComplexMatrix &matrix() const { return g_; }
    [[nodiscard]] int modes() const { return static_cast<int>(g_.rows() / 2); }
    /// ‖G² - 1‖_max ≤ tol.
    [[nodiscard]] bool is_pure(double tol = 1e-8) const;

  private:
    ComplexMatrix g_;
};

/// Blocks [[0, i], [-i, 0]] per mode (the state |0..0⟩).
CovarianceMatrix vacuum_covariance(int n_modes);

/// Haar SO(dim) (even dim).
RealMatrix sample_special_orthogonal(int dim, rng::Engine &eng);

/// R G Rᵀ.
CovarianceMatrix rotate(const CovarianceMatrix &g, const RealMatrix &r);

struct ModeSplit {
    int n_a = 0;
    int n_b = 0;
};

struct RestrictedPair {
    CovarianceMatrix gprime;
    ComplexMatrix gplus;
};

/**
 * @brief G' on the kept modes and G⁺ = [[G'_AA, iG'_AB], [iG'_BA, -G'_BB]].
 * `keep` lists n_a + n_b consecutive modes, A first.
 * @throws UnsupportedLayoutError for non-contiguous modes.
 */
RestrictedPair restrict_and_gplus(const CovarianceMatrix &g, ModeSplit split,
                                  std::span<const int> keep);

/// Kept modes 0..n_a+n_b-1.
RestrictedPair restrict_and_gplus(const CovarianceMatrix &g, ModeSplit split);

/**
 * @brief tr(O_1 ⋯ O_k) for unit-trace Gaussian operators given by their
 * covariance matrices (possibly complex, possibly with eigenvalues ±1).
 *
 * Uses tr = 2^{-n(k-1)} Pf(C⊗1 - diag(Ĝ)) / Pf(C⊗1), where C is the Cayley
 * transform of the antiperiodic cyclic shift and Ĝ the reversed, shifted
 * list; odd k is padded with the maximally mixed operator.
 */
linalg::LogComplex trace_product(std::span<const ComplexMatrix> kernels);

/// Unit-trace Gaussian operator with an explicit prefactor.
struct GaussianOp {
    std::complex<double> prefactor = 1.0;
    ComplexMatrix kernel;
};

/// tr(Π_i prefactor_i O_i).
std::complex<double> trace_product(std::span<const GaussianOp> ops);

struct GaussianMoments {
    double p2 = 0.0;
    double p3 = 0.0;
    double p4 = 0.0;
    /// Largest |Im p_n| / |p_n| before taking real parts.
    double max_relative_imag = 0.0;
};

/**
 * @brief p_2..p_4 of ρ^Γ = ((1-i)/2) O₊ + ((1+i)/2) O₋ by full expansion,
 * with O₊ of covariance G⁺ and O₋ = O₊†.
 */
GaussianMoments gaussian_pt_moments(const CovarianceMatrix &gprime,
                                    ModeSplit split);

/// Same moments from the reduced trace combinations with O₊, O₋ only.
GaussianMoments gaussian_pt_moments_reduced(const CovarianceMatrix &gprime,
                                            ModeSplit split);

// Matchgates and circuits ----------------------------------------------------

using Gate4 = Eigen::Matrix4cd;

/// u on {|00⟩,|11⟩} and v on {|01⟩,|10⟩} with det u = det v.
struct MatchgateSpec {
    Eigen::Matrix2cd u;
    Eigen::Matrix2cd v;

    [[nodiscard]] Gate4 matrix() const;
};

/// Haar u, v with v rescaled by a phase so that det v = det u.
MatchgateSpec random_matchgate(rng::Engine &eng);

Gate4 swap_gate();

struct Gate {
    int site = 0;
    bool is_swap = false;
    Gate4 matrix;
};

struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;
};

/**
 * @brief 3N brickwork layers of nearest-neighbour gates (pairs (0,1),(2,3)..
 * on even layers, (1,2),(3,4).. on odd ones); n_swap positions chosen
 * uniformly without replacement are SWAPs, the rest random matchgates.
 */
Circuit brickwork_circuit(int n_qubits, int n_swap, rng::Engine &eng);

/// Number of gates of brickwork_circuit(n, ·).
int brickwork_gate_count(int n_qubits);

/// Applies the circuit to a dense state vector.
dense::Vector apply_circuit(const Circuit &c, dense::Vector state);

/// R with g† c_i g = Σ_j R_ij c_j for a two-qubit gate.
RealMatrix gate_rotation(const Gate4 &g);

/// R = R_L ⋯ R_1 for a matchgate-only circuit.
RealMatrix circuit_rotation(const Circuit &c);

// Dense oracle ---------------------------------------------------------------

/// c_j |ψ⟩ for the JW Majorana c_j on n modes.
dense::Vector apply_majorana(const dense::Vector &psi, int j, int n_modes);

/// ½⟨ψ|[c_i, c_j]|ψ⟩.
CovarianceMatrix dense_covariance(const dense::Vector &psi, int n_modes);

/// Ground state of Σ_jk G_jk c_j c_k, the pure Gaussian state with
/// covariance G.
dense::Vector dense_gaussian_state(const CovarianceMatrix &g);

/// |0..0⟩ evolved by the circuit.
dense::Vector dense_circuit_state(const Circuit &c);

/// ρ_AB of a dense state on modes [A|B|C].
dense::DensityMatrix dense_fermion_oracle(const dense::Vector &psi,
                                          const Tripartition &t);

// Ensembles ------------------------------------------------------------------

/// Haar SO(2N) rotations of the vacuum; AB are the first N_AB modes.
stats::SampleRecord gaussian_sample(const Tripartition &t, rng::Engine &eng);

stats::EnsembleStats gaussian_ensemble(const Tripartition &t, int k,
                                       std::uint64_t seed);

/// Dense simulation of SWAP-doped brickwork circuits on N = N_A+N_B+N_C.
stats::SampleRecord doped_sample(const Tripartition &t, int n_swap,
                                 rng::Engine &eng);

stats::EnsembleStats doped_circuit_ensemble(const Tripartition &t, int n_swap,
                                            int k, std::uint64_t seed);

} // namespace ptm::fermion
