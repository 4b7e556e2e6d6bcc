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
 * Dense state vectors and density matrices: partial trace, partial
 * transpose, negativity spectra, PT moments and detection functionals.
 */

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ptm/core.hpp"

namespace ptm::dense {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest N_AB for which a dense ρ_AB is built.
inline constexpr int kMaxDensityQubits = 14;
/// Largest total qubit count for dense state vectors.
inline constexpr int kMaxStateQubits = 26;

/// Tolerance on Hermiticity and trace of a DensityMatrix.
inline constexpr double kMatrixTolerance = 1e-12;
/// Relative tolerance applied to the inequality tests of detect().
inline constexpr double kDetectionTolerance = 1e-12;

/// Unit-norm amplitudes over N = N_A + N_B + N_C qubits.
class PureState {
  public:
    /// @throws ValidationError on wrong length or norm off by > 1e-12.
    PureState(Vector amplitudes, Tripartition layout);

    static PureState normalized(Vector amplitudes, Tripartition layout);

    [[nodiscard]] const Vector &amplitudes() const { return amps_; }
    [[nodiscard]] const Tripartition &layout() const { return layout_; }

  private:
    Vector amps_;
    Tripartition layout_;
};

/// Hermitian, unit-trace matrix on N_A + N_B qubits (A most significant).
class DensityMatrix {
  public:
    /// Validates and then stores the Hermitian part of `m`.
    DensityMatrix(const Matrix &m, int n_a, int n_b);

    [[nodiscard]] const Matrix &matrix() const { return m_; }
    [[nodiscard]] int n_a() const { return n_a_; }
    [[nodiscard]] int n_b() const { return n_b_; }
    [[nodiscard]] int n_ab() const { return n_a_ + n_b_; }
    [[nodiscard]] Eigen::Index dim() const { return m_.rows(); }

    /// Smallest eigenvalue ≥ -tol.
    [[nodiscard]] bool is_positive(double tol = 1e-10) const;

  private:
    Matrix m_;
    int n_a_;
    int n_b_;
};

/**
 * @brief Reduced state on the qubits `keep` (in the given order). The first
 * n_a kept qubits form A of the result.
 */
DensityMatrix partial_trace(const PureState &s, std::span<const int> keep,
                            int n_a);
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep,
                            int n_a);

/// ρ_AB = tr_C |ψ⟩⟨ψ| for the state's own layout.
DensityMatrix reduce_to_ab(const PureState &s);

/// Transpose on the trailing n_b qubits.
Matrix partial_transpose(const Matrix &m, int n_a, int n_b);
Matrix partial_transpose(const DensityMatrix &rho);

/// Ascending eigenvalues of ρ^Γ.
struct NegativitySpectrum {
    std::vector<double> lambdas;
};

NegativitySpectrum negativity_spectrum(const DensityMatrix &rho);

/**
 * @brief Spectrum of ρ_AB^Γ for a pure state; when N_C = 0 it is built from
 * the Schmidt coefficients without forming ρ_AB.
 */
NegativitySpectrum negativity_spectrum(const PureState &s);

MomentSet pt_moments(const NegativitySpectrum &spec, int nmax);
MomentSet pt_moments(const DensityMatrix &rho, int nmax);

/// log2 Σ|λ_i|.
double negativity(const NegativitySpectrum &spec);
double negativity(const DensityMatrix &rho);

/// p_2 p_3 / p_4.
double r2(const MomentSet &m);
double r_n(const MomentSet &m, int n);

/// ½ log2(p_2² / p_3); NaN when p_3 ≤ 0.
double e3(const MomentSet &m);

struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> density;
    std::size_t outside = 0;
};

struct RescaledSpectrum {
    std::vector<double> epsilons;
    Histogram histogram;
    bool scaled = false;
};

/**
 * @brief ε_i = λ_i²/p_3 and a density histogram of λ_i/√p_3. For p_3 ≤ 0
 * the unscaled λ_i² and λ_i are returned with scaled = false.
 */
RescaledSpectrum rescaled_spectrum(const NegativitySpectrum &spec, double p3,
                                   int bins = 81, double lo = -2.0,
                                   double hi = 2.0);

struct DetectionReport {
    double alpha2 = 0.0;
    bool r2_violated = false;
    bool p3_ppt_violated = false;
    double e3 = 0.0;
    double negativity = 0.0;
};

DetectionReport detect(const NegativitySpectrum &spec);
DetectionReport detect(const DensityMatrix &rho);

/// (1-ε)ρ + ε 1/L_AB.
DensityMatrix depolarize(const DensityMatrix &rho, double epsilon);

/// Per-state quantities used by the ensembles.
struct StateQuantities {
    double p2 = 0.0;
    double p3 = 0.0;
    double p4 = 0.0;
    double r2 = 0.0;
    double negativity = 0.0;
    double e3 = 0.0;
};

StateQuantities quantities(const NegativitySpectrum &spec);

/// tr ρ².
double purity(const DensityMatrix &rho);

} // namespace ptm::dense
