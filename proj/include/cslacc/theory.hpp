// SPDX-License-Identifier: Apache-2.0
//
// cslacc: compressive subspace learning with antenna cross-correlations
// Copyright (C) 2026 The cslacc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef CSLACC_THEORY_HPP
#define CSLACC_THEORY_HPP

#include "cslacc/csl.hpp"
#include "cslacc/numerics.hpp"
#include "cslacc/scenario.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace cslacc
{
    // Cross-correlation block between antennas i..j and i+r..j+r (1-based)
    struct CorrelationBlock
    {
        ComplexMatrix t;
        std::size_t i = 1, j = 1, m = 1;
        int r = 0;
        Complex rho{0.0, 0.0};
    };

    struct Bounds
    {
        double lower = 0.0;
        double upper = 0.0;
    };

    struct TraceBound
    {
        double sqrt_trace_avg = 0.0; // sqrt(trace(T^H T) / (s + 1)), s = j - i - r
        double sigma_max = 0.0;
    };

    enum class TheoryQuantity
    {
        gain_mcslacc,
        gain_mcslsacc,
        bounds_zero_shift,
        trace_bound,
        bounds_noise_free
    };

    std::string_view to_string(TheoryQuantity q) noexcept;

    // One closed form against its oracle; absent values are NaN
    struct AmplificationReport
    {
        TheoryQuantity kind = TheoryQuantity::gain_mcslacc;
        std::size_t m = 0, i = 0, j = 0;
        int r = 0;
        Complex rho{0.0, 0.0};
        double formula_value = 0.0;
        double oracle_value = 0.0;
        double lower_bound = 0.0;
        double upper_bound = 0.0;
        bool passed = false;
        double delta = 0.0;
    };

    struct ScmRelationReport
    {
        Algorithm algorithm;
        ComplexMatrix empirical_mean_scm;
        ComplexMatrix predicted;
        double relative_error = 0.0; // against the prediction norm, or the zero-shift scale if it vanishes
        double absolute_error = 0.0;
        std::size_t n_channel_draws = 0;
    };

    struct VectorFormPrediction
    {
        RealVector spectrum;         // sorted non-increasing
        RealVector signal_part;      // Kronecker order, sv(T) (x) sv(R_sa)
        RealVector equivalent_noise; // Kronecker order, total minus signal part
        RealVector noise_bound;      // Kronecker order, noise^2 / total
    };

    CorrelationBlock correlation_block(std::size_t i, std::size_t j, int r, Complex rho, std::size_t m);

    // Same block built from products of Hermitian-root rows
    ComplexMatrix correlation_block_from_root(std::size_t i, std::size_t j, int r, Complex rho, std::size_t m);

    double gain_mcslacc(std::size_t i, std::size_t j, int r, Complex rho);
    double gain_mcslacc_oracle(std::size_t i, std::size_t j, int r, Complex rho, std::size_t m);

    double gain_mcslsacc(std::size_t i, std::size_t j, std::size_t m, Complex rho);
    double gain_mcslsacc_oracle(std::size_t i, std::size_t j, std::size_t m, Complex rho);

    Bounds bounds_vcslacc_r0(std::size_t i, std::size_t j, Complex rho);
    TraceBound trace_bound_vcslacc(std::size_t i, std::size_t j, int r, Complex rho);
    Bounds bounds_vcslacc_noisefree(std::size_t i, std::size_t j, int r, Complex rho);

    double sigma_max(const ComplexMatrix &t);

    // Predicted SCM spectrum of the matrix form from the reference spectrum;
    // noise_power is the folded noise of the sub-array, added only at r = 0
    RealVector singular_relation_matrixform(std::size_t i, std::size_t j, int r, Complex rho, std::size_t m,
                                            const RealVector &rsa_spectrum, double noise_power = 0.0);

    // noise_power: diagonal of the squared noise spectrum in Kronecker order (empty when noise-free)
    VectorFormPrediction singular_relation_vectorform(const CorrelationBlock &block, const RealVector &rsa_spectrum,
                                                      const RealVector &noise_power = RealVector());

    // Squared noise spectrum of the vector form: (w - r) blocks of (folded power)^2 then r zero blocks
    RealVector vectorform_noise_power(std::size_t width, int r, std::size_t p, double folded_power);

    // Mean over channel draws of the signal-expected SCM against its closed-form expectation
    ScmRelationReport validate_scm_expectation(const Algorithm &algorithm, const ScenarioConfig &cfg,
                                               std::size_t i, std::size_t j, std::size_t n_channel_draws);

    AmplificationReport check_gain_mcslacc(std::size_t i, std::size_t j, int r, Complex rho, std::size_t m);
    AmplificationReport check_gain_mcslsacc(std::size_t i, std::size_t j, std::size_t m, Complex rho);
    AmplificationReport check_bounds_zero_shift(std::size_t i, std::size_t j, Complex rho, std::size_t m);
    AmplificationReport check_trace_bound(std::size_t i, std::size_t j, int r, Complex rho, std::size_t m);
    AmplificationReport check_bounds_noise_free(std::size_t i, std::size_t j, int r, Complex rho, std::size_t m);

    struct TheoryGrid
    {
        std::size_t max_antennas = 12;
        std::vector<double> rho_abs;   // default 0, 0.05, ..., 0.95
        std::vector<double> rho_phase; // default 0, pi/7, pi/3
    };

    TheoryGrid default_theory_grid();

    // Every applicable check at every grid point
    std::vector<AmplificationReport> sweep_theory_grid(const TheoryGrid &grid);

    // Strict decrease of sigma_max(T) in r for rho != 0; returns the failing (m, i, j, r, rho) points
    struct MonotonicityFailure
    {
        std::size_t m, i, j;
        int r;
        Complex rho;
        double relative_margin;
    };
    std::vector<MonotonicityFailure> check_shift_monotonicity(const TheoryGrid &grid, double min_relative_margin = 1e-12);

    // Gains and bounds against |rho| on the six-antenna array used by the simulations
    std::vector<AmplificationReport> sweep_gain_vs_rho();
    // Gains and bounds against the sub-array width j - i + 1
    std::vector<AmplificationReport> sweep_gain_vs_width();
}

#endif
