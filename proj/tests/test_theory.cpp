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

// Covered tests:
// - correlation_block: both constructions, scalar and rank-one cases
// - gain_mcslacc / gain_mcslsacc against their column-product oracles, boundary values
// - zero-shift bounds, trace bound, noise-free bounds with frozen reference values
// - singular relations for matrix and vector forms
// - validate_scm_expectation on a small configuration
// - grid sweeps and shift monotonicity

#include <catch_amalgamated.hpp>
#include "cslacc/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace cslacc;
using Catch::Matchers::WithinAbs;

namespace
{
    // Independent reference: sum over the sub-array of Q entries (u, u + r)
    double diagonal_sum_abs(std::size_t i, std::size_t j, int r, Complex rho, std::size_t m)
    {
        const ComplexMatrix q = build_exponential_correlation(m, rho).matrix;
        Complex acc = 0.0;
        for (std::size_t u = i; u <= j; ++u)
            acc += q(Eigen::Index(u - 1), Eigen::Index(long(u) - 1 + r));
        return std::abs(acc);
    }
}

TEST_CASE("correlation_block - constructions agree")
{
    const Complex rho = std::polar(0.7, std::numbers::pi / 3.0);
    for (std::size_t m = 2; m <= 8; ++m)
        for (std::size_t i = 1; i <= m; ++i)
            for (std::size_t j = i; j <= m; ++j)
                for (int r = 0; j + std::size_t(r) <= m; ++r)
                {
                    const CorrelationBlock b = correlation_block(i, j, r, rho, m);
                    CHECK((b.t - correlation_block_from_root(i, j, r, rho, m)).norm() < 1e-10);
                }

    const CorrelationBlock zero = correlation_block(2, 4, 0, 0.5, 6);
    CHECK((zero.t - zero.t.adjoint()).norm() == 0.0);
    CHECK(zero.t.diagonal().real().isOnes());

    const CorrelationBlock scalar = correlation_block(3, 3, 2, std::polar(0.8, 1.0), 6);
    REQUIRE(scalar.t.size() == 1);
    CHECK_THAT(sigma_max(scalar.t), WithinAbs(0.64, 1e-12));

    CHECK_THROWS_AS(correlation_block(2, 4, 3, 0.5, 6), Error);
}

TEST_CASE("gain_mcslacc - closed form against column products")
{
    CHECK_THAT(gain_mcslacc(2, 3, 2, 0.6), WithinAbs(0.72, 1e-12));
    CHECK_THAT(gain_mcslacc_oracle(2, 3, 2, 0.6, 6), WithinAbs(0.72, 1e-10));
    CHECK_THAT(gain_mcslacc(2, 5, 0, 0.9), WithinAbs(4.0, 1e-15));
    CHECK(gain_mcslacc(1, 2, 1, 0.0) == 0.0);

    for (double a : {0.1, 0.45, 0.95})
        for (int r = 0; r <= 3; ++r)
        {
            const Complex rho = std::polar(a, 2.0);
            CHECK_THAT(gain_mcslacc(2, 4, r, rho), WithinAbs(diagonal_sum_abs(2, 4, r, rho, 8), 1e-10));
        }
}

TEST_CASE("gain_mcslsacc - geometric sums")
{
    CHECK_THAT(gain_mcslsacc(2, 3, 6, 0.6), WithinAbs(3.552, 1e-9));
    CHECK_THAT(gain_mcslsacc_oracle(2, 3, 6, 0.6), WithinAbs(3.552, 1e-9));
    CHECK(gain_mcslsacc(2, 3, 6, 0.0) == 0.0);

    // Direct double sum
    const Complex rho = std::polar(0.35, -0.4);
    double expect = 0.0;
    for (int r = 1; r <= 2; ++r)
        expect += diagonal_sum_abs(3, 5, -r, rho, 9);
    for (int r = 1; r <= 4; ++r)
        expect += diagonal_sum_abs(3, 5, r, rho, 9);
    CHECK_THAT(gain_mcslsacc(3, 5, 9, rho), WithinAbs(expect, 1e-9));

    try
    {
        gain_mcslsacc(2, 3, 6, 1.0);
        FAIL("pole accepted");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::RhoAtUnity);
    }
}

TEST_CASE("bounds_vcslacc_r0 - sandwich and frozen values")
{
    const Bounds b = bounds_vcslacc_r0(1, 3, 0.5);
    CHECK_THAT(b.lower, WithinAbs(1.0 + 5.0 / 6.0, 1e-12));
    CHECK_THAT(b.upper, WithinAbs(2.0, 1e-12));
    const double oracle = sigma_max(correlation_block(1, 3, 0, 0.5, 3).t);
    CHECK_THAT(oracle, WithinAbs(1.8430703308172536, 1e-12));
    CHECK(b.lower <= oracle);
    CHECK(oracle <= b.upper);

    const Bounds even = bounds_vcslacc_r0(1, 2, 0.6);
    CHECK_THAT(even.upper, WithinAbs(1.6, 1e-12));
    CHECK_THAT(sigma_max(correlation_block(1, 2, 0, 0.6, 2).t), WithinAbs(1.6, 1e-12));

    const Bounds flat = bounds_vcslacc_r0(2, 6, 0.0);
    CHECK_THAT(flat.lower, WithinAbs(1.0, 1e-15));
    CHECK_THAT(flat.upper, WithinAbs(1.0, 1e-15));
}

TEST_CASE("trace_bound_vcslacc - chain of inequalities")
{
    const TraceBound t = trace_bound_vcslacc(2, 5, 1, 0.6);
    CHECK(t.sigma_max > t.sqrt_trace_avg);
    CHECK(t.sqrt_trace_avg > 1.0);

    const TraceBound eq = trace_bound_vcslacc(2, 5, 2, 0.0);
    CHECK_THAT(eq.sigma_max, WithinAbs(1.0, 1e-12));
    CHECK_THAT(eq.sqrt_trace_avg, WithinAbs(1.0, 1e-12));

    // Rank of the block is s + 1 with s = j - i - r
    const RealVector sv = singular_values(correlation_block(2, 5, 1, 0.6, 6).t);
    CHECK(sv(2) > 1e-6);
    CHECK(sv(3) < 1e-12 * sv(0));

    CHECK_THROWS_AS(trace_bound_vcslacc(2, 5, 0, 0.6), Error);
    CHECK_THROWS_AS(trace_bound_vcslacc(2, 5, 4, 0.6), Error);
}

TEST_CASE("bounds_vcslacc_noisefree - exact lower bound")
{
    const Bounds b = bounds_vcslacc_noisefree(2, 4, 4, 0.6);
    const double oracle = sigma_max(correlation_block(2, 4, 4, 0.6, 8).t);
    CHECK_THAT(oracle, WithinAbs(0.536256, 1e-9));
    CHECK_THAT(b.lower, WithinAbs(oracle, 1e-9));
    CHECK_THAT(b.upper, WithinAbs(0.36 * 1.96 * std::sqrt(1.216 / 1.6), 1e-12));
    CHECK_THAT(b.upper, WithinAbs(0.6151, 1e-4));

    const Bounds scalar = bounds_vcslacc_noisefree(3, 3, 2, 0.7);
    CHECK_THAT(scalar.lower, WithinAbs(0.49, 1e-12));
    CHECK_THAT(scalar.upper, WithinAbs(0.49, 1e-12));

    const Bounds zero = bounds_vcslacc_noisefree(2, 3, 2, 0.0);
    CHECK(zero.lower == 0.0);

    CHECK(sigma_max(correlation_block(2, 4, 5, 0.6, 9).t) < oracle);
    CHECK_THROWS_AS(bounds_vcslacc_noisefree(2, 4, 1, 0.6), Error);
}

TEST_CASE("singular_relation_matrixform - scaled spectra")
{
    RealVector d(3);
    d << 4.0, 2.0, 0.0;
    const RealVector r0 = singular_relation_matrixform(2, 3, 0, 0.6, 6, d);
    CHECK((r0 - 2.0 * d).norm() < 1e-12);
    const RealVector r1 = singular_relation_matrixform(2, 3, 1, 0.6, 6, d);
    CHECK((r1 - 1.2 * d).norm() < 1e-12);
    const RealVector floor = singular_relation_matrixform(2, 3, 0, 0.6, 6, RealVector::Zero(3), 0.5);
    CHECK((floor - RealVector::Constant(3, 0.5)).norm() < 1e-12);
    CHECK(singular_relation_matrixform(2, 3, 2, 0.6, 6, RealVector::Zero(3), 0.5).norm() == 0.0);
}

TEST_CASE("singular_relation_vectorform - Kronecker spectrum")
{
    SeededRng rng(3);
    const ComplexMatrix x = complex_gaussian(rng, 4, 2, 1.0);
    const ComplexMatrix rsa = x * x.adjoint(); // rank 2
    const RealVector dsa = singular_values(rsa);

    const CorrelationBlock b = correlation_block(1, 3, 0, std::polar(0.5, 0.3), 3);
    const VectorFormPrediction pred = singular_relation_vectorform(b, dsa);
    RealVector direct = singular_values(kronecker(b.t, rsa));
    REQUIRE(direct.size() == pred.spectrum.size());
    CHECK((direct - pred.spectrum).norm() < 1e-9);

    const CorrelationBlock unit = correlation_block(2, 2, 0, 0.5, 3);
    CHECK((singular_relation_vectorform(unit, dsa).spectrum - dsa).norm() < 1e-12);

    // Noisy case: equivalent noise never exceeds the raw noise power
    const RealVector noise = vectorform_noise_power(3, 0, 4, 0.7);
    const VectorFormPrediction noisy = singular_relation_vectorform(b, dsa, noise);
    for (Eigen::Index k = 0; k < noisy.noise_bound.size(); ++k)
        CHECK(noisy.noise_bound(k) <= std::sqrt(noise(k)) + 1e-12);
}

TEST_CASE("validate_scm_expectation - small configuration")
{
    ScenarioConfig cfg;
    cfg.nyquist_samples = 100;
    cfg.sub_samples = 20;
    cfg.bandwidth_hz = 100e6;
    cfg.segments = 1;
    const ScmRelationReport m = validate_scm_expectation({AlgorithmKind::mcslacc, 1}, cfg, 2, 3, 2000);
    CHECK(m.relative_error < 0.1);
    const ScmRelationReport v = validate_scm_expectation({AlgorithmKind::vcslacc, 2}, cfg, 2, 3, 2000);
    CHECK(v.relative_error < 0.1);

    ScenarioConfig flat = cfg;
    flat.rho = 0.0;
    const ScmRelationReport z = validate_scm_expectation({AlgorithmKind::mcslacc, 1}, flat, 2, 3, 1000);
    CHECK(z.predicted.norm() == 0.0);
}

TEST_CASE("sweeps - grid, monotonicity and figure data")
{
    TheoryGrid grid = default_theory_grid();
    grid.max_antennas = 6;
    const auto reports = sweep_theory_grid(grid);
    CHECK_FALSE(reports.empty());
    CHECK(std::all_of(reports.begin(), reports.end(), [](const AmplificationReport &r) { return r.passed; }));
    CHECK(check_shift_monotonicity(grid).empty());

    const auto by_rho = sweep_gain_vs_rho();
    CHECK(std::all_of(by_rho.begin(), by_rho.end(), [](const AmplificationReport &r) { return r.passed; }));
    const auto by_width = sweep_gain_vs_width();
    CHECK(std::all_of(by_width.begin(), by_width.end(), [](const AmplificationReport &r) { return r.passed; }));
}
