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
// - build_exponential_correlation: pattern, Hermitian Toeplitz, column products of the root
// - draw_channel: second moments, zero-power columns
// - generate_pu_signals: support, power, in-band energy, degenerate cases
// - synthesize_frame: noiseless consistency, SNR calibration
// - ScenarioConfig validation

#include <catch_amalgamated.hpp>
#include "cslacc/sampler.hpp"
#include "cslacc/scenario.hpp"

#include <cmath>
#include <numbers>
#include <set>

using namespace cslacc;
using Catch::Matchers::WithinAbs;

TEST_CASE("build_exponential_correlation - pattern")
{
    CHECK(build_exponential_correlation(4, 0.0).matrix.isApprox(ComplexMatrix::Identity(4, 4)));

    const ComplexMatrix q = build_exponential_correlation(3, 0.5).matrix;
    const double expect[3][3] = {{1.0, 0.5, 0.25}, {0.5, 1.0, 0.5}, {0.25, 0.5, 1.0}};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            CHECK_THAT(std::abs(q(a, b) - expect[a][b]), WithinAbs(0.0, 1e-15));

    CHECK_THROWS_AS(build_exponential_correlation(3, 1.01), Error);
}

TEST_CASE("build_exponential_correlation - Hermitian Toeplitz with unit diagonal")
{
    for (std::size_t m = 1; m <= 12; ++m)
        for (double a = 0.0; a <= 1.0; a += 0.25)
        {
            const Complex rho = std::polar(a, 0.9);
            const ComplexMatrix q = build_exponential_correlation(m, rho).matrix;
            CHECK((q - q.adjoint()).norm() == 0.0);
            for (Eigen::Index u = 0; u + 1 < q.rows(); ++u)
                for (Eigen::Index v = 0; v + 1 < q.cols(); ++v)
                    CHECK(std::abs(q(u, v) - q(u + 1, v + 1)) < 1e-15);
            CHECK(q.diagonal().real().isOnes());
            CHECK(hermitian_eig(q).eigenvalues.minCoeff() >= -1e-10);
        }
}

TEST_CASE("build_exponential_correlation - column products of the Hermitian root")
{
    const Complex rho = std::polar(0.6, std::numbers::pi / 7.0);
    const ComplexMatrix root = hermitian_sqrt(build_exponential_correlation(6, rho).matrix);
    for (Eigen::Index u = 0; u < 6; ++u)
        for (Eigen::Index r = 0; u + r < 6; ++r)
        {
            const Complex prod = root.col(u).dot(root.col(u + r)); // q_u^H q_{u+r}
            CHECK(std::abs(prod - std::pow(rho, double(r))) < 1e-9);
        }
}

TEST_CASE("draw_channel - second moments")
{
    constexpr int n = 100000;
    SeededRng rng(21);

    SECTION("uncorrelated, unit power")
    {
        const ComplexMatrix root = ComplexMatrix::Identity(2, 2);
        const std::vector<double> powers = {1.0};
        double power = 0.0;
        for (int t = 0; t < n; ++t)
            power += draw_channel(root, powers, rng).g.col(0).squaredNorm() / 2.0;
        CHECK_THAT(power / n, WithinAbs(1.0, 0.02));
    }

    SECTION("rho = 0.6 cross moment")
    {
        const ComplexMatrix root = hermitian_sqrt(build_exponential_correlation(6, 0.6).matrix);
        const std::vector<double> powers = {2.0};
        Complex cross = 0.0;
        for (int t = 0; t < n; ++t)
        {
            const ChannelDraw ch = draw_channel(root, powers, rng);
            cross += ch.g(0, 0) * std::conj(ch.g(1, 0));
            if (t == 0)
                CHECK((ch.g - ch.q_sqrt * ch.g_w * ch.p_sqrt).norm() < 1e-14);
        }
        cross /= double(n) * 2.0;
        CHECK_THAT(cross.real(), WithinAbs(0.6, 0.02));
        CHECK_THAT(cross.imag(), WithinAbs(0.0, 0.02));
    }

    SECTION("zero transmit power gives a zero column")
    {
        const std::vector<double> powers = {0.0, 1.0};
        const ChannelDraw ch = draw_channel(ComplexMatrix::Identity(3, 3), powers, rng);
        CHECK(ch.g.col(0).norm() == 0.0);
        CHECK(ch.g.col(1).norm() > 0.0);
    }
}

TEST_CASE("generate_pu_signals - support, power and spectral occupancy")
{
    ScenarioConfig cfg;
    cfg.segments = 20;
    SeededRng rng(31);
    const PuSignals sig = generate_pu_signals(cfg, rng);

    REQUIRE(sig.support.size() == 3);
    CHECK(std::set<std::size_t>(sig.support.begin(), sig.support.end()).size() == 3);
    for (auto b : sig.support)
        CHECK(b < 50);
    REQUIRE(sig.segments.size() == 20);

    // Energy of each PU inside its own grid channel, via the unitary DFT
    const ComplexMatrix dft = unitary_idft(cfg.nyquist_samples).adjoint();
    const std::size_t nb = cfg.bins_per_band();
    for (const auto &s : sig.segments)
        for (Eigen::Index k = 0; k < s.cols(); ++k)
        {
            CHECK_THAT(s.col(k).squaredNorm() / double(s.rows()), WithinAbs(1.0, 0.05));
            const ComplexVector z = dft * s.col(k);
            const auto first = Eigen::Index(band_first_bin(cfg.nyquist_samples, 50, sig.bands[std::size_t(k)]));
            const double inband = z.segment(first, Eigen::Index(nb)).squaredNorm();
            CHECK(inband >= 0.9 * z.squaredNorm());
        }
}

TEST_CASE("generate_pu_signals - degenerate configurations")
{
    SeededRng rng(37);
    ScenarioConfig none;
    none.pu_count = 0;
    none.segments = 2;
    const PuSignals empty = generate_pu_signals(none, rng);
    CHECK(empty.support.empty());
    CHECK(empty.segments[0].cols() == 0);

    ScenarioConfig full;
    full.pu_count = 1;
    full.pu_bandwidth_hz = full.bandwidth_hz;
    full.segments = 1;
    const PuSignals one = generate_pu_signals(full, rng);
    REQUIRE(one.support.size() == 1);
    CHECK(one.support[0] == 0);

    ScenarioConfig crowded;
    crowded.pu_count = 51;
    try
    {
        generate_pu_signals(crowded, rng);
        FAIL("band overflow accepted");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::BandOverflow);
    }
}

TEST_CASE("synthesize_frame - noiseless consistency and SNR")
{
    ScenarioConfig cfg;
    cfg.segments = 1;
    SeededRng rng(41);
    const PuSignals sig = generate_pu_signals(cfg, rng);
    const ChannelDraw ch = draw_channel(cfg, rng);

    const NyquistFrame clean = synthesize_frame(ch.g, sig.segments[0], sig.support, 0.0, rng);
    CHECK((clean.x_bar - ch.g * sig.segments[0].transpose()).norm() < 1e-12);

    // Rows of x_bar lie in the row space of s^T
    const ComplexMatrix st = sig.segments[0].transpose();
    const ComplexMatrix fit = st.transpose().colPivHouseholderQr().solve(clean.x_bar.transpose());
    CHECK((st.transpose() * fit - clean.x_bar.transpose()).norm() < 1e-12 * clean.x_bar.norm());

    ScenarioConfig none = cfg;
    none.pu_count = 0;
    const PuSignals nosig = generate_pu_signals(none, rng);
    const NyquistFrame zero = synthesize_frame(ComplexMatrix(6, 0), nosig.segments[0], nosig.support, 0.0, rng);
    CHECK(zero.x_bar.norm() == 0.0);
}

TEST_CASE("synthesize_frame - 0 dB gives unit signal-to-noise power ratio")
{
    ScenarioConfig cfg;
    cfg.pu_count = 1;
    cfg.snr_db = 0.0;
    cfg.segments = 1;
    SeededRng rng(43);
    double signal = 0.0, noise = 0.0;
    for (int t = 0; t < 1000; ++t)
    {
        const PuSignals sig = generate_pu_signals(cfg, rng);
        const ChannelDraw ch = draw_channel(cfg, rng);
        const NyquistFrame f = synthesize_frame(cfg, ch, sig.segments[0], sig.support, rng);
        signal += (f.x_bar - f.n_bar).squaredNorm();
        noise += f.n_bar.squaredNorm();
    }
    CHECK_THAT(signal / noise, WithinAbs(1.0, 0.05));
}

TEST_CASE("ScenarioConfig - derived quantities and validation")
{
    ScenarioConfig cfg;
    CHECK(cfg.band_count() == 50);
    CHECK(cfg.bins_per_band() == 6);
    CHECK_THAT(cfg.noise_variance(), WithinAbs(std::pow(10.0, 1.6), 1e-12));
    CHECK_NOTHROW(cfg.validate());

    ScenarioConfig bad = cfg;
    bad.sub_samples = 70;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = cfg;
    bad.rho = 1.5;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = cfg;
    bad.tx_powers = {1.0, 2.0};
    CHECK_THROWS_AS(bad.validate(), Error);
}
