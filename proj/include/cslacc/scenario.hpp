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

#ifndef CSLACC_SCENARIO_HPP
#define CSLACC_SCENARIO_HPP

#include "cslacc/numerics.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cslacc
{
    // Physical-layer parameters of one sensing experiment
    struct ScenarioConfig
    {
        std::size_t antennas = 6;          // M
        std::size_t pu_count = 3;          // K
        double bandwidth_hz = 1e9;         // W
        double pu_bandwidth_hz = 20e6;     // B, one grid channel
        std::size_t nyquist_samples = 300; // Q per segment
        std::size_t sub_samples = 60;      // P per segment
        std::size_t segments = 100;        // L
        Complex rho{0.6, 0.0};             // receive correlation coefficient
        double snr_db = -16.0;             // per antenna, per PU
        std::vector<double> tx_powers;     // empty means unit power for every PU
        std::uint64_t seed = 1;

        std::size_t band_count() const;    // W / B
        std::size_t bins_per_band() const; // Q / (W / B)
        double tx_power(std::size_t k) const;
        double mean_tx_power() const;

        // Noise variance per antenna: mean single-PU received power over 10^(snr/10)
        double noise_variance() const;

        void validate() const; // throws InvalidConfig / InvalidRho / IndivisibleRatio
    };

    struct ExponentialCorrelation
    {
        std::size_t m = 0;
        Complex rho{0.0, 0.0};
        ComplexMatrix matrix;
    };

    struct ChannelDraw
    {
        ComplexMatrix g;      // M x K
        ComplexMatrix q_sqrt; // M x M
        ComplexMatrix p_sqrt; // K x K diagonal
        ComplexMatrix g_w;    // M x K
    };

    // PU waveforms of one sensing period; each segment is Q x K with unit-power columns
    struct PuSignals
    {
        std::vector<ComplexMatrix> segments;
        std::vector<std::size_t> bands;   // grid channel of PU k
        std::vector<std::size_t> support; // sorted occupied channels
    };

    struct NyquistFrame
    {
        ComplexMatrix s;     // Q x K
        ComplexMatrix x_bar; // M x Q
        ComplexMatrix n_bar; // M x Q
        std::vector<std::size_t> support;
    };

    // Entry (a, b) = rho^(b - a) for a < b, conjugate below the diagonal
    ExponentialCorrelation build_exponential_correlation(std::size_t m, Complex rho);

    ChannelDraw draw_channel(const ScenarioConfig &cfg, SeededRng &rng);
    ChannelDraw draw_channel(const ComplexMatrix &q_sqrt, std::span<const double> tx_powers, SeededRng &rng);

    // Band-limited BPSK at symbol rate B on the centre of a random grid channel per PU
    PuSignals generate_pu_signals(const ScenarioConfig &cfg, SeededRng &rng);

    NyquistFrame synthesize_frame(const ScenarioConfig &cfg, const ChannelDraw &channel,
                                  const ComplexMatrix &s, std::span<const std::size_t> support, SeededRng &rng);
    NyquistFrame synthesize_frame(const ComplexMatrix &g, const ComplexMatrix &s,
                                  std::span<const std::size_t> support, double noise_variance, SeededRng &rng);

    // Expected s s^H of one unit-power PU in grid channel `band` (Q x Q)
    ComplexMatrix pu_signal_covariance(std::size_t q, std::size_t band_count, std::size_t band);

    // DFT bins [first, first + count) occupied by grid channel `band`
    std::size_t band_first_bin(std::size_t q, std::size_t band_count, std::size_t band);
}

#endif
