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

#include "cslacc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace cslacc
{
    std::size_t ScenarioConfig::band_count() const
    {
        if (!(bandwidth_hz > 0.0) || !(pu_bandwidth_hz > 0.0))
            throw Error(ErrorCode::InvalidConfig, "bandwidths must be positive");
        const double ratio = bandwidth_hz / pu_bandwidth_hz;
        const double rounded = std::round(ratio);
        if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded)
            throw Error(ErrorCode::InvalidConfig, "total bandwidth must be an integer multiple of the PU bandwidth");
        return static_cast<std::size_t>(rounded);
    }

    std::size_t ScenarioConfig::bins_per_band() const
    {
        const std::size_t nb = band_count();
        if (nyquist_samples % nb != 0)
            throw Error(ErrorCode::InvalidConfig, "Nyquist samples per segment must be divisible by the channel count");
        return nyquist_samples / nb;
    }

    double ScenarioConfig::tx_power(std::size_t k) const
    {
        if (tx_powers.empty())
            return 1.0;
        if (k >= tx_powers.size())
            throw Error(ErrorCode::IndexOutOfRange, "PU index exceeds tx_powers");
        return tx_powers[k];
    }

    double ScenarioConfig::mean_tx_power() const
    {
        if (tx_powers.empty())
            return 1.0;
        return std::accumulate(tx_powers.begin(), tx_powers.end(), 0.0) / double(tx_powers.size());
    }

    double ScenarioConfig::noise_variance() const
    {
        return mean_tx_power() / std::pow(10.0, snr_db / 10.0);
    }

    void ScenarioConfig::validate() const
    {
        if (antennas < 1)
            throw Error(ErrorCode::InvalidConfig, "at least one antenna is required");
        if (nyquist_samples < 1 || segments < 1 || sub_samples < 1)
            throw Error(ErrorCode::InvalidConfig, "Q, P and L must be positive");
        if (std::abs(rho) > 1.0 + 1e-12)
            throw Error(ErrorCode::InvalidRho, "|rho| must not exceed 1");
        if (!std::isfinite(snr_db))
            throw Error(ErrorCode::InvalidConfig, "snr_db must be finite");
        if (double(pu_count) * pu_bandwidth_hz > bandwidth_hz * (1.0 + 1e-12))
            throw Error(ErrorCode::InvalidConfig, "K * B exceeds the total bandwidth");
        bins_per_band();
        if (!tx_powers.empty())
        {
            if (tx_powers.size() != pu_count)
                throw Error(ErrorCode::InvalidConfig, "tx_powers must list one power per PU");
            for (double p : tx_powers)
                if (!(p > 0.0) || !std::isfinite(p))
                    throw Error(ErrorCode::InvalidConfig, "transmit powers must be positive");
        }
        if (sub_samples > nyquist_samples)
            throw Error(ErrorCode::InvalidConfig, "P must not exceed Q");
        if (nyquist_samples % sub_samples != 0)
            throw Error(ErrorCode::IndivisibleRatio, "P must divide Q");
    }

    ExponentialCorrelation build_exponential_correlation(std::size_t m, Complex rho)
    {
        if (std::abs(rho) > 1.0 + 1e-12)
            throw Error(ErrorCode::InvalidRho, "|rho| must not exceed 1");

        const auto n = static_cast<Eigen::Index>(m);
        ComplexMatrix q = ComplexMatrix::Identity(n, n);
        for (Eigen::Index a = 0; a < n; ++a)
        {
            Complex power(1.0, 0.0);
            for (Eigen::Index b = a + 1; b < n; ++b)
            {
                power *= rho;
                q(a, b) = power;
                q(b, a) = std::conj(power);
            }
        }
        return {m, rho, std::move(q)};
    }

    ChannelDraw draw_channel(const ComplexMatrix &q_sqrt, std::span<const double> tx_powers, SeededRng &rng)
    {
        if (q_sqrt.rows() != q_sqrt.cols())
            throw Error(ErrorCode::DimensionMismatch, "receive correlation root must be square");

        const auto k = static_cast<Eigen::Index>(tx_powers.size());
        ComplexMatrix p_sqrt = ComplexMatrix::Zero(k, k);
        for (Eigen::Index c = 0; c < k; ++c)
        {
            if (tx_powers[c] < 0.0)
                throw Error(ErrorCode::InvalidConfig, "transmit powers must be non-negative");
            p_sqrt(c, c) = std::sqrt(tx_powers[c]);
        }

        ComplexMatrix g_w = complex_gaussian(rng, q_sqrt.rows(), k, 1.0);
        ComplexMatrix g = q_sqrt * g_w * p_sqrt;
        return {std::move(g), q_sqrt, std::move(p_sqrt), std::move(g_w)};
    }

    ChannelDraw draw_channel(const ScenarioConfig &cfg, SeededRng &rng)
    {
        cfg.validate();
        const ComplexMatrix q_sqrt = hermitian_sqrt(build_exponential_correlation(cfg.antennas, cfg.rho).matrix);
        std::vector<double> powers(cfg.pu_count);
        for (std::size_t k = 0; k < cfg.pu_count; ++k)
            powers[k] = cfg.tx_power(k);
        return draw_channel(q_sqrt, powers, rng);
    }

    std::size_t band_first_bin(std::size_t q, std::size_t band_count, std::size_t band)
    {
        if (band_count == 0 || q % band_count != 0)
            throw Error(ErrorCode::InvalidConfig, "Q must be divisible by the channel count");
        if (band >= band_count)
            throw Error(ErrorCode::IndexOutOfRange, "channel index out of range");
        return band * (q / band_count);
    }

    PuSignals generate_pu_signals(const ScenarioConfig &cfg, SeededRng &rng)
    {
        const std::size_t n_bands = cfg.band_count();
        if (cfg.pu_count > n_bands)
            throw Error(ErrorCode::BandOverflow, "more PUs than grid channels");
        cfg.validate();

        const std::size_t q = cfg.nyquist_samples;
        const std::size_t k_count = cfg.pu_count;
        const std::size_t nb = cfg.bins_per_band();
        const double two_pi = 2.0 * std::numbers::pi;

        PuSignals out;

        std::vector<std::size_t> order(n_bands);
        std::iota(order.begin(), order.end(), std::size_t(0));
        std::shuffle(order.begin(), order.end(), rng.engine());
        out.bands.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k_count));
        out.support = out.bands;
        std::sort(out.support.begin(), out.support.end());

        std::vector<Complex> carrier(k_count);
        for (auto &c : carrier)
            c = std::polar(1.0, two_pi * rng.uniform());

        std::vector<Complex> twiddle_q(q), twiddle_nb(nb);
        for (std::size_t n = 0; n < q; ++n)
            twiddle_q[n] = std::polar(1.0, two_pi * double(n) / double(q));
        for (std::size_t n = 0; n < nb; ++n)
            twiddle_nb[n] = std::polar(1.0, -two_pi * double(n) / double(nb));

        // Symbol spectrum scaled so that every column has unit mean power
        const double spectrum_scale = std::sqrt(double(q)) / double(nb);
        const double idft_scale = 1.0 / std::sqrt(double(q));
        const std::size_t half = nb / 2;

        out.segments.reserve(cfg.segments);
        std::vector<double> symbols(nb);
        std::vector<Complex> coeff(nb);
        std::vector<std::size_t> bin(nb);

        for (std::size_t l = 0; l < cfg.segments; ++l)
        {
            ComplexMatrix s = ComplexMatrix::Zero(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(k_count));
            for (std::size_t k = 0; k < k_count; ++k)
            {
                for (auto &d : symbols)
                    d = rng.rademacher();

                // Baseband bin offset t - half carries symbol-DFT index (t - half) mod nb
                const std::size_t centre = band_first_bin(q, n_bands, out.bands[k]) + half;
                for (std::size_t t = 0; t < nb; ++t)
                {
                    const std::size_t dft_index = (t + nb - half) % nb;
                    Complex acc(0.0, 0.0);
                    for (std::size_t u = 0; u < nb; ++u)
                        acc += symbols[u] * twiddle_nb[(dft_index * u) % nb];
                    coeff[t] = spectrum_scale * acc;
                    bin[t] = centre - half + t;
                }

                for (std::size_t n = 0; n < q; ++n)
                {
                    Complex acc(0.0, 0.0);
                    for (std::size_t t = 0; t < nb; ++t)
                        acc += coeff[t] * twiddle_q[(bin[t] * n) % q];
                    s(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) = idft_scale * carrier[k] * acc;
                }
            }
            out.segments.push_back(std::move(s));
        }
        return out;
    }

    NyquistFrame synthesize_frame(const ComplexMatrix &g, const ComplexMatrix &s,
                                  std::span<const std::size_t> support, double noise_variance, SeededRng &rng)
    {
        if (g.cols() != s.cols())
            throw Error(ErrorCode::DimensionMismatch, "channel and signal PU counts differ");
        if (noise_variance < 0.0)
            throw Error(ErrorCode::InvalidConfig, "noise variance must be non-negative");

        NyquistFrame frame;
        frame.s = s;
        frame.n_bar = complex_gaussian(rng, g.rows(), s.rows(), noise_variance);
        frame.x_bar = g * s.transpose() + frame.n_bar;
        frame.support.assign(support.begin(), support.end());
        return frame;
    }

    NyquistFrame synthesize_frame(const ScenarioConfig &cfg, const ChannelDraw &channel,
                                  const ComplexMatrix &s, std::span<const std::size_t> support, SeededRng &rng)
    {
        if (channel.g.rows() != static_cast<Eigen::Index>(cfg.antennas) ||
            s.rows() != static_cast<Eigen::Index>(cfg.nyquist_samples))
            throw Error(ErrorCode::DimensionMismatch, "frame dimensions do not match the configuration");
        return synthesize_frame(channel.g, s, support, cfg.noise_variance(), rng);
    }

    ComplexMatrix pu_signal_covariance(std::size_t q, std::size_t band_count, std::size_t band)
    {
        const std::size_t first = band_first_bin(q, band_count, band);
        const std::size_t nb = q / band_count;
        const double two_pi = 2.0 * std::numbers::pi;

        // Columns of the unitary inverse DFT restricted to the channel
        ComplexMatrix psi_b(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(nb));
        for (std::size_t n = 0; n < q; ++n)
            for (std::size_t t = 0; t < nb; ++t)
                psi_b(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(t)) =
                    std::polar(1.0 / std::sqrt(double(q)), two_pi * double(((first + t) * n) % q) / double(q));

        return double(band_count) * psi_b * psi_b.adjoint();
    }
}
