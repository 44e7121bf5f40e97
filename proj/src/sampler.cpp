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

#include "cslacc/sampler.hpp"

#include <cmath>
#include <numbers>

namespace cslacc
{
    ComplexMatrix unitary_idft(std::size_t q)
    {
        const auto n = static_cast<Eigen::Index>(q);
        const double two_pi = 2.0 * std::numbers::pi;
        const double scale = 1.0 / std::sqrt(double(q));
        ComplexMatrix psi(n, n);
        for (std::size_t r = 0; r < q; ++r)
            for (std::size_t c = 0; c < q; ++c)
                psi(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    std::polar(scale, two_pi * double((r * c) % q) / double(q));
        return psi;
    }

    MeasurementOperator build_random_demodulator(std::size_t p, std::span<const double> chipping)
    {
        const std::size_t q = chipping.size();
        if (p == 0 || q == 0)
            throw Error(ErrorCode::InvalidConfig, "P and Q must be positive");
        if (p > q)
            throw Error(ErrorCode::InvalidConfig, "P must not exceed Q");
        if (q % p != 0)
            throw Error(ErrorCode::IndivisibleRatio, "P must divide Q");
        for (double c : chipping)
            if (c != 1.0 && c != -1.0)
                throw Error(ErrorCode::InvalidConfig, "chipping sequence must be +1/-1");

        const std::size_t span = q / p;
        MeasurementOperator op;
        op.chipping.assign(chipping.begin(), chipping.end());
        op.omega = ComplexMatrix::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
        for (std::size_t row = 0; row < p; ++row)
            for (std::size_t t = row * span; t < (row + 1) * span; ++t)
                op.omega(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(t)) = chipping[t];
        op.psi = unitary_idft(q);
        op.a = op.omega * op.psi;
        return op;
    }

    MeasurementOperator build_random_demodulator(std::size_t p, std::size_t q, SeededRng &rng)
    {
        std::vector<double> chipping(q);
        for (auto &c : chipping)
            c = rng.rademacher();
        return build_random_demodulator(p, chipping);
    }

    ComplexMatrix subsample(const MeasurementOperator &op, const ComplexMatrix &x_bar)
    {
        if (x_bar.cols() != op.omega.cols())
            throw Error(ErrorCode::DimensionMismatch, "frame length differs from Q");
        return op.omega * x_bar.transpose();
    }

    ComplexMatrix subsample(const MeasurementOperator &op, const NyquistFrame &frame)
    {
        return subsample(op, frame.x_bar);
    }

    NoiseFoldingEstimate estimate_noise_folding(const MeasurementOperator &op, double sigma2,
                                                SeededRng &rng, std::size_t n_trials)
    {
        if (!(sigma2 > 0.0))
            throw Error(ErrorCode::InvalidConfig, "noise variance must be positive");
        if (n_trials < 2)
            throw Error(ErrorCode::InvalidConfig, "at least two trials are required");

        // Per trial: mean output power per sub-sample over the input noise variance
        double sum = 0.0, sum_sq = 0.0;
        const double p = double(op.p());
        for (std::size_t t = 0; t < n_trials; ++t)
        {
            const ComplexMatrix x = complex_gaussian(rng, op.omega.cols(), 1, sigma2);
            const double ratio = (op.omega * x).squaredNorm() / p / sigma2;
            sum += ratio;
            sum_sq += ratio * ratio;
        }
        const double n = double(n_trials);
        const double mean = sum / n;
        const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
        return {mean, std::sqrt(var / n), n_trials};
    }
}
