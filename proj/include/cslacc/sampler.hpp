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

#ifndef CSLACC_SAMPLER_HPP
#define CSLACC_SAMPLER_HPP

#include "cslacc/numerics.hpp"
#include "cslacc/scenario.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cslacc
{
    // Random demodulator front end shared by all antennas
    struct MeasurementOperator
    {
        ComplexMatrix omega; // P x Q, Q/P consecutive chipped samples per row
        ComplexMatrix psi;   // Q x Q unitary inverse DFT
        ComplexMatrix a;     // omega * psi
        std::vector<double> chipping;

        std::size_t p() const noexcept { return static_cast<std::size_t>(omega.rows()); }
        std::size_t q() const noexcept { return static_cast<std::size_t>(omega.cols()); }
        double compression_ratio() const noexcept { return double(q()) / double(p()); }
    };

    // One sensing period of sub-samples: L matrices of size P x M
    struct SubSampleSet
    {
        std::vector<ComplexMatrix> segments;

        std::size_t segment_count() const noexcept { return segments.size(); }
        std::size_t rows() const noexcept { return segments.empty() ? 0 : static_cast<std::size_t>(segments.front().rows()); }
        std::size_t antennas() const noexcept { return segments.empty() ? 0 : static_cast<std::size_t>(segments.front().cols()); }
    };

    struct NoiseFoldingEstimate
    {
        double alpha = 0.0;
        double stderr_alpha = 0.0;
        std::size_t trials = 0;
    };

    ComplexMatrix unitary_idft(std::size_t q);

    MeasurementOperator build_random_demodulator(std::size_t p, std::size_t q, SeededRng &rng);
    MeasurementOperator build_random_demodulator(std::size_t p, std::span<const double> chipping);

    // Y = omega * x_bar^T, P x M
    ComplexMatrix subsample(const MeasurementOperator &op, const ComplexMatrix &x_bar);
    ComplexMatrix subsample(const MeasurementOperator &op, const NyquistFrame &frame);

    NoiseFoldingEstimate estimate_noise_folding(const MeasurementOperator &op, double sigma2,
                                                SeededRng &rng, std::size_t n_trials);
}

#endif
