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

#ifndef CSLACC_SENSING_HPP
#define CSLACC_SENSING_HPP

#include "cslacc/csl.hpp"
#include "cslacc/numerics.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cslacc
{
    struct RecoveryConfig
    {
        double epsilon = 0.0;         // bound on the squared Frobenius residual
        std::size_t max_sparsity = 0; // 0 means min(P, Q)
        std::size_t band_count = 1;   // N_b
    };

    struct RecoveryResult
    {
        ComplexMatrix z_hat;                   // Q x C, zero outside support_bins
        std::vector<std::size_t> support_bins; // in selection order
        std::vector<std::size_t> support_bands;
        double residual_norm = 0.0;            // Frobenius norm of y - a z_hat
        bool singular_projection = false;      // stopped on a numerically dependent atom
    };

    // Simultaneous orthogonal matching pursuit over the columns of y
    RecoveryResult somp(const ComplexMatrix &y, const ComplexMatrix &a, const RecoveryConfig &cfg);

    // Channels holding at least one selected bin, sorted
    std::vector<std::size_t> bins_to_bands(std::span<const std::size_t> bins, std::size_t q, std::size_t band_count);

    // (1 / C) * sum over streams and channel bins of |z|^2
    double band_statistic(const ComplexMatrix &band_rows);
    std::vector<double> band_statistics(const ComplexMatrix &z_hat, std::size_t band_count);

    bool energy_detect(double statistic, double gamma);
    bool energy_detect(const ComplexMatrix &band_rows, double gamma);
    std::vector<std::uint8_t> energy_detect(std::span<const double> statistics, double gamma);

    // Residual-energy bound from the discarded part of the SCM spectrum: s * mean(residual)^2
    double noise_floor_epsilon(const SubspaceEstimate &subspace);

    // Smallest gamma such that at most target_pf of the noise-only statistics exceed it
    double calibrate_threshold(std::vector<double> noise_statistics, double target_pf);

    struct DetectionMetrics
    {
        double pd = 0.0;
        double pf = 0.0;
        double pd_stderr = 0.0; // sqrt(p (1 - p) / trials)
        double pf_stderr = 0.0;
        std::vector<double> per_band_stats;
        double threshold = 0.0;
        std::size_t trials = 0;
    };

    // Associative accumulator of detection outcomes, merged in trial order
    class DetectionTally
    {
    public:
        void add(std::span<const std::uint8_t> decisions, std::span<const std::size_t> support);
        void merge(const DetectionTally &other);
        DetectionMetrics metrics(double threshold) const;

        std::size_t trials() const noexcept { return trials_; }
        std::size_t detections() const noexcept { return detections_; }
        std::size_t occupied() const noexcept { return occupied_; }
        std::size_t alarms() const noexcept { return alarms_; }
        std::size_t vacant() const noexcept { return vacant_; }

    private:
        std::size_t trials_ = 0, detections_ = 0, occupied_ = 0, alarms_ = 0, vacant_ = 0;
    };

    DetectionMetrics compute_pd_pf(const std::vector<std::vector<std::uint8_t>> &decisions,
                                   const std::vector<std::vector<std::size_t>> &supports, double threshold = 0.0);
}

#endif
