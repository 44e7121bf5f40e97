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

#include "cslacc/sensing.hpp"

#include <algorithm>
#include <cmath>

namespace cslacc
{
    RecoveryResult somp(const ComplexMatrix &y, const ComplexMatrix &a, const RecoveryConfig &cfg)
    {
        const Eigen::Index p = a.rows();
        const Eigen::Index q = a.cols();
        if (y.rows() != p)
            throw Error(ErrorCode::DimensionMismatch, "measurement rows differ from dictionary rows");
        if (y.cols() < 1)
            throw Error(ErrorCode::DimensionMismatch, "at least one measurement column is required");
        if (cfg.epsilon < 0.0)
            throw Error(ErrorCode::InvalidConfig, "epsilon must be non-negative");
        if (cfg.max_sparsity > static_cast<std::size_t>(q))
            throw Error(ErrorCode::InvalidConfig, "sparsity cap exceeds the dictionary size");

        const RealVector col_norm = a.colwise().norm().transpose();
        if ((col_norm.array() <= 0.0).any())
            throw Error(ErrorCode::InvalidConfig, "dictionary has a zero column");

        std::size_t cap = static_cast<std::size_t>(std::min(p, q));
        if (cfg.max_sparsity > 0)
            cap = std::min(cap, cfg.max_sparsity);

        RecoveryResult out;
        ComplexMatrix residual = y;
        ComplexMatrix basis(p, 0);
        std::vector<char> taken(static_cast<std::size_t>(q), 0);

        while (residual.squaredNorm() > cfg.epsilon && out.support_bins.size() < cap)
        {
            const ComplexMatrix corr = a.adjoint() * residual;
            Eigen::Index best = -1;
            double best_score = -1.0;
            for (Eigen::Index k = 0; k < q; ++k)
            {
                if (taken[static_cast<std::size_t>(k)])
                    continue;
                const double score = corr.row(k).cwiseAbs().sum() / col_norm(k);
                if (score > best_score)
                {
                    best_score = score;
                    best = k;
                }
            }
            if (best < 0)
                break;

            // Two Gram-Schmidt passes keep the basis orthonormal to working precision
            ComplexVector v = a.col(best);
            for (int pass = 0; pass < 2 && basis.cols() > 0; ++pass)
                v -= basis * (basis.adjoint() * v);
            const double nv = v.norm();
            if (nv <= 1e-12 * col_norm(best))
            {
                out.singular_projection = true;
                break;
            }

            basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
            basis.col(basis.cols() - 1) = v / nv;
            taken[static_cast<std::size_t>(best)] = 1;
            out.support_bins.push_back(static_cast<std::size_t>(best));
            residual = y - basis * (basis.adjoint() * y);
        }

        out.z_hat = ComplexMatrix::Zero(q, y.cols());
        if (!out.support_bins.empty())
        {
            ComplexMatrix a_s(p, static_cast<Eigen::Index>(out.support_bins.size()));
            for (std::size_t k = 0; k < out.support_bins.size(); ++k)
                a_s.col(static_cast<Eigen::Index>(k)) = a.col(static_cast<Eigen::Index>(out.support_bins[k]));
            const ComplexMatrix z_s = a_s.colPivHouseholderQr().solve(y);
            for (std::size_t k = 0; k < out.support_bins.size(); ++k)
                out.z_hat.row(static_cast<Eigen::Index>(out.support_bins[k])) = z_s.row(static_cast<Eigen::Index>(k));
            residual = y - a_s * z_s;
        }
        out.residual_norm = residual.norm();
        out.support_bands = bins_to_bands(out.support_bins, static_cast<std::size_t>(q), cfg.band_count);
        return out;
    }

    std::vector<std::size_t> bins_to_bands(std::span<const std::size_t> bins, std::size_t q, std::size_t band_count)
    {
        if (band_count == 0 || q % band_count != 0)
            throw Error(ErrorCode::InvalidConfig, "Q must be divisible by the channel count");
        const std::size_t width = q / band_count;
        std::vector<std::size_t> bands;
        for (std::size_t b : bins)
        {
            if (b >= q)
                throw Error(ErrorCode::IndexOutOfRange, "bin index exceeds Q");
            bands.push_back(b / width);
        }
        std::sort(bands.begin(), bands.end());
        bands.erase(std::unique(bands.begin(), bands.end()), bands.end());
        return bands;
    }

    double band_statistic(const ComplexMatrix &band_rows)
    {
        if (band_rows.cols() == 0)
            return 0.0;
        return band_rows.squaredNorm() / double(band_rows.cols());
    }

    std::vector<double> band_statistics(const ComplexMatrix &z_hat, std::size_t band_count)
    {
        const auto q = static_cast<std::size_t>(z_hat.rows());
        if (band_count == 0 || q % band_count != 0)
            throw Error(ErrorCode::InvalidConfig, "Q must be divisible by the channel count");
        const auto width = static_cast<Eigen::Index>(q / band_count);
        std::vector<double> stats(band_count);
        for (std::size_t b = 0; b < band_count; ++b)
            stats[b] = band_statistic(z_hat.middleRows(static_cast<Eigen::Index>(b) * width, width));
        return stats;
    }

    bool energy_detect(double statistic, double gamma)
    {
        if (gamma < 0.0)
            throw Error(ErrorCode::InvalidConfig, "threshold must be non-negative");
        return statistic > gamma;
    }

    bool energy_detect(const ComplexMatrix &band_rows, double gamma)
    {
        return energy_detect(band_statistic(band_rows), gamma);
    }

    std::vector<std::uint8_t> energy_detect(std::span<const double> statistics, double gamma)
    {
        std::vector<std::uint8_t> out(statistics.size());
        for (std::size_t k = 0; k < statistics.size(); ++k)
            out[k] = energy_detect(statistics[k], gamma) ? 1 : 0;
        return out;
    }

    double noise_floor_epsilon(const SubspaceEstimate &subspace)
    {
        if (subspace.residual_spectrum.size() == 0)
            return 0.0;
        const double mean = subspace.residual_spectrum.mean();
        return double(subspace.s) * mean * mean;
    }

    double calibrate_threshold(std::vector<double> noise_statistics, double target_pf)
    {
        if (noise_statistics.empty())
            throw Error(ErrorCode::InvalidConfig, "calibration needs at least one statistic");
        if (!(target_pf >= 0.0 && target_pf < 1.0))
            throw Error(ErrorCode::InvalidConfig, "target false-alarm rate must lie in [0, 1)");

        std::sort(noise_statistics.begin(), noise_statistics.end());
        const double n = double(noise_statistics.size());
        auto idx = static_cast<std::size_t>(std::ceil((1.0 - target_pf) * n));
        idx = std::clamp<std::size_t>(idx, 1, noise_statistics.size()) - 1;
        return std::max(0.0, noise_statistics[idx]);
    }

    void DetectionTally::add(std::span<const std::uint8_t> decisions, std::span<const std::size_t> support)
    {
        std::vector<char> occupied(decisions.size(), 0);
        for (std::size_t b : support)
        {
            if (b >= decisions.size())
                throw Error(ErrorCode::IndexOutOfRange, "support index exceeds the channel count");
            occupied[b] = 1;
        }
        for (std::size_t b = 0; b < decisions.size(); ++b)
        {
            if (occupied[b])
            {
                ++occupied_;
                detections_ += decisions[b] ? 1 : 0;
            }
            else
            {
                ++vacant_;
                alarms_ += decisions[b] ? 1 : 0;
            }
        }
        ++trials_;
    }

    void DetectionTally::merge(const DetectionTally &other)
    {
        trials_ += other.trials_;
        detections_ += other.detections_;
        occupied_ += other.occupied_;
        alarms_ += other.alarms_;
        vacant_ += other.vacant_;
    }

    DetectionMetrics DetectionTally::metrics(double threshold) const
    {
        DetectionMetrics m;
        m.threshold = threshold;
        m.trials = trials_;
        m.pd = occupied_ ? double(detections_) / double(occupied_) : 0.0;
        m.pf = vacant_ ? double(alarms_) / double(vacant_) : 0.0;
        if (trials_ > 0)
        {
            m.pd_stderr = std::sqrt(m.pd * (1.0 - m.pd) / double(trials_));
            m.pf_stderr = std::sqrt(m.pf * (1.0 - m.pf) / double(trials_));
        }
        return m;
    }

    DetectionMetrics compute_pd_pf(const std::vector<std::vector<std::uint8_t>> &decisions,
                                   const std::vector<std::vector<std::size_t>> &supports, double threshold)
    {
        if (decisions.empty())
            throw Error(ErrorCode::InvalidConfig, "at least one trial is required");
        if (decisions.size() != supports.size())
            throw Error(ErrorCode::DimensionMismatch, "one support per trial is required");
        DetectionTally tally;
        for (std::size_t t = 0; t < decisions.size(); ++t)
            tally.add(decisions[t], supports[t]);
        return tally.metrics(threshold);
    }
}
