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

#ifndef CSLACC_CSL_HPP
#define CSLACC_CSL_HPP

#include "cslacc/numerics.hpp"
#include "cslacc/sampler.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace cslacc
{
    // Antennas i..j (1-based) correlated against antennas i+r..j+r
    struct SubArraySpec
    {
        std::size_t i = 1;
        std::size_t j = 1;
        int r = 0;
        std::size_t m = 1;

        std::size_t width() const noexcept { return j - i + 1; }
        void validate() const; // throws IndexOutOfRange
    };

    enum class Arrangement
    {
        matrix_form,
        vector_form
    };

    struct ScmEstimate
    {
        ComplexMatrix matrix;
        Arrangement arrangement = Arrangement::matrix_form;
        SubArraySpec spec;
        std::size_t segments_used = 0;
    };

    struct RankRule
    {
        enum class Kind
        {
            largest_gap,
            energy
        };
        Kind kind = Kind::largest_gap;
        double guard = 1e-3;           // gap rule: sigma_s >= guard * sigma_1
        double energy_fraction = 0.95; // energy rule: cumulative share of the spectrum
    };

    struct SubspaceEstimate
    {
        ComplexMatrix u_s;             // dim x s
        RealVector lambda_s;           // s leading singular values
        std::size_t s = 0;
        RealVector residual_spectrum;  // the remaining singular values
        bool degenerate = false;       // every singular value below the absolute floor
    };

    enum class SampleKind
    {
        vector, // P x 1
        matrix  // P x (j - i + 1)
    };

    struct CleanSubsamples
    {
        SampleKind kind = SampleKind::vector;
        ComplexMatrix data;
        std::optional<ComplexMatrix> projection; // U_s U_s^H
    };

    enum class AlgorithmKind
    {
        mcslacc,
        mcslsacc,
        vcslacc,
        tmacsl,
        tsacsl
    };

    struct Algorithm
    {
        AlgorithmKind kind = AlgorithmKind::mcslsacc;
        int r = 0; // used by mcslacc and vcslacc

        std::string name() const;                       // e.g. "vcslacc_r2", "tmacsl"
        bool proposed() const noexcept { return kind != AlgorithmKind::tmacsl && kind != AlgorithmKind::tsacsl; }
        static Algorithm parse(std::string_view text); // inverse of name(); throws InvalidConfig
    };

    struct CslOutput
    {
        CleanSubsamples samples;
        SubspaceEstimate subspace;
    };

    std::pair<ComplexMatrix, ComplexMatrix> arrange_matrix(const ComplexMatrix &y, const SubArraySpec &spec);
    std::pair<ComplexVector, ComplexVector> arrange_vector(const ComplexMatrix &y, const SubArraySpec &spec);

    ScmEstimate estimate_scm(const SubSampleSet &segments, const SubArraySpec &spec, Arrangement arrangement);

    // Sum of matrix-form SCMs over every non-zero shift in both directions
    ScmEstimate combined_scm_mcslsacc(const SubSampleSet &segments, std::size_t i, std::size_t j);

    std::size_t select_rank(const RealVector &singular_values, const RankRule &rule);
    SubspaceEstimate extract_subspace(const ComplexMatrix &scm, const RankRule &rule);
    SubspaceEstimate extract_subspace(const ScmEstimate &scm, const RankRule &rule);

    CleanSubsamples reconstruct(const SubspaceEstimate &sub, SampleKind kind, std::size_t p, std::size_t cols,
                                bool with_projection = false);

    CleanSubsamples baseline_tmacsl(const SubSampleSet &segments, const RankRule &rule = {});
    CleanSubsamples baseline_tsacsl(const SubSampleSet &segments, const RankRule &rule = {});

    // Full chain SCM -> subspace -> clean sub-samples for one algorithm on sub-array i..j
    CslOutput run_csl(const Algorithm &algorithm, const SubSampleSet &segments,
                      std::size_t i, std::size_t j, const RankRule &rule = {});
}

#endif
