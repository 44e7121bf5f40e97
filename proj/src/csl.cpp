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

#include "cslacc/csl.hpp"

#include <charconv>
#include <cstdlib>

namespace cslacc
{
    namespace
    {
        constexpr double kDegenerateFloor = 1e-14;

        void check_segments(const SubSampleSet &segments)
        {
            if (segments.segments.empty())
                throw Error(ErrorCode::EmptySegments, "no segments to average");
            const auto rows = segments.segments.front().rows();
            const auto cols = segments.segments.front().cols();
            for (const auto &y : segments.segments)
                if (y.rows() != rows || y.cols() != cols)
                    throw Error(ErrorCode::DimensionMismatch, "segments differ in shape");
        }

        Eigen::Index first_col(std::size_t index_1based, int shift)
        {
            return static_cast<Eigen::Index>(static_cast<long long>(index_1based) - 1 + shift);
        }
    }

    void SubArraySpec::validate() const
    {
        const long long lo = static_cast<long long>(i) + r;
        const long long hi = static_cast<long long>(j) + r;
        if (i < 1 || i > j || j > m)
            throw Error(ErrorCode::IndexOutOfRange, "sub-array must satisfy 1 <= i <= j <= M");
        if (static_cast<long long>(std::abs(r)) > static_cast<long long>(m) - 1)
            throw Error(ErrorCode::IndexOutOfRange, "|r| must not exceed M - 1");
        if (lo < 1 || hi > static_cast<long long>(m))
            throw Error(ErrorCode::IndexOutOfRange, "shifted sub-array leaves the antenna range");
    }

    std::pair<ComplexMatrix, ComplexMatrix> arrange_matrix(const ComplexMatrix &y, const SubArraySpec &spec)
    {
        spec.validate();
        if (y.cols() != static_cast<Eigen::Index>(spec.m))
            throw Error(ErrorCode::IndexOutOfRange, "sub-sample matrix column count differs from M");
        const auto w = static_cast<Eigen::Index>(spec.width());
        return {y.middleCols(first_col(spec.i, 0), w), y.middleCols(first_col(spec.i, spec.r), w)};
    }

    std::pair<ComplexVector, ComplexVector> arrange_vector(const ComplexMatrix &y, const SubArraySpec &spec)
    {
        auto [y0, yr] = arrange_matrix(y, spec);
        return {y0.reshaped(), yr.reshaped()};
    }

    ScmEstimate estimate_scm(const SubSampleSet &segments, const SubArraySpec &spec, Arrangement arrangement)
    {
        check_segments(segments);
        spec.validate();
        if (segments.antennas() != spec.m)
            throw Error(ErrorCode::IndexOutOfRange, "segment antenna count differs from M");

        const auto l_count = static_cast<Eigen::Index>(segments.segment_count());
        const auto p = static_cast<Eigen::Index>(segments.rows());
        const auto w = static_cast<Eigen::Index>(spec.width());
        const Eigen::Index c0 = first_col(spec.i, 0);
        const Eigen::Index cr = first_col(spec.i, spec.r);

        // Stack all segments so the average is one product with a fixed summation order
        ComplexMatrix lhs, rhs;
        if (arrangement == Arrangement::matrix_form)
        {
            lhs.resize(p, w * l_count);
            rhs.resize(p, w * l_count);
            for (Eigen::Index l = 0; l < l_count; ++l)
            {
                const auto &y = segments.segments[static_cast<std::size_t>(l)];
                lhs.middleCols(l * w, w) = y.middleCols(c0, w);
                rhs.middleCols(l * w, w) = y.middleCols(cr, w);
            }
        }
        else
        {
            lhs.resize(p * w, l_count);
            rhs.resize(p * w, l_count);
            for (Eigen::Index l = 0; l < l_count; ++l)
            {
                const auto &y = segments.segments[static_cast<std::size_t>(l)];
                lhs.col(l) = y.middleCols(c0, w).reshaped();
                rhs.col(l) = y.middleCols(cr, w).reshaped();
            }
        }

        ScmEstimate out;
        out.matrix = (lhs * rhs.adjoint()) / double(l_count);
        out.arrangement = arrangement;
        out.spec = spec;
        out.segments_used = segments.segment_count();
        return out;
    }

    ScmEstimate combined_scm_mcslsacc(const SubSampleSet &segments, std::size_t i, std::size_t j)
    {
        check_segments(segments);
        const std::size_t m = segments.antennas();
        if (i < 1 || i > j || j > m)
            throw Error(ErrorCode::IndexOutOfRange, "sub-array must satisfy 1 <= i <= j <= M");
        if (i == 1 && j == m)
            throw Error(ErrorCode::NoShiftAvailable, "no non-zero shift fits when i = 1 and j = M");

        const auto p = static_cast<Eigen::Index>(segments.rows());
        ScmEstimate out;
        out.matrix = ComplexMatrix::Zero(p, p);
        for (std::size_t r = 1; r + 1 <= i; ++r)
            out.matrix += estimate_scm(segments, {i, j, -static_cast<int>(r), m}, Arrangement::matrix_form).matrix;
        for (std::size_t r = 1; r <= m - j; ++r)
            out.matrix += estimate_scm(segments, {i, j, static_cast<int>(r), m}, Arrangement::matrix_form).matrix;

        out.arrangement = Arrangement::matrix_form;
        out.spec = {i, j, 0, m};
        out.segments_used = segments.segment_count();
        return out;
    }

    std::size_t select_rank(const RealVector &sv, const RankRule &rule)
    {
        const Eigen::Index n = sv.size();
        if (n == 0 || sv(0) <= kDegenerateFloor)
            return 0;
        if (n == 1)
            return 1;

        if (rule.kind == RankRule::Kind::energy)
        {
            const double total = sv.sum();
            double acc = 0.0;
            for (Eigen::Index k = 0; k < n; ++k)
            {
                acc += sv(k);
                if (acc >= rule.energy_fraction * total)
                    return static_cast<std::size_t>(k + 1);
            }
            return static_cast<std::size_t>(n);
        }

        // Largest relative gap among ranks whose last singular value passes the guard
        std::size_t best_rank = 1;
        double best_gap = -1.0;
        for (Eigen::Index k = 0; k + 1 < n; ++k)
        {
            if (sv(k) < rule.guard * sv(0))
                break;
            const double gap = (sv(k) - sv(k + 1)) / sv(k);
            if (gap > best_gap)
            {
                best_gap = gap;
                best_rank = static_cast<std::size_t>(k + 1);
            }
        }
        return best_rank;
    }

    SubspaceEstimate extract_subspace(const ComplexMatrix &scm, const RankRule &rule)
    {
        if (scm.rows() != scm.cols())
            throw Error(ErrorCode::DimensionMismatch, "SCM must be square");

        const SvdResult dec = svd(scm, false);
        SubspaceEstimate out;
        out.s = select_rank(dec.singular_values, rule);
        out.degenerate = out.s == 0;
        const auto s = static_cast<Eigen::Index>(out.s);
        out.u_s = dec.u.leftCols(s);
        out.lambda_s = dec.singular_values.head(s);
        out.residual_spectrum = dec.singular_values.tail(dec.singular_values.size() - s);
        return out;
    }

    SubspaceEstimate extract_subspace(const ScmEstimate &scm, const RankRule &rule)
    {
        return extract_subspace(scm.matrix, rule);
    }

    CleanSubsamples reconstruct(const SubspaceEstimate &sub, SampleKind kind, std::size_t p, std::size_t cols,
                                bool with_projection)
    {
        const Eigen::Index dim = sub.u_s.rows();
        if (kind == SampleKind::matrix && dim != static_cast<Eigen::Index>(p * cols))
            throw Error(ErrorCode::ReshapeMismatch, "subspace dimension differs from P * columns");
        if (kind == SampleKind::vector && dim != static_cast<Eigen::Index>(p))
            throw Error(ErrorCode::ReshapeMismatch, "subspace dimension differs from P");

        const ComplexVector y_c = sub.s ? ComplexVector(sub.u_s * sub.lambda_s.cast<Complex>())
                                        : ComplexVector(ComplexVector::Zero(dim));

        CleanSubsamples out;
        out.kind = kind;
        if (kind == SampleKind::vector)
            out.data = y_c;
        else
            out.data = y_c.reshaped(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(cols));
        if (with_projection)
            out.projection = sub.u_s * sub.u_s.adjoint();
        return out;
    }

    CleanSubsamples baseline_tmacsl(const SubSampleSet &segments, const RankRule &rule)
    {
        check_segments(segments);
        const std::size_t m = segments.antennas();
        const ScmEstimate scm = estimate_scm(segments, {1, m, 0, m}, Arrangement::matrix_form);
        return reconstruct(extract_subspace(scm, rule), SampleKind::vector, segments.rows(), 1);
    }

    CleanSubsamples baseline_tsacsl(const SubSampleSet &segments, const RankRule &rule)
    {
        check_segments(segments);
        const std::size_t m = segments.antennas();
        const ScmEstimate scm = estimate_scm(segments, {1, 1, 0, m}, Arrangement::matrix_form);
        return reconstruct(extract_subspace(scm, rule), SampleKind::vector, segments.rows(), 1);
    }

    CslOutput run_csl(const Algorithm &algorithm, const SubSampleSet &segments,
                      std::size_t i, std::size_t j, const RankRule &rule)
    {
        check_segments(segments);
        const std::size_t m = segments.antennas();
        const std::size_t p = segments.rows();

        ScmEstimate scm;
        SampleKind kind = SampleKind::vector;
        std::size_t cols = 1;
        switch (algorithm.kind)
        {
        case AlgorithmKind::mcslacc:
            scm = estimate_scm(segments, {i, j, algorithm.r, m}, Arrangement::matrix_form);
            break;
        case AlgorithmKind::mcslsacc:
            scm = combined_scm_mcslsacc(segments, i, j);
            break;
        case AlgorithmKind::vcslacc:
            scm = estimate_scm(segments, {i, j, algorithm.r, m}, Arrangement::vector_form);
            kind = SampleKind::matrix;
            cols = j - i + 1;
            break;
        case AlgorithmKind::tmacsl:
            scm = estimate_scm(segments, {1, m, 0, m}, Arrangement::matrix_form);
            break;
        case AlgorithmKind::tsacsl:
            scm = estimate_scm(segments, {1, 1, 0, m}, Arrangement::matrix_form);
            break;
        }

        CslOutput out;
        out.subspace = extract_subspace(scm, rule);
        out.samples = reconstruct(out.subspace, kind, p, cols);
        return out;
    }

    std::string Algorithm::name() const
    {
        switch (kind)
        {
        case AlgorithmKind::mcslacc:
            return "mcslacc_r" + std::to_string(r);
        case AlgorithmKind::mcslsacc:
            return "mcslsacc";
        case AlgorithmKind::vcslacc:
            return "vcslacc_r" + std::to_string(r);
        case AlgorithmKind::tmacsl:
            return "tmacsl";
        case AlgorithmKind::tsacsl:
            return "tsacsl";
        }
        return "unknown";
    }

    Algorithm Algorithm::parse(std::string_view text)
    {
        if (text == "mcslsacc")
            return {AlgorithmKind::mcslsacc, 0};
        if (text == "tmacsl")
            return {AlgorithmKind::tmacsl, 0};
        if (text == "tsacsl")
            return {AlgorithmKind::tsacsl, 0};

        auto with_shift = [&](std::string_view prefix, AlgorithmKind kind) -> std::optional<Algorithm>
        {
            if (text.substr(0, prefix.size()) != prefix)
                return std::nullopt;
            const std::string_view digits = text.substr(prefix.size());
            int r = 0;
            const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), r);
            if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
                throw Error(ErrorCode::InvalidConfig, "bad shift in algorithm name '" + std::string(text) + "'");
            return Algorithm{kind, r};
        };

        if (auto a = with_shift("mcslacc_r", AlgorithmKind::mcslacc))
            return *a;
        if (auto a = with_shift("vcslacc_r", AlgorithmKind::vcslacc))
            return *a;
        throw Error(ErrorCode::InvalidConfig, "unknown algorithm '" + std::string(text) + "'");
    }
}
